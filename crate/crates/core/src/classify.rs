//! Staged decision procedure for cyclic and finite surgeries on Montesinos
//! knots.
//!
//! Stages run in a fixed order and stop at the first decisive one:
//! hyperbolicity, lamination family, the static slope table, then the
//! Alexander polynomial / fiberedness obstruction.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::alexander::{alexander_skein, normalized_coefficient};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::obstruction::{
    gabai_not_fibered, large_coefficient, monic_check, Fiberedness, GabaiCaseTrace,
};
use crate::pretzel::{
    FamilyMatch, FamilyTag, MontesinosDescription, MontesinosNormalForm, PretzelLink,
};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum KnotInput {
    Pretzel(PretzelLink),
    Montesinos(MontesinosDescription),
}

impl KnotInput {
    /// `None` for a pretzel diagram with an empty region.
    pub fn montesinos(&self) -> Option<MontesinosDescription> {
        match self {
            KnotInput::Pretzel(p) => p.to_montesinos(),
            KnotInput::Montesinos(m) => Some(m.clone()),
        }
    }

    pub fn component_count(&self) -> usize {
        match self {
            KnotInput::Pretzel(p) => p.component_count(),
            KnotInput::Montesinos(m) => m.component_count(),
        }
    }
}

impl fmt::Display for KnotInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnotInput::Pretzel(p) => p.fmt(f),
            KnotInput::Montesinos(m) => m.fmt(f),
        }
    }
}

/// Pretzel syntax (`-2,3,7`, `P(...)`) unless a tangle is fractional or
/// the `M(...)` prefix is used.
impl FromStr for KnotInput {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.starts_with("M(") || t.contains('/') || t.contains(';') {
            Ok(KnotInput::Montesinos(t.parse()?))
        } else {
            Ok(KnotInput::Pretzel(t.parse()?))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(
    tag = "status",
    content = "reason",
    rename_all = "SCREAMING_SNAKE_CASE"
)]
pub enum Hyperbolicity {
    Hyperbolic(String),
    NonHyperbolic(String),
    NotDetermined(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum StageName {
    Hyperbolicity,
    Lamination,
    SlopeTable,
    AlexanderObstruction,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum StageVerdict {
    /// Not decisive; the next stage runs.
    Pass,
    NonHyperbolic,
    NoCyclicOrFinite,
    Slopes,
    Inconclusive,
}

/// Literature source backing a stage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Citation {
    /// Non-hyperbolic Montesinos knots (Menasco; Oertel) and surgeries on
    /// torus knots (Moser).
    MontesinosGeometry,
    /// Essential laminations surviving all non-trivial surgeries (Delman).
    Delman,
    /// Culler-Shalen seminorm bounds for the `(-2, p, q)` and `(-2l, p, q)`
    /// pretzel knots (Mattman).
    MattmanTable,
    /// L-space knots have `±1` coefficients in alternating form
    /// (Ozsváth-Szabó).
    LSpaceCoefficients,
    /// L-space knots are fibered (Ni); the fiber is detected by
    /// Murasugi-sum decomposition (Gabai).
    Fiberedness,
}

impl Citation {
    pub fn reference(&self) -> &'static str {
        match self {
            Citation::MontesinosGeometry => "Menasco 1984; Oertel 1984; Moser 1971",
            Citation::Delman => "Delman, essential laminations in Montesinos knot exteriors",
            Citation::MattmanTable => "Mattman, cyclic and finite surgeries on pretzel knots",
            Citation::LSpaceCoefficients => "Ozsvath-Szabo 2005, L-space surgeries",
            Citation::Fiberedness => "Ni 2007; Gabai 1986",
        }
    }
}

/// A row of the static slope table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlopeTableEntry {
    pub knot: PretzelLink,
    pub cyclic: Vec<i64>,
    pub finite: Vec<i64>,
}

/// Cyclic and (acyclic) finite surgery slopes on `(-2, 3, q)`.
pub fn mattman_table(q: i64) -> Option<SlopeTableEntry> {
    let (cyclic, finite) = match q {
        7 => (vec![18, 19], vec![17]),
        9 => (vec![], vec![22, 23]),
        _ => return None,
    };
    let knot = PretzelLink::new(vec![-2, 3, q]).ok()?;
    Some(SlopeTableEntry {
        knot,
        cyclic,
        finite,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Evidence {
    Geometry {
        status: Hyperbolicity,
        rational_tangles: usize,
    },
    Family {
        normal_form: String,
        tag: FamilyTag,
        mirrored: bool,
    },
    /// Not in the table: no cyclic or finite slopes.
    TableMiss {
        family: FamilyTag,
    },
    TableHit {
        entry: SlopeTableEntry,
    },
    /// A normalized coefficient of absolute value at least two.
    Coefficient {
        knot: PretzelLink,
        degree: i64,
        value: i64,
        polynomial: LaurentPoly,
    },
    NotFibered {
        certificate: Box<GabaiCaseTrace>,
        monic: bool,
        polynomial: LaurentPoly,
    },
    Note {
        text: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stage {
    pub stage: StageName,
    pub verdict: StageVerdict,
    pub citation: Citation,
    pub evidence: Evidence,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(
    tag = "verdict",
    content = "slopes",
    rename_all = "SCREAMING_SNAKE_CASE"
)]
pub enum FinalVerdict {
    NoCyclicOrFinite,
    CyclicSlopes(Vec<i64>),
    FiniteSlopes(Vec<i64>),
    NonHyperbolicSeeMoser,
    OutOfScope,
}

impl fmt::Display for FinalVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[i64]| {
            v.iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        match self {
            FinalVerdict::NoCyclicOrFinite => f.write_str("NO_CYCLIC_OR_FINITE"),
            FinalVerdict::CyclicSlopes(v) => write!(f, "CYCLIC_SLOPES[{}]", list(v)),
            FinalVerdict::FiniteSlopes(v) => write!(f, "FINITE_SLOPES[{}]", list(v)),
            FinalVerdict::NonHyperbolicSeeMoser => f.write_str("NON_HYPERBOLIC_SEE_MOSER"),
            FinalVerdict::OutOfScope => f.write_str("OUT_OF_SCOPE"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub schema_version: u32,
    pub input: KnotInput,
    pub hyperbolic: Hyperbolicity,
    pub stages: Vec<Stage>,
    /// One entry, except for knots with both cyclic and finite slopes.
    pub final_verdict: Vec<FinalVerdict>,
}

impl ClassificationReport {
    pub fn cyclic_slopes(&self) -> Vec<i64> {
        self.final_verdict
            .iter()
            .filter_map(|v| match v {
                FinalVerdict::CyclicSlopes(s) => Some(s.clone()),
                _ => None,
            })
            .flatten()
            .collect()
    }

    pub fn finite_slopes(&self) -> Vec<i64> {
        self.final_verdict
            .iter()
            .filter_map(|v| match v {
                FinalVerdict::FiniteSlopes(s) => Some(s.clone()),
                _ => None,
            })
            .flatten()
            .collect()
    }

    pub fn verdict_string(&self) -> String {
        self.final_verdict
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// `(α, β)` of the two-bridge knot `N(p/q + r/s)`.
fn two_bridge_invariants(nf: &MontesinosNormalForm) -> (i64, i64) {
    let mut fr = nf.fractions.iter().copied();
    let (p, q) = match fr.next() {
        Some((b, a)) => (b + nf.e * a, a),
        None => (nf.e, 1),
    };
    let (r, s) = fr.next().unwrap_or((0, 1));
    let alpha = (p * s + q * r).abs();
    // p q' - p' q = 1
    let g = p.extended_gcd(&q);
    let (q1, p1) = (g.x * g.gcd.signum(), -g.y * g.gcd.signum());
    let beta = p1 * s + q1 * r;
    (alpha, beta)
}

fn exceptional_torus(nf: &MontesinosNormalForm) -> Option<&'static str> {
    let exceptional = [
        (vec![-2, 3, 3], "(3,4)-torus knot"),
        (vec![-2, 3, 5], "(3,5)-torus knot"),
    ];
    for (params, name) in exceptional {
        let other = PretzelLink::new(params)
            .ok()?
            .to_montesinos()?
            .normal_form();
        if nf.equivalent(&other) || nf.equivalent(&other.mirror()) {
            return Some(name);
        }
    }
    None
}

/// Geometric type from the rational-tangle count and the two exceptional
/// torus knots among three-tangle Montesinos knots.
pub fn hyperbolicity_status(input: &MontesinosDescription) -> Result<Hyperbolicity> {
    let components = input.component_count();
    if components != 1 {
        return Err(Error::NotAKnot(input.to_string(), components));
    }
    let nf = input.normal_form();
    if nf.rational_count() <= 2 {
        let (alpha, beta) = two_bridge_invariants(&nf);
        return Ok(match alpha {
            0 => Hyperbolicity::NotDetermined("degenerate two-bridge closure".into()),
            1 => Hyperbolicity::NonHyperbolic("unknot".into()),
            a if beta.rem_euclid(a) == 1 || beta.rem_euclid(a) == a - 1 => {
                Hyperbolicity::NonHyperbolic(format!("(2,{a})-torus knot"))
            }
            a => Hyperbolicity::Hyperbolic(format!(
                "two-bridge knot S({a},{}), not a torus knot",
                beta.rem_euclid(a)
            )),
        });
    }
    if let Some(name) = exceptional_torus(&nf) {
        return Ok(Hyperbolicity::NonHyperbolic(name.into()));
    }
    Ok(Hyperbolicity::Hyperbolic(format!(
        "Montesinos knot with {} rational tangles",
        nf.rational_count()
    )))
}

fn describe(nf: &MontesinosNormalForm) -> String {
    let fr: Vec<String> = nf
        .fractions
        .iter()
        .map(|(b, a)| format!("{b}/{a}"))
        .collect();
    format!("e={}; {}", nf.e, fr.join(", "))
}

/// Lamination stage: anything outside the three candidate families is
/// excluded.
pub fn delman_gate(input: &MontesinosDescription) -> (Stage, Option<FamilyMatch>) {
    let nf = input.normal_form();
    let found = nf.family();
    let (tag, mirrored) = found.map_or((FamilyTag::Other, false), |f| (f.tag, f.mirrored));
    let verdict = if found.is_some() {
        StageVerdict::Pass
    } else {
        StageVerdict::NoCyclicOrFinite
    };
    let stage = Stage {
        stage: StageName::Lamination,
        verdict,
        citation: Citation::Delman,
        evidence: Evidence::Family {
            normal_form: describe(&nf),
            tag,
            mirrored,
        },
    };
    (stage, found)
}

/// Static slope table for `(-2, 3, q)` and the `(-2l, p, q)` exclusion.
pub fn mattman_gate(tag: &FamilyTag) -> Stage {
    let stage = |verdict, evidence| Stage {
        stage: StageName::SlopeTable,
        verdict,
        citation: Citation::MattmanTable,
        evidence,
    };
    match *tag {
        FamilyTag::Minus2L { l, .. } if l > 1 => stage(
            StageVerdict::NoCyclicOrFinite,
            Evidence::TableMiss { family: *tag },
        ),
        FamilyTag::Minus1TwoN { n: 1, p: 3, q } | FamilyTag::Minus2L { l: 1, p: 3, q } => {
            match mattman_table(q) {
                Some(entry) => stage(StageVerdict::Slopes, Evidence::TableHit { entry }),
                None => stage(
                    StageVerdict::NoCyclicOrFinite,
                    Evidence::TableMiss { family: *tag },
                ),
            }
        }
        _ => stage(
            StageVerdict::Pass,
            Evidence::Note {
                text: format!("{tag} is not covered by the table"),
            },
        ),
    }
}

fn coefficient_degree(tag: &FamilyTag) -> Option<i64> {
    match *tag {
        FamilyTag::Minus1TwoN { n, .. } if n < 0 => Some(1),
        FamilyTag::Minus1TwoN { n, .. } if n >= 2 => Some(3),
        FamilyTag::Minus1TwoN { n: 1, p, .. } if p >= 5 => Some(4),
        _ => None,
    }
}

/// Fiberedness certificate for `(-1, -1, 2m, p, q)`, a coefficient outside
/// `{0, ±1}` for `(-1, 2n, p, q)`. Every polynomial is computed afresh.
pub fn alexander_gate(tag: &FamilyTag) -> Result<Stage> {
    let knot = tag
        .representative()
        .ok_or_else(|| Error::UnexpectedTag(tag.to_string()))?;
    match *tag {
        FamilyTag::Minus1Minus1TwoM { m, p, q } => {
            let certificate = gabai_not_fibered(m, p, q)?;
            let polynomial = alexander_skein(&knot)?.normalize()?;
            let monic = monic_check(&polynomial)?;
            let verdict = if certificate.verdict == Fiberedness::NotFibered {
                StageVerdict::NoCyclicOrFinite
            } else {
                StageVerdict::Inconclusive
            };
            Ok(Stage {
                stage: StageName::AlexanderObstruction,
                verdict,
                citation: Citation::Fiberedness,
                evidence: Evidence::NotFibered {
                    certificate: Box::new(certificate),
                    monic,
                    polynomial,
                },
            })
        }
        FamilyTag::Minus1TwoN { .. } => {
            let degree =
                coefficient_degree(tag).ok_or_else(|| Error::UnexpectedTag(tag.to_string()))?;
            let polynomial = alexander_skein(&knot)?.normalize()?;
            let mut value = normalized_coefficient(&knot, degree)?;
            let mut degree = degree;
            if value.abs() < 2.into() {
                // not the expected witness; fall back to any large coefficient
                if let Some((d, v)) = large_coefficient(&polynomial) {
                    degree = d;
                    value = v;
                }
            }
            let verdict = if value.abs() >= 2.into() {
                StageVerdict::NoCyclicOrFinite
            } else {
                StageVerdict::Inconclusive
            };
            let value = value
                .to_i64()
                .ok_or_else(|| Error::Hypothesis(format!("coefficient {value} overflows")))?;
            Ok(Stage {
                stage: StageName::AlexanderObstruction,
                verdict,
                citation: Citation::LSpaceCoefficients,
                evidence: Evidence::Coefficient {
                    knot,
                    degree,
                    value,
                    polynomial,
                },
            })
        }
        _ => Err(Error::UnexpectedTag(tag.to_string())),
    }
}

fn table_verdicts(entry: &SlopeTableEntry, mirrored: bool) -> Vec<FinalVerdict> {
    let orient = |v: &[i64]| -> Vec<i64> {
        let mut out: Vec<i64> = v.iter().map(|s| if mirrored { -s } else { *s }).collect();
        out.sort_unstable();
        out
    };
    let mut out = Vec::new();
    if !entry.cyclic.is_empty() {
        out.push(FinalVerdict::CyclicSlopes(orient(&entry.cyclic)));
    }
    if !entry.finite.is_empty() {
        out.push(FinalVerdict::FiniteSlopes(orient(&entry.finite)));
    }
    out
}

pub fn classify(input: &KnotInput) -> Result<ClassificationReport> {
    let components = input.component_count();
    if components != 1 {
        return Err(Error::NotAKnot(input.to_string(), components));
    }
    let mut report = ClassificationReport {
        schema_version: SCHEMA_VERSION,
        input: input.clone(),
        hyperbolic: Hyperbolicity::NotDetermined("connected sum".into()),
        stages: Vec::new(),
        final_verdict: vec![FinalVerdict::OutOfScope],
    };
    let Some(desc) = input.montesinos() else {
        report.stages.push(Stage {
            stage: StageName::Hyperbolicity,
            verdict: StageVerdict::Inconclusive,
            citation: Citation::MontesinosGeometry,
            evidence: Evidence::Note {
                text: "a region without crossings splits the diagram as a connected sum".into(),
            },
        });
        return Ok(report);
    };

    let status = hyperbolicity_status(&desc)?;
    report.hyperbolic = status.clone();
    let rational_tangles = desc.normal_form().rational_count();
    let verdict = match status {
        Hyperbolicity::Hyperbolic(_) => StageVerdict::Pass,
        Hyperbolicity::NonHyperbolic(_) => StageVerdict::NonHyperbolic,
        Hyperbolicity::NotDetermined(_) => StageVerdict::Inconclusive,
    };
    report.stages.push(Stage {
        stage: StageName::Hyperbolicity,
        verdict,
        citation: Citation::MontesinosGeometry,
        evidence: Evidence::Geometry {
            status,
            rational_tangles,
        },
    });
    match verdict {
        StageVerdict::NonHyperbolic => {
            report.final_verdict = vec![FinalVerdict::NonHyperbolicSeeMoser];
            return Ok(report);
        }
        StageVerdict::Inconclusive => return Ok(report),
        _ => {}
    }

    let (stage, found) = delman_gate(&desc);
    report.stages.push(stage);
    let Some(FamilyMatch { tag, mirrored }) = found else {
        report.final_verdict = vec![FinalVerdict::NoCyclicOrFinite];
        return Ok(report);
    };

    let stage = mattman_gate(&tag);
    let verdict = stage.verdict;
    if let Evidence::TableHit { entry } = &stage.evidence {
        report.final_verdict = table_verdicts(entry, mirrored);
    }
    report.stages.push(stage);
    match verdict {
        StageVerdict::Slopes => return Ok(report),
        StageVerdict::NoCyclicOrFinite => {
            report.final_verdict = vec![FinalVerdict::NoCyclicOrFinite];
            return Ok(report);
        }
        _ => {}
    }

    let stage = alexander_gate(&tag)?;
    if stage.verdict == StageVerdict::NoCyclicOrFinite {
        report.final_verdict = vec![FinalVerdict::NoCyclicOrFinite];
    }
    report.stages.push(stage);
    Ok(report)
}
