//! Alexander polynomials of pretzel links by skein resolution of twist
//! regions.
//!
//! All values are Conway-normalized, i.e. exact (no unit ambiguity) and
//! satisfying
//!
//! ```text
//! Δ(L+) - Δ(L-) = (t^{-1/2} - t^{1/2}) Δ(L0)
//! ```
//!
//! for oriented links. Orientation therefore travels with every
//! intermediate link: each region carries whether its two strands are
//! parallel or antiparallel. A parallel region with `k` crossings obeys
//! `c_k = c_{k-2} + z c_{k-1}` and unrolls onto the regions `{0, ±1}` with
//! torus-link multipliers. An antiparallel region obeys
//! `d_k = d_{k-2} - z d_H`, where `d_H` is the link with the region smoothed
//! horizontally (the region simply disappears from the chain).
//!
//! Leaves are evaluated by a closed rewrite table:
//!
//! * one region with no crossings: connected sum of the closures of the
//!   other regions;
//! * two or more such regions: split link, polynomial zero;
//! * every region a single crossing: adjacent opposite crossings cancel,
//!   the remainder is a `(2, m)` torus link.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::{f_poly, LaurentPoly};
use crate::pretzel::{dihedral_min, FamilyTag, PretzelLink, RegionOrientation};

/// `Δ_l`, the Alexander polynomial of the `(2, l)` torus link, from
/// `Δ_l(t) = t^{(1-l)/2} f_{l-1}(-t)`.
pub fn torus_link_alexander(l: i64) -> Result<LaurentPoly> {
    if l < 1 {
        return Err(Error::NonPositiveTorusIndex(l));
    }
    Ok(f_poly(l - 1)?.substitute_neg_t()?.shift_s(1 - l))
}

/// `Δ_k` for any integer `k`, extended by `Δ_0 = 0` and
/// `Δ_{-l} = (-1)^{l+1} Δ_l` (the mirror image).
pub fn torus_signed(k: i64) -> LaurentPoly {
    match k {
        0 => LaurentPoly::zero(),
        k if k > 0 => torus_link_alexander(k).expect("positive index"),
        k => {
            let base = torus_link_alexander(-k).expect("positive index");
            if (-k) % 2 == 0 {
                -base
            } else {
                base
            }
        }
    }
}

/// A twist region together with the relative orientation of its strands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Region {
    pub twists: i64,
    pub orientation: RegionOrientation,
}

/// An oriented pretzel link as it appears inside the recursion.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrientedPretzel {
    pub regions: Vec<Region>,
}

impl OrientedPretzel {
    pub fn from_link(link: &PretzelLink) -> Self {
        let regions = link
            .params()
            .iter()
            .zip(link.orientations())
            .map(|(&twists, orientation)| Region {
                twists,
                orientation,
            })
            .collect();
        Self { regions }
    }

    pub fn params(&self) -> Vec<i64> {
        self.regions.iter().map(|r| r.twists).collect()
    }

    fn canonical(&self) -> Self {
        Self {
            regions: dihedral_min(&self.regions),
        }
    }

    fn with_twists(&self, i: usize, twists: i64) -> Self {
        let mut out = self.clone();
        out.regions[i].twists = twists;
        out
    }

    fn without(&self, i: usize) -> Self {
        let mut out = self.clone();
        out.regions.remove(i);
        out
    }

    /// Region chosen for the next resolution: even regions first, then odd,
    /// leftmost within each class.
    fn pivot(&self) -> Option<usize> {
        let big = |r: &Region| r.twists.abs() >= 2;
        self.regions
            .iter()
            .position(|r| big(r) && r.twists % 2 == 0)
            .or_else(|| self.regions.iter().position(big))
    }

    fn is_leaf(&self) -> bool {
        self.regions.iter().any(|r| r.twists == 0) || self.pivot().is_none()
    }

    /// One skein resolution of region `i`: `Δ(self) = Σ m_j Δ(child_j)`.
    fn resolve(&self, i: usize) -> Vec<(LaurentPoly, OrientedPretzel)> {
        let k = self.regions[i].twists;
        match self.regions[i].orientation {
            RegionOrientation::Parallel if k > 0 => vec![
                (torus_signed(k - 1), self.with_twists(i, 0)),
                (torus_signed(k), self.with_twists(i, 1)),
            ],
            RegionOrientation::Parallel => vec![
                (torus_signed(k + 1), self.with_twists(i, 0)),
                (torus_signed(k), self.with_twists(i, -1)),
            ],
            RegionOrientation::Antiparallel => {
                let half = k.div_euclid(2);
                vec![
                    (LaurentPoly::one(), self.with_twists(i, k.rem_euclid(2))),
                    (
                        LaurentPoly::skein_z().scale(&BigInt::from(-half)),
                        self.without(i),
                    ),
                ]
            }
        }
    }

    /// Closed rewrite table for leaves.
    fn leaf_value(&self) -> Result<LaurentPoly> {
        let zeros = self.regions.iter().filter(|r| r.twists == 0).count();
        if zeros >= 2 {
            return Ok(LaurentPoly::zero());
        }
        if zeros == 1 {
            return self
                .regions
                .iter()
                .filter(|r| r.twists != 0)
                .map(|r| self.closure(r))
                .product();
        }
        self.single_crossing_chain()
    }

    /// Closure of one region in a connected-sum decomposition.
    fn closure(&self, r: &Region) -> Result<LaurentPoly> {
        match r.orientation {
            RegionOrientation::Parallel => Ok(torus_signed(r.twists)),
            RegionOrientation::Antiparallel if r.twists % 2 == 0 => {
                Ok(LaurentPoly::skein_z().scale(&BigInt::from(-r.twists / 2)))
            }
            RegionOrientation::Antiparallel => Err(Error::UnsupportedLeaf(format!(
                "{self:?}: odd antiparallel region in a connected sum"
            ))),
        }
    }

    fn single_crossing_chain(&self) -> Result<LaurentPoly> {
        let mut chain: Vec<Region> = self.regions.clone();
        if chain.iter().any(|r| r.twists.abs() != 1) {
            return Err(Error::UnsupportedLeaf(format!("{self:?}")));
        }
        // Reidemeister II on cyclically adjacent opposite crossings.
        loop {
            let n = chain.len();
            if n < 2 {
                break;
            }
            let hit = (0..n).find(|&i| chain[i].twists == -chain[(i + 1) % n].twists);
            match hit {
                Some(i) => {
                    let j = (i + 1) % n;
                    let (hi, lo) = if i > j { (i, j) } else { (j, i) };
                    chain.remove(hi);
                    chain.remove(lo);
                }
                None => break,
            }
        }
        let m = chain.len() as i64;
        if m == 0 {
            return Ok(LaurentPoly::zero());
        }
        if m % 2 == 1 {
            return Ok(torus_signed(m));
        }
        let sign = chain[0].twists;
        let orientation = chain[0].orientation;
        if chain.iter().any(|r| r.orientation != orientation) {
            return Err(Error::UnsupportedLeaf(format!(
                "{self:?}: mixed orientation chain"
            )));
        }
        Ok(match orientation {
            // the two components run the same way through the horizontal twist
            RegionOrientation::Antiparallel => torus_signed(-sign * m),
            RegionOrientation::Parallel => {
                LaurentPoly::skein_z().scale(&BigInt::from(sign * m / 2))
            }
        })
    }
}

/// One resolution step of a resolving tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeinStep {
    pub link: Vec<i64>,
    pub region: usize,
    pub children: Vec<SkeinChild>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeinChild {
    pub link: Vec<i64>,
    pub multiplier: LaurentPoly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeinLeaf {
    pub link: OrientedPretzel,
    /// Sum over all tree paths of the product of multipliers.
    pub multiplier: LaurentPoly,
    pub value: LaurentPoly,
}

/// A full resolving tree: the steps taken and the weighted leaves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeinTrace {
    pub root: PretzelLink,
    pub steps: Vec<SkeinStep>,
    pub leaves: Vec<SkeinLeaf>,
}

impl SkeinTrace {
    /// `Σ multiplier · value` over the leaves.
    pub fn recombine(&self) -> LaurentPoly {
        self.leaves.iter().map(|l| &l.multiplier * &l.value).sum()
    }

    /// Children of the first resolution step.
    pub fn top_level_leaves(&self) -> Vec<Vec<i64>> {
        self.steps
            .first()
            .map(|s| s.children.iter().map(|c| c.link.clone()).collect())
            .unwrap_or_default()
    }
}

/// The skein recursion with an optional per-engine memo table.
#[derive(Debug, Default)]
pub struct SkeinEngine {
    cache: Option<HashMap<OrientedPretzel, LaurentPoly>>,
    hits: u64,
}

impl SkeinEngine {
    pub fn new() -> Self {
        Self {
            cache: Some(HashMap::new()),
            hits: 0,
        }
    }

    pub fn without_cache() -> Self {
        Self {
            cache: None,
            hits: 0,
        }
    }

    pub fn cache_hits(&self) -> u64 {
        self.hits
    }

    /// Exact (Conway-normalized) Alexander polynomial of a pretzel knot.
    pub fn alexander(&mut self, link: &PretzelLink) -> Result<LaurentPoly> {
        link.require_knot()?;
        self.eval(&OrientedPretzel::from_link(link))
    }

    /// Same as [`alexander`](Self::alexander) for links of any component
    /// count, using the orientation chosen by strand tracing.
    pub fn alexander_oriented(&mut self, link: &OrientedPretzel) -> Result<LaurentPoly> {
        self.eval(link)
    }

    fn eval(&mut self, state: &OrientedPretzel) -> Result<LaurentPoly> {
        let key = state.canonical();
        if let Some(v) = self.cache.as_ref().and_then(|c| c.get(&key)) {
            self.hits += 1;
            return Ok(v.clone());
        }
        let value = match state.pivot() {
            _ if state.is_leaf() => state.leaf_value()?,
            Some(i) => {
                let mut acc = LaurentPoly::zero();
                for (mult, child) in state.resolve(i) {
                    if !mult.is_zero() {
                        acc = &acc + &(&mult * &self.eval(&child)?);
                    }
                }
                acc
            }
            None => unreachable!("non-leaf always has a pivot"),
        };
        if let Some(c) = self.cache.as_mut() {
            c.insert(key, value.clone());
        }
        Ok(value)
    }
}

/// Exact Alexander polynomial of a pretzel knot by skein resolution.
pub fn alexander_skein(link: &PretzelLink) -> Result<LaurentPoly> {
    SkeinEngine::new().alexander(link)
}

/// Normalized so that the lowest degree is zero and the constant term is
/// positive.
pub fn alexander_normalized(link: &PretzelLink) -> Result<LaurentPoly> {
    alexander_skein(link)?.normalize()
}

/// `[Δ]_j` of the normalized polynomial.
pub fn normalized_coefficient(link: &PretzelLink, j: i64) -> Result<BigInt> {
    Ok(alexander_normalized(link)?.coefficient(j))
}

/// The polynomial together with its full resolving tree.
pub fn alexander_with_trace(link: &PretzelLink) -> Result<(LaurentPoly, SkeinTrace)> {
    link.require_knot()?;
    let root = OrientedPretzel::from_link(link);
    let mut steps = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut leaves: BTreeMap<OrientedPretzel, LaurentPoly> = BTreeMap::new();
    expand(
        &root,
        LaurentPoly::one(),
        &mut steps,
        &mut seen,
        &mut leaves,
    );

    let mut engine = SkeinEngine::new();
    let leaves = leaves
        .into_iter()
        .filter(|(_, m)| !m.is_zero())
        .map(|(l, multiplier)| {
            let value = engine.eval(&l)?;
            Ok(SkeinLeaf {
                link: l,
                multiplier,
                value,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let trace = SkeinTrace {
        root: link.clone(),
        steps,
        leaves,
    };
    let poly = engine.eval(&root)?;
    debug_assert_eq!(trace.recombine(), poly);
    Ok((poly, trace))
}

fn expand(
    state: &OrientedPretzel,
    mult: LaurentPoly,
    steps: &mut Vec<SkeinStep>,
    seen: &mut std::collections::HashSet<OrientedPretzel>,
    leaves: &mut BTreeMap<OrientedPretzel, LaurentPoly>,
) {
    if state.is_leaf() {
        let entry = leaves.entry(state.clone()).or_default();
        *entry = &*entry + &mult;
        return;
    }
    let i = state.pivot().expect("non-leaf has a pivot");
    let children = state.resolve(i);
    if seen.insert(state.clone()) {
        steps.push(SkeinStep {
            link: state.params(),
            region: i,
            children: children
                .iter()
                .map(|(m, c)| SkeinChild {
                    link: c.params(),
                    multiplier: m.clone(),
                })
                .collect(),
        });
    }
    for (m, child) in children {
        if !m.is_zero() {
            expand(&child, &mult * &m, steps, seen, leaves);
        }
    }
}

/// `Δ_{2n-1}Δ_pΔ_q - Δ_{2n}Δ_{p-1}Δ_q - Δ_{2n}Δ_pΔ_{q-1}`, the knot
/// `(-1, -2n, p, q)`.
pub fn claim3_formula(n: i64, p: i64, q: i64) -> LaurentPoly {
    let t = torus_signed;
    &(&(&t(2 * n - 1) * &t(p)) * &t(q))
        - &(&(&t(2 * n) * &t(p - 1)) * &t(q))
        - (&(&t(2 * n) * &t(p)) * &t(q - 1))
}

/// The knot `(-1, 2n, p, q)`.
pub fn claim4_formula(n: i64, p: i64, q: i64) -> LaurentPoly {
    let t = torus_signed;
    let z = LaurentPoly::skein_z();
    [
        &(&t(2 * n - 1) * &t(p)) * &t(q),
        &(&t(2 * n) * &t(p - 1)) * &t(q),
        &(&t(2 * n) * &t(p)) * &t(q - 1),
        &(&(&z * &t(2 * n)) * &t(p)) * &t(q),
    ]
    .into_iter()
    .sum()
}

/// `Δ_pΔ_q + (t^{-1/2} - t^{1/2})Δ_{p+q}`, the knot `(-2, p, q)`.
pub fn claim5_formula(p: i64, q: i64) -> LaurentPoly {
    &(&torus_signed(p) * &torus_signed(q)) + &(&LaurentPoly::skein_z() * &torus_signed(p + q))
}

/// Closed-form polynomial for the `(-1, 2n, p, q)` family: `n < 0` uses
/// the `(-1, -2|n|, p, q)` expansion, `n = 1` the `(-2, p, q)` one.
pub fn claim_formula(family: &FamilyTag) -> Result<LaurentPoly> {
    match *family {
        FamilyTag::Minus1TwoN { n, p, q } if n < 0 => Ok(claim3_formula(-n, p, q)),
        FamilyTag::Minus1TwoN { n: 1, p, q } => Ok(claim5_formula(p, q)),
        FamilyTag::Minus1TwoN { n, p, q } if n > 1 => Ok(claim4_formula(n, p, q)),
        FamilyTag::Minus2L { l: 1, p, q } => Ok(claim5_formula(p, q)),
        other => Err(Error::NoClosedForm(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pz(s: &str) -> PretzelLink {
        s.parse().unwrap()
    }

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    /// `Δ_0 = 0, Δ_1 = 1, Δ_{l+1} = Δ_{l-1} + zΔ_l`, independent of the
    /// closed form.
    fn torus_by_recursion(l: i64) -> LaurentPoly {
        let z = LaurentPoly::skein_z();
        let (mut prev, mut cur) = (LaurentPoly::zero(), LaurentPoly::one());
        for _ in 1..l {
            let next = &prev + &(&z * &cur);
            prev = cur;
            cur = next;
        }
        cur
    }

    #[test]
    fn torus_links() {
        assert_eq!(torus_link_alexander(1).unwrap(), LaurentPoly::one());
        assert!(torus_link_alexander(3)
            .unwrap()
            .equal_up_to_units(&lp("1 - t + t^2")));
        assert!(torus_link_alexander(5)
            .unwrap()
            .equal_up_to_units(&lp("1 - t + t^2 - t^3 + t^4")));
        assert!(torus_link_alexander(0).is_err());
        assert!(torus_link_alexander(-3).is_err());
        for l in 1..15 {
            assert_eq!(
                torus_link_alexander(l).unwrap(),
                torus_by_recursion(l),
                "l={l}"
            );
            assert_eq!(
                torus_link_alexander(l).unwrap().has_integer_exponents(),
                l % 2 == 1
            );
        }
    }

    #[test]
    fn torus_extension_satisfies_recursion() {
        let z = LaurentPoly::skein_z();
        for k in -10..10 {
            assert_eq!(
                torus_signed(k + 1),
                &torus_signed(k - 1) + &(&z * &torus_signed(k))
            );
        }
    }

    #[test]
    fn claim_coefficients() {
        assert_eq!(
            normalized_coefficient(&pz("-1,-2,3,3"), 1).unwrap(),
            BigInt::from(-4)
        );
        assert_eq!(
            normalized_coefficient(&pz("-1,4,3,3"), 3).unwrap(),
            BigInt::from(2)
        );
        assert_eq!(
            normalized_coefficient(&pz("-2,5,5"), 4).unwrap(),
            BigInt::from(-2)
        );
    }

    #[test]
    fn minus2_3_7_is_the_lehmer_knot() {
        let d = alexander_normalized(&pz("-2,3,7")).unwrap();
        assert_eq!(d, lp("1 - t + t^3 - t^4 + t^5 - t^6 + t^7 - t^9 + t^10"));
    }

    #[test]
    fn closed_forms_match_recursion() {
        let cases = [
            (FamilyTag::Minus1TwoN { n: -1, p: 3, q: 3 }, "-1,-2,3,3"),
            (FamilyTag::Minus1TwoN { n: -3, p: 5, q: 7 }, "-1,-6,5,7"),
            (FamilyTag::Minus1TwoN { n: 2, p: 3, q: 5 }, "-1,4,3,5"),
            (FamilyTag::Minus1TwoN { n: 1, p: 5, q: 7 }, "-2,5,7"),
        ];
        for (tag, link) in cases {
            let closed = claim_formula(&tag).unwrap();
            let skein = alexander_skein(&pz(link)).unwrap();
            assert_eq!(closed, skein, "{tag}");
        }
        assert_eq!(
            claim4_formula(2, 3, 5).normalize().unwrap().coefficient(3),
            BigInt::from(2)
        );
        assert!(claim_formula(&FamilyTag::Other).is_err());
        assert!(claim_formula(&FamilyTag::Minus1Minus1TwoM { m: 2, p: 3, q: 3 }).is_err());
    }

    #[test]
    fn traces() {
        let (poly, trace) = alexander_with_trace(&pz("-1,-2,3,5")).unwrap();
        assert_eq!(
            trace.top_level_leaves(),
            vec![vec![-1, 0, 3, 5], vec![-1, -1, 3, 5]]
        );
        assert_eq!(trace.recombine(), poly);

        let (poly, trace) = alexander_with_trace(&pz("-1,6,3,5")).unwrap();
        assert_eq!(
            trace.top_level_leaves(),
            vec![vec![-1, 0, 3, 5], vec![-1, 1, 3, 5]]
        );
        let mults: Vec<_> = trace.steps[0]
            .children
            .iter()
            .map(|c| c.multiplier.clone())
            .collect();
        assert_eq!(mults, vec![torus_signed(5), torus_signed(6)]);
        assert_eq!(trace.recombine(), poly);

        let (_, trace) = alexander_with_trace(&pz("-2,5,7")).unwrap();
        assert_eq!(trace.top_level_leaves(), vec![vec![0, 5, 7], vec![5, 7]]);
    }

    #[test]
    fn cache_is_transparent() {
        for s in ["-1,-6,5,7", "-1,-1,4,3,3", "-2,3,7", "3,-5,7,-2"] {
            let link = pz(s);
            let mut cached = SkeinEngine::new();
            let mut plain = SkeinEngine::without_cache();
            assert_eq!(
                cached.alexander(&link).unwrap(),
                plain.alexander(&link).unwrap()
            );
        }
    }

    #[test]
    fn rejects_links() {
        assert!(matches!(
            alexander_skein(&pz("2,2")),
            Err(Error::NotAKnot(_, 2))
        ));
    }

    #[test]
    fn unknot_and_small_cases() {
        assert_eq!(alexander_skein(&pz("3")).unwrap(), LaurentPoly::one());
        assert_eq!(alexander_skein(&pz("1,1,1")).unwrap(), torus_signed(3));
        assert_eq!(alexander_skein(&pz("3,-2")).unwrap(), LaurentPoly::one());
        assert!(alexander_skein(&pz("-1,0,3,5"))
            .unwrap()
            .equal_up_to_units(&(torus_signed(3) * torus_signed(5))));
    }
}
