//! Pretzel links, Montesinos descriptions and the strand-tracing that
//! decides component counts and strand orientations.
//!
//! Diagram convention: twist regions stand left to right, each a vertical
//! column of `|a_i|` crossings between two strands. The top-right end of
//! region `i` joins the top-left end of region `i + 1`, likewise along the
//! bottom, and the last region wraps around to the first. For `a_i > 0`
//! the strand running from the top-right to the bottom-left of a crossing
//! is the over-strand; for `a_i < 0` it is the other one.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How a tangle joins its four ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Connectivity {
    /// top-left to bottom-left, top-right to bottom-right
    Vertical,
    /// top-left to top-right, bottom-left to bottom-right
    Horizontal,
    /// top-left to bottom-right, top-right to bottom-left
    Crossed,
}

/// Relative orientation of the two strands inside a twist region.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RegionOrientation {
    /// Both strands run downward, or both upward.
    Parallel,
    Antiparallel,
}

const TL: usize = 0;
const TR: usize = 1;
const BL: usize = 2;
const BR: usize = 3;

/// Result of tracing a closed chain of tangles.
#[derive(Debug, Clone)]
pub struct StrandTrace {
    pub components: usize,
    /// `entering[4 * i + corner]` is true when the oriented strand enters
    /// region `i` through that corner.
    pub entering: Vec<bool>,
}

impl StrandTrace {
    pub fn orientation(&self, region: usize) -> RegionOrientation {
        if self.entering[4 * region + TL] == self.entering[4 * region + TR] {
            RegionOrientation::Parallel
        } else {
            RegionOrientation::Antiparallel
        }
    }
}

fn internal_partner(c: Connectivity, corner: usize) -> usize {
    match (c, corner) {
        (Connectivity::Vertical, TL) => BL,
        (Connectivity::Vertical, BL) => TL,
        (Connectivity::Vertical, TR) => BR,
        (Connectivity::Vertical, _) => TR,
        (Connectivity::Horizontal, TL) => TR,
        (Connectivity::Horizontal, TR) => TL,
        (Connectivity::Horizontal, BL) => BR,
        (Connectivity::Horizontal, _) => BL,
        (Connectivity::Crossed, TL) => BR,
        (Connectivity::Crossed, BR) => TL,
        (Connectivity::Crossed, TR) => BL,
        (Connectivity::Crossed, _) => TR,
    }
}

fn external_partner(n: usize, end: usize) -> usize {
    let (region, corner) = (end / 4, end % 4);
    match corner {
        TR => 4 * ((region + 1) % n) + TL,
        TL => 4 * ((region + n - 1) % n) + TR,
        BR => 4 * ((region + 1) % n) + BL,
        _ => 4 * ((region + n - 1) % n) + BR,
    }
}

/// Trace every strand of the closed chain. Each component is oriented so
/// that it first enters through its lowest-numbered unvisited end.
pub fn trace_chain(regions: &[Connectivity]) -> StrandTrace {
    let n = regions.len();
    let mut visited = vec![false; 4 * n];
    let mut entering = vec![false; 4 * n];
    let mut components = 0;
    for start in 0..4 * n {
        if visited[start] {
            continue;
        }
        components += 1;
        let mut end = start;
        while !visited[end] {
            let exit = 4 * (end / 4) + internal_partner(regions[end / 4], end % 4);
            visited[end] = true;
            visited[exit] = true;
            entering[end] = true;
            end = external_partner(n, exit);
        }
    }
    StrandTrace {
        components,
        entering,
    }
}

/// Least representative of `v` under rotations and reversal.
pub fn dihedral_min<T: Ord + Clone>(v: &[T]) -> Vec<T> {
    let n = v.len();
    let mut best: Option<Vec<T>> = None;
    let reversed: Vec<T> = v.iter().rev().cloned().collect();
    for seq in [v.to_vec(), reversed] {
        for r in 0..n.max(1) {
            let rot: Vec<T> = seq[r..].iter().chain(&seq[..r]).cloned().collect();
            if best.as_ref().is_none_or(|b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    best.unwrap_or_default()
}

fn parse_int(s: &str) -> Result<i64> {
    let cleaned = s.trim().replace('\u{2212}', "-");
    cleaned
        .parse()
        .map_err(|_| Error::Parse(format!("`{}` is not an integer", s.trim())))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PretzelLink {
    params: Vec<i64>,
}

impl PretzelLink {
    pub fn new(params: Vec<i64>) -> Result<Self> {
        if params.is_empty() {
            return Err(Error::EmptyPretzel);
        }
        Ok(Self { params })
    }

    pub fn params(&self) -> &[i64] {
        &self.params
    }

    pub fn crossing_count(&self) -> u64 {
        self.params.iter().map(|a| a.unsigned_abs()).sum()
    }

    pub fn connectivities(&self) -> Vec<Connectivity> {
        self.params
            .iter()
            .map(|a| {
                if a % 2 == 0 {
                    Connectivity::Vertical
                } else {
                    Connectivity::Crossed
                }
            })
            .collect()
    }

    pub fn trace(&self) -> StrandTrace {
        trace_chain(&self.connectivities())
    }

    pub fn component_count(&self) -> usize {
        self.trace().components
    }

    pub fn is_knot(&self) -> bool {
        self.component_count() == 1
    }

    pub fn require_knot(&self) -> Result<()> {
        match self.component_count() {
            1 => Ok(()),
            c => Err(Error::NotAKnot(self.to_string(), c)),
        }
    }

    /// Strand orientation of every region, from one traversal.
    pub fn orientations(&self) -> Vec<RegionOrientation> {
        let trace = self.trace();
        (0..self.params.len())
            .map(|i| trace.orientation(i))
            .collect()
    }

    /// Cache key: least parameter list among rotations and reversals. Not a
    /// complete isotopy invariant.
    pub fn canonicalize(&self) -> PretzelLink {
        PretzelLink {
            params: dihedral_min(&self.params),
        }
    }

    /// The Montesinos description `1/a_1, ..., 1/a_n`; `None` when a region
    /// has no crossings (the diagram is then a connected or split sum).
    pub fn to_montesinos(&self) -> Option<MontesinosDescription> {
        if self.params.contains(&0) {
            return None;
        }
        let tangles = self
            .params
            .iter()
            .map(|&a| Tangle {
                num: a.signum(),
                den: a.abs(),
            })
            .collect();
        Some(MontesinosDescription { tangles })
    }

    pub fn family_membership(&self) -> Result<FamilyTag> {
        self.require_knot()?;
        Ok(match self.to_montesinos() {
            Some(m) => m.normal_form().family().map_or(FamilyTag::Other, |f| f.tag),
            None => FamilyTag::Other,
        })
    }
}

impl fmt::Display for PretzelLink {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.params.iter().map(|a| a.to_string()).collect();
        write!(f, "P({})", parts.join(","))
    }
}

impl FromStr for PretzelLink {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut body = s.trim();
        if let Some(inner) = body.strip_prefix("P(").and_then(|b| b.strip_suffix(')')) {
            body = inner;
        }
        if body.is_empty() {
            return Err(Error::EmptyPretzel);
        }
        let params = body.split(',').map(parse_int).collect::<Result<Vec<_>>>()?;
        PretzelLink::new(params)
    }
}

/// Rational tangle `num/den`, `den >= 1`, in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Tangle {
    pub num: i64,
    pub den: i64,
}

impl Tangle {
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den < 1 || num.gcd(&den) != 1 {
            return Err(Error::InvalidTangle(num, den));
        }
        Ok(Self { num, den })
    }

    pub fn connectivity(&self) -> Connectivity {
        match (self.num.rem_euclid(2), self.den % 2) {
            (_, 0) => Connectivity::Vertical,
            (0, _) => Connectivity::Horizontal,
            _ => Connectivity::Crossed,
        }
    }
}

impl fmt::Display for Tangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MontesinosDescription {
    tangles: Vec<Tangle>,
}

impl MontesinosDescription {
    pub fn new(tangles: Vec<Tangle>) -> Result<Self> {
        if tangles.is_empty() {
            return Err(Error::EmptyPretzel);
        }
        Ok(Self { tangles })
    }

    pub fn tangles(&self) -> &[Tangle] {
        &self.tangles
    }

    pub fn component_count(&self) -> usize {
        let conn: Vec<Connectivity> = self.tangles.iter().map(Tangle::connectivity).collect();
        trace_chain(&conn).components
    }

    pub fn is_knot(&self) -> bool {
        self.component_count() == 1
    }

    /// Fractions reduced into `(0, 1)` with integer parts collected into `e`.
    pub fn normal_form(&self) -> MontesinosNormalForm {
        let mut fractions = Vec::new();
        let mut e = 0;
        for t in &self.tangles {
            if t.den == 1 {
                e += t.num;
            } else {
                e += t.num.div_euclid(t.den);
                fractions.push((t.num.rem_euclid(t.den), t.den));
            }
        }
        MontesinosNormalForm { fractions, e }
    }

    /// Pretzel form when every tangle is `±1/k` or an integer.
    pub fn to_pretzel(&self) -> Option<PretzelLink> {
        let mut params = Vec::new();
        for t in &self.tangles {
            if t.num.abs() == 1 {
                params.push(t.num * t.den);
            } else if t.den == 1 {
                params.extend(std::iter::repeat_n(
                    t.num.signum(),
                    t.num.unsigned_abs() as usize,
                ));
            } else {
                return None;
            }
        }
        PretzelLink::new(params).ok()
    }
}

impl fmt::Display for MontesinosDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.tangles.iter().map(|t| t.to_string()).collect();
        write!(f, "M({})", parts.join(";"))
    }
}

impl FromStr for MontesinosDescription {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut body = s.trim();
        if let Some(inner) = body.strip_prefix("M(").and_then(|b| b.strip_suffix(')')) {
            body = inner;
        }
        if body.is_empty() {
            return Err(Error::EmptyPretzel);
        }
        let tangles = body
            .split(';')
            .map(|part| match part.split_once('/') {
                Some((n, d)) => Tangle::new(parse_int(n)?, parse_int(d)?),
                None => Tangle::new(parse_int(part)?, 1),
            })
            .collect::<Result<Vec<_>>>()?;
        MontesinosDescription::new(tangles)
    }
}

/// `(beta_i / alpha_i)` with `0 < beta_i < alpha_i` in chain order, plus
/// the total integer twist `e`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MontesinosNormalForm {
    pub fractions: Vec<(i64, i64)>,
    pub e: i64,
}

impl MontesinosNormalForm {
    pub fn rational_count(&self) -> usize {
        self.fractions.len()
    }

    pub fn mirror(&self) -> Self {
        MontesinosNormalForm {
            fractions: self.fractions.iter().map(|&(b, a)| (a - b, a)).collect(),
            e: -self.e - self.fractions.len() as i64,
        }
    }

    /// Equal up to rotation and reversal of the fractions, same `e`.
    pub fn equivalent(&self, other: &Self) -> bool {
        self.e == other.e && dihedral_min(&self.fractions) == dihedral_min(&other.fractions)
    }

    fn family_direct(&self) -> Option<FamilyTag> {
        if self.fractions.len() != 3 {
            return None;
        }
        let evens: Vec<usize> = (0..3).filter(|&i| self.fractions[i].1 % 2 == 0).collect();
        let [even] = evens[..] else { return None };
        let mut odds: Vec<i64> = Vec::new();
        for (i, &(b, a)) in self.fractions.iter().enumerate() {
            if i != even {
                if b != 1 {
                    return None;
                }
                odds.push(a);
            }
        }
        odds.sort_unstable();
        let (p, q) = (odds[0], odds[1]);
        let (b, a) = self.fractions[even];
        let k = a / 2;
        match (self.e, b == 1, b == a - 1) {
            (-1, true, _) => Some(FamilyTag::Minus1TwoN { n: k, p, q }),
            (-1, false, true) => Some(FamilyTag::Minus2L { l: k, p, q }),
            (-2, true, _) if k == 1 => Some(FamilyTag::Minus1TwoN { n: -1, p, q }),
            (-2, true, _) => Some(FamilyTag::Minus1Minus1TwoM { m: k, p, q }),
            (-2, false, true) => Some(FamilyTag::Minus1TwoN { n: -k, p, q }),
            _ => None,
        }
    }

    /// Match against the candidate families, trying the mirror image second.
    pub fn family(&self) -> Option<FamilyMatch> {
        if let Some(tag) = self.family_direct() {
            return Some(FamilyMatch {
                tag,
                mirrored: false,
            });
        }
        self.mirror().family_direct().map(|tag| FamilyMatch {
            tag,
            mirrored: true,
        })
    }
}

/// The pretzel families that survive the lamination argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FamilyTag {
    /// `(-2l, p, q)`, `l > 1`
    #[serde(rename = "MINUS_2L")]
    Minus2L {
        l: i64,
        p: i64,
        q: i64,
    },
    /// `(-1, 2n, p, q)`, `n != 0`; absorbs `(-2, p, q)` as `n = 1` and
    /// `(-1, -1, 2, p, q)` as `n = -1`
    #[serde(rename = "MINUS1_2N")]
    Minus1TwoN {
        n: i64,
        p: i64,
        q: i64,
    },
    /// `(-1, -1, 2m, p, q)`, `m > 1`
    #[serde(rename = "MINUS1_MINUS1_2M")]
    Minus1Minus1TwoM {
        m: i64,
        p: i64,
        q: i64,
    },
    Other,
}

impl FamilyTag {
    /// A pretzel link in the family with these parameters.
    pub fn representative(&self) -> Option<PretzelLink> {
        let params = match *self {
            FamilyTag::Minus2L { l, p, q } => vec![-2 * l, p, q],
            FamilyTag::Minus1TwoN { n, p, q } => vec![-1, 2 * n, p, q],
            FamilyTag::Minus1Minus1TwoM { m, p, q } => vec![-1, -1, 2 * m, p, q],
            FamilyTag::Other => return None,
        };
        PretzelLink::new(params).ok()
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyTag::Minus2L { l, p, q } => write!(f, "MINUS_2L(l={l},p={p},q={q})"),
            FamilyTag::Minus1TwoN { n, p, q } => write!(f, "MINUS1_2N(n={n},p={p},q={q})"),
            FamilyTag::Minus1Minus1TwoM { m, p, q } => {
                write!(f, "MINUS1_MINUS1_2M(m={m},p={p},q={q})")
            }
            FamilyTag::Other => f.write_str("OTHER"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyMatch {
    pub tag: FamilyTag,
    /// The input is the mirror image of the family representative.
    pub mirrored: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pz(s: &str) -> PretzelLink {
        s.parse().unwrap()
    }

    #[test]
    fn components() {
        assert_eq!(pz("-2,3,7").component_count(), 1);
        assert_eq!(pz("2,2").component_count(), 2);
        assert_eq!(pz("2,-2").component_count(), 2);
        assert!(pz("-2,3,9").is_knot());
        assert!(!pz("2,-2").is_knot());
        assert!(pz("3").is_knot());
        assert_eq!(pz("2,2,2").component_count(), 3);
        assert_eq!(pz("1,1").component_count(), 2);
        assert_eq!(pz("3,5,7").component_count(), 1);
        for m in 1..5 {
            assert!(pz(&format!("-1,-1,{},3,5", 2 * m)).is_knot());
        }
    }

    #[test]
    fn orientations_of_claim_families() {
        use RegionOrientation::*;
        assert_eq!(pz("-1,-4,3,5").orientations()[1], Parallel);
        assert_eq!(pz("-1,4,3,5").orientations()[1], Parallel);
        assert_eq!(pz("-2,5,7").orientations()[0], Antiparallel);
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(pz("3,7,-2").canonicalize(), pz("-2,3,7"));
        assert_eq!(pz("7,3,-2").canonicalize(), pz("-2,3,7"));
        assert_eq!(pz("-2,3,7").canonicalize(), pz("-2,3,7"));
    }

    #[test]
    fn families() {
        assert_eq!(
            pz("-2,3,7").family_membership().unwrap(),
            FamilyTag::Minus1TwoN { n: 1, p: 3, q: 7 }
        );
        assert_eq!(
            pz("-4,5,7").family_membership().unwrap(),
            FamilyTag::Minus2L { l: 2, p: 5, q: 7 }
        );
        assert_eq!(pz("3,5,7").family_membership().unwrap(), FamilyTag::Other);
        assert_eq!(
            pz("-1,-1,4,3,3").family_membership().unwrap(),
            FamilyTag::Minus1Minus1TwoM { m: 2, p: 3, q: 3 }
        );
        // stated overlaps fold into the (-1, 2n, p, q) family
        assert_eq!(
            pz("-1,-1,2,3,5").family_membership().unwrap(),
            FamilyTag::Minus1TwoN { n: -1, p: 3, q: 5 }
        );
        assert_eq!(
            pz("-1,-2,3,5").family_membership().unwrap(),
            FamilyTag::Minus1TwoN { n: -1, p: 3, q: 5 }
        );
        assert_eq!(
            pz("-1,2,3,5").family_membership().unwrap(),
            FamilyTag::Minus1TwoN { n: 1, p: 3, q: 5 }
        );
        assert_eq!(
            pz("7,-1,3,-6").family_membership().unwrap(),
            FamilyTag::Minus1TwoN { n: -3, p: 3, q: 7 }
        );
        assert!(matches!(
            pz("2,2").family_membership(),
            Err(Error::NotAKnot(_, 2))
        ));
    }

    #[test]
    fn mirror_family() {
        let m = pz("2,-3,-7")
            .to_montesinos()
            .unwrap()
            .normal_form()
            .family()
            .unwrap();
        assert!(m.mirrored);
        assert_eq!(m.tag, FamilyTag::Minus1TwoN { n: 1, p: 3, q: 7 });
    }

    #[test]
    fn parse_errors() {
        assert!("".parse::<PretzelLink>().is_err());
        assert!("1,,2".parse::<PretzelLink>().is_err());
        assert!("1,x".parse::<PretzelLink>().is_err());
        assert_eq!(
            "\u{2212}1,\u{2212}2,3,3".parse::<PretzelLink>().unwrap(),
            pz("-1,-2,3,3")
        );
        assert_eq!("P(-2,3,7)".parse::<PretzelLink>().unwrap(), pz("-2,3,7"));
    }

    #[test]
    fn montesinos_parsing() {
        let m: MontesinosDescription = "1/3;\u{2212}1/2;2/5".parse().unwrap();
        assert_eq!(m.tangles().len(), 3);
        assert!("2/4;1/3".parse::<MontesinosDescription>().is_err());
        assert!("1/0".parse::<MontesinosDescription>().is_err());
        assert_eq!(
            "-1/2;1/3;1/7"
                .parse::<MontesinosDescription>()
                .unwrap()
                .to_pretzel(),
            Some(pz("-2,3,7"))
        );
        let nf = m.normal_form();
        assert_eq!(nf.fractions, vec![(1, 3), (1, 2), (2, 5)]);
        assert_eq!(nf.e, -1);
    }

    #[test]
    fn montesinos_components_agree_with_pretzel() {
        for params in [
            vec![-2, 3, 7],
            vec![2, 2],
            vec![3, 5, 7],
            vec![-1, -1, 4, 3, 3],
            vec![4, 1],
        ] {
            let p = PretzelLink::new(params).unwrap();
            assert_eq!(
                p.component_count(),
                p.to_montesinos().unwrap().component_count(),
                "{p}"
            );
        }
    }
}
