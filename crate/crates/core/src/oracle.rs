//! Alexander polynomials by Fox calculus on the Wirtinger presentation of
//! the pretzel diagram. Shares nothing with the skein engine beyond the
//! diagram template and the polynomial type, so it serves as ground truth.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::pretzel::PretzelLink;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingRelation {
    pub over: usize,
    pub incoming: usize,
    pub outgoing: usize,
    /// +1 or -1.
    pub sign: i8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WirtingerPresentation {
    pub generator_count: usize,
    pub relations: Vec<CrossingRelation>,
}

// Crossing-end corners.
const NW: usize = 0;
const NE: usize = 1;
const SW: usize = 2;
const SE: usize = 3;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Node {
    /// `4 * crossing + corner`
    End(usize),
    /// `4 * region + {TL, TR, BL, BR}`
    Port(usize),
}

struct Diagram {
    /// `(region, twists)` for every crossing
    crossings: Vec<i64>,
    /// wire partner of each crossing end, ports skipped
    wire: Vec<usize>,
}

fn build_wires(link: &PretzelLink) -> Diagram {
    let params = link.params();
    let n = params.len();
    let mut crossings = Vec::new();
    let mut first = Vec::with_capacity(n);
    for &a in params {
        first.push(crossings.len());
        crossings.extend(std::iter::repeat_n(a, a.unsigned_abs() as usize));
    }

    let mut edges: Vec<(Node, Node)> = Vec::new();
    for (i, &a) in params.iter().enumerate() {
        let port = |c: usize| Node::Port(4 * i + c);
        let len = a.unsigned_abs() as usize;
        if len == 0 {
            edges.push((port(0), port(2)));
            edges.push((port(1), port(3)));
        } else {
            let c0 = first[i];
            let last = c0 + len - 1;
            edges.push((port(0), Node::End(4 * c0 + NW)));
            edges.push((port(1), Node::End(4 * c0 + NE)));
            edges.push((port(2), Node::End(4 * last + SW)));
            edges.push((port(3), Node::End(4 * last + SE)));
            for c in c0..last {
                edges.push((Node::End(4 * c + SW), Node::End(4 * (c + 1) + NW)));
                edges.push((Node::End(4 * c + SE), Node::End(4 * (c + 1) + NE)));
            }
        }
        let next = (i + 1) % n;
        edges.push((port(1), Node::Port(4 * next)));
        edges.push((port(3), Node::Port(4 * next + 2)));
    }

    let mut port_edges: Vec<Vec<usize>> = vec![Vec::new(); 4 * n];
    let mut end_edge: Vec<usize> = vec![usize::MAX; 4 * crossings.len()];
    for (k, &(u, v)) in edges.iter().enumerate() {
        for node in [u, v] {
            match node {
                Node::Port(p) => port_edges[p].push(k),
                Node::End(e) => end_edge[e] = k,
            }
        }
    }
    let other = |k: usize, from: Node| {
        if edges[k].0 == from {
            edges[k].1
        } else {
            edges[k].0
        }
    };

    let wire = (0..4 * crossings.len())
        .map(|e| {
            let mut node = Node::End(e);
            let mut edge = end_edge[e];
            loop {
                let next = other(edge, node);
                match next {
                    Node::End(target) => return target,
                    Node::Port(p) => {
                        let pe = &port_edges[p];
                        // a self-loop edge (single region wrap) appears twice
                        edge = if pe[0] == edge { pe[1] } else { pe[0] };
                        node = next;
                    }
                }
            }
        })
        .collect();
    Diagram { crossings, wire }
}

fn through(corner: usize) -> usize {
    match corner {
        NW => SE,
        SE => NW,
        NE => SW,
        _ => NE,
    }
}

fn direction(entry_corner: usize) -> (i64, i64) {
    match entry_corner {
        NW => (1, -1),
        SE => (-1, 1),
        NE => (-1, -1),
        _ => (1, 1),
    }
}

/// Whether the strand entering through `corner` is the over-strand.
fn is_over(twists: i64, corner: usize) -> bool {
    let on_ne_sw = matches!(corner, NE | SW);
    if twists > 0 {
        on_ne_sw
    } else {
        !on_ne_sw
    }
}

/// Wirtinger presentation with arcs numbered along the traversal that
/// starts at the top-left end of crossing `start`.
pub fn build_diagram_from(link: &PretzelLink, start: usize) -> Result<WirtingerPresentation> {
    link.require_knot()?;
    let diagram = build_wires(link);
    let c = diagram.crossings.len();
    if c == 0 {
        return Err(Error::NoCrossings(link.to_string()));
    }
    let start = start % c;

    let mut over_arc = vec![usize::MAX; c];
    let mut incoming = vec![usize::MAX; c];
    let mut outgoing = vec![usize::MAX; c];
    let mut over_dir = vec![(0, 0); c];
    let mut under_dir = vec![(0, 0); c];

    let mut arc = 0;
    let mut end = 4 * start + NW;
    for _ in 0..2 * c {
        let (x, corner) = (end / 4, end % 4);
        if is_over(diagram.crossings[x], corner) {
            over_arc[x] = arc;
            over_dir[x] = direction(corner);
        } else {
            incoming[x] = arc;
            arc += 1;
            outgoing[x] = arc;
            under_dir[x] = direction(corner);
        }
        end = diagram.wire[4 * x + through(corner)];
    }
    if end != 4 * start + NW || arc != c {
        return Err(Error::Matrix(format!(
            "traversal of {link} did not close up"
        )));
    }

    let relations = (0..c)
        .map(|x| {
            let (o, u) = (over_dir[x], under_dir[x]);
            let cross = o.0 * u.1 - o.1 * u.0;
            CrossingRelation {
                over: over_arc[x] % c,
                incoming: incoming[x] % c,
                outgoing: outgoing[x] % c,
                sign: if cross > 0 { 1 } else { -1 },
            }
        })
        .collect();
    Ok(WirtingerPresentation {
        generator_count: c,
        relations,
    })
}

pub fn build_diagram(link: &PretzelLink) -> Result<WirtingerPresentation> {
    build_diagram_from(link, 0)
}

impl WirtingerPresentation {
    /// Abelianized Fox Jacobian, one row per relation.
    pub fn alexander_matrix(&self) -> Vec<Vec<LaurentPoly>> {
        let c = self.generator_count;
        let t = LaurentPoly::monomial_t(1, 1);
        let t_inv = LaurentPoly::monomial_t(-1, 1);
        let one = LaurentPoly::one();
        self.relations
            .iter()
            .map(|r| {
                let mut row = vec![LaurentPoly::zero(); c];
                // x_out = x_over^e x_in x_over^-e
                let (a, b) = if r.sign > 0 {
                    (&one - &t, &t)
                } else {
                    (&one - &t_inv, &t_inv)
                };
                row[r.over] = &row[r.over] + &a;
                row[r.incoming] = &row[r.incoming] + b;
                row[r.outgoing] = &row[r.outgoing] - &one;
                row
            })
            .collect()
    }
}

/// Exact quotient, `None` when `d` does not divide `n`.
pub fn div_exact(n: &LaurentPoly, d: &LaurentPoly) -> Option<LaurentPoly> {
    if d.is_zero() {
        return None;
    }
    if n.is_zero() {
        return Some(LaurentPoly::zero());
    }
    let d_max = d.max_s_exp()?;
    let d_min = d.min_s_exp()?;
    let d_lead = d.leading_coeff()?.clone();
    let mut rem = n.clone();
    let mut quot = LaurentPoly::zero();
    while !rem.is_zero() {
        let r_max = rem.max_s_exp()?;
        if r_max - d_max < rem.min_s_exp()? - d_min {
            return None;
        }
        let lead = rem.leading_coeff()?;
        if !(lead % &d_lead).is_zero() {
            return None;
        }
        let term = LaurentPoly::monomial_s(r_max - d_max, lead / &d_lead);
        rem = &rem - &(&term * d);
        quot = &quot + &term;
    }
    Some(quot)
}

/// Fraction-free (Bareiss) determinant.
pub fn determinant(mut m: Vec<Vec<LaurentPoly>>) -> Result<LaurentPoly> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::Matrix("determinant of a non-square matrix".into()));
    }
    if n == 0 {
        return Ok(LaurentPoly::one());
    }
    let mut negate = false;
    let mut prev = LaurentPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(LaurentPoly::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = div_exact(&num, &prev)
                    .ok_or_else(|| Error::Matrix("inexact Bareiss division".into()))?;
            }
            m[i][k] = LaurentPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}

/// Minor with the last row and column `col` removed, unnormalized.
pub fn alexander_minor(link: &PretzelLink, col: usize) -> Result<LaurentPoly> {
    let pres = build_diagram(link)?;
    let c = pres.generator_count;
    if col >= c {
        return Err(Error::Matrix(format!(
            "column {col} out of range for {c} generators"
        )));
    }
    let matrix = pres.alexander_matrix();
    let minor: Vec<Vec<LaurentPoly>> = matrix[..c - 1]
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .filter(|&(j, _)| j != col)
                .map(|(_, x)| x.clone())
                .collect()
        })
        .collect();
    determinant(minor)
}

/// Normalized Alexander polynomial of a pretzel knot via Fox calculus.
pub fn alexander_fox(link: &PretzelLink) -> Result<LaurentPoly> {
    let minor = alexander_minor(link, 0)?;
    if minor.is_zero() {
        return Err(Error::Matrix(format!(
            "vanishing Alexander minor for {link}"
        )));
    }
    if !minor.eval_at_one().abs().eq(&1.into()) {
        return Err(Error::Matrix(format!("|Δ(1)| != 1 for {link}: {minor}")));
    }
    minor.normalize()
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

    #[test]
    fn diagram_sizes() {
        let d = build_diagram(&pz("3")).unwrap();
        assert_eq!((d.generator_count, d.relations.len()), (3, 3));
        assert_eq!(build_diagram(&pz("-2,3,7")).unwrap().generator_count, 12);
        assert_eq!(
            build_diagram(&pz("-1,-1,4,3,3")).unwrap().relations.len(),
            12
        );
        assert!(matches!(
            build_diagram(&pz("2,2")),
            Err(Error::NotAKnot(_, 2))
        ));
        assert!(matches!(
            build_diagram(&pz("0")),
            Err(Error::NoCrossings(_))
        ));
    }

    #[test]
    fn crossing_signs_follow_orientation() {
        // parallel regions: sign of a_i; antiparallel: opposite
        let d = build_diagram(&pz("-2,3,7")).unwrap();
        assert!(d.relations[..2].iter().all(|r| r.sign == 1));
        let d = build_diagram(&pz("-1,4,3,5")).unwrap();
        assert!(d.relations[1..5].iter().all(|r| r.sign == 1));
    }

    #[test]
    fn exact_division() {
        let a = lp("1 + t");
        let b = lp("t^-1 - 2 + 3*t^2");
        assert_eq!(div_exact(&(&a * &b), &a), Some(b.clone()));
        assert_eq!(div_exact(&lp("1 + t^2"), &a), None);
        assert_eq!(div_exact(&lp("3"), &lp("2")), None);
    }

    #[test]
    fn small_determinants() {
        let m = vec![vec![lp("1"), lp("2")], vec![lp("3"), lp("4")]];
        assert_eq!(determinant(m).unwrap(), lp("-2"));
        let m = vec![vec![lp("0"), lp("t")], vec![lp("1"), lp("5")]];
        assert_eq!(determinant(m).unwrap(), lp("-t"));
        let m = vec![
            vec![lp("t"), lp("1"), lp("0")],
            vec![lp("1"), lp("t"), lp("1")],
            vec![lp("0"), lp("1"), lp("t")],
        ];
        // t^3 - 2t by cofactor expansion
        assert_eq!(determinant(m).unwrap(), lp("t^3 - 2*t"));
    }

    #[test]
    fn trefoil_and_unknot() {
        assert_eq!(alexander_fox(&pz("1,1,1")).unwrap(), lp("1 - t + t^2"));
        assert_eq!(alexander_fox(&pz("3")).unwrap(), lp("1"));
        assert_eq!(alexander_fox(&pz("-2,3,7")).unwrap().num_terms(), 9);
    }

    #[test]
    fn claim3_example() {
        let d = alexander_fox(&pz("-1,-2,3,3")).unwrap();
        assert_eq!(d.coefficient(1), (-4).into());
    }

    #[test]
    fn non_monic_gabai_family() {
        let d = alexander_fox(&pz("-1,-1,4,3,3")).unwrap();
        assert_ne!(d.leading_coeff().unwrap().abs(), 1.into());
    }

    #[test]
    fn column_and_labeling_independence() {
        for s in ["-1,-2,3,3", "-2,3,7", "5,-3,2"] {
            let link = pz(s);
            let c = build_diagram(&link).unwrap().generator_count;
            let first = alexander_minor(&link, 0).unwrap();
            let last = alexander_minor(&link, c - 1).unwrap();
            assert!(first.equal_up_to_units(&last), "{s}");
            for start in 0..c {
                let pres = build_diagram_from(&link, start).unwrap();
                let m = pres.alexander_matrix();
                let minor: Vec<Vec<_>> = m[..c - 1].iter().map(|r| r[1..].to_vec()).collect();
                assert!(
                    determinant(minor).unwrap().equal_up_to_units(&first),
                    "{s} start {start}"
                );
            }
        }
    }
}
