//! Surgery obstructions: the L-space coefficient form, the `±1`
//! coefficient test, the fiberedness certificate for the
//! `(-1, -1, 2m, p, q)` family, and the rank-formula arithmetic.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::pretzel::{dihedral_min, PretzelLink};

/// `Δ(t) = (-1)^k + Σ_j (-1)^{k-j} (t^{n_j} + t^{-n_j})` with
/// `0 < n_1 < ... < n_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OSFormDecomposition {
    exponents: Vec<i64>,
}

impl OSFormDecomposition {
    pub fn new(exponents: Vec<i64>) -> Result<Self> {
        let increasing = exponents.windows(2).all(|w| w[0] < w[1]);
        if !increasing || exponents.first().is_some_and(|&e| e <= 0) {
            return Err(Error::Hypothesis(format!(
                "exponents must be strictly increasing and positive: {exponents:?}"
            )));
        }
        Ok(Self { exponents })
    }

    pub fn k(&self) -> usize {
        self.exponents.len()
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    pub fn to_polynomial(&self) -> LaurentPoly {
        let k = self.k();
        let sign = |parity: usize| if parity.is_multiple_of(2) { 1 } else { -1 };
        let mut p = LaurentPoly::constant(sign(k));
        for (idx, &n) in self.exponents.iter().enumerate() {
            let c = sign(k - (idx + 1));
            p = &p + &LaurentPoly::from_s_terms([(2 * n, c), (-2 * n, c)]);
        }
        p
    }
}

/// Shift `delta` so that it is invariant under `t -> t^{-1}`, with a
/// positive leading coefficient.
pub fn symmetric_center(delta: &LaurentPoly) -> Result<LaurentPoly> {
    let (lo, hi) = match (delta.min_s_exp(), delta.max_s_exp()) {
        (Some(lo), Some(hi)) => (lo, hi),
        _ => return Err(Error::ZeroPolynomial),
    };
    if (lo + hi) % 2 != 0 {
        return Err(Error::Asymmetric(delta.to_string()));
    }
    let mut centered = delta.shift_s(-(lo + hi) / 2);
    if centered.leading_coeff().is_some_and(|c| c.is_negative()) {
        centered = -centered;
    }
    if !centered.has_integer_exponents() || centered != centered.invert_variable() {
        return Err(Error::Asymmetric(delta.to_string()));
    }
    Ok(centered)
}

/// The decomposition when `delta` has exactly the alternating L-space form.
pub fn os_form_check(delta: &LaurentPoly) -> Result<Option<OSFormDecomposition>> {
    let centered = symmetric_center(delta)?;
    let exponents: Vec<i64> = centered
        .terms()
        .map(|(e, _)| e / 2)
        .filter(|&e| e > 0)
        .collect();
    let candidate = OSFormDecomposition::new(exponents)?;
    Ok((candidate.to_polynomial() == centered).then_some(candidate))
}

/// Every nonzero coefficient is `±1`.
pub fn pm1_coefficients(delta: &LaurentPoly) -> bool {
    delta.terms().all(|(_, c)| c.abs().is_one())
}

/// Extreme coefficients are `±1`.
pub fn monic_check(delta: &LaurentPoly) -> Result<bool> {
    let n = delta.normalize()?;
    Ok(n.leading_coeff().is_some_and(|c| c.abs().is_one()))
}

/// A reduced slope `alpha / beta` with `beta >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SurgerySlope {
    pub alpha: i64,
    pub beta: i64,
}

impl SurgerySlope {
    pub fn new(alpha: i64, beta: i64) -> Result<Self> {
        if beta < 1 || alpha.gcd(&beta) != 1 {
            return Err(Error::InvalidSlope(alpha, beta));
        }
        Ok(Self { alpha, beta })
    }

    pub fn integral(alpha: i64) -> Self {
        Self { alpha, beta: 1 }
    }

    pub fn negated(self) -> Self {
        Self {
            alpha: -self.alpha,
            beta: self.beta,
        }
    }
}

impl fmt::Display for SurgerySlope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.beta == 1 {
            write!(f, "{}", self.alpha)
        } else {
            write!(f, "{}/{}", self.alpha, self.beta)
        }
    }
}

/// Symbolic inputs of the rank formula; `nu` and `y` are never computed
/// here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HFRankParams {
    pub nu: i64,
    /// `Σ_s (rk H_*(Â_s) - 1)`
    pub y: i64,
    pub slope: SurgerySlope,
}

/// `max(0, (2ν - 1)|β| - |α|)`
pub fn x_term(nu: i64, alpha: i64, beta: i64) -> i64 {
    0.max((2 * nu - 1) * beta.abs() - alpha.abs())
}

/// `|α| + 2X(ν, α, β) + |β|Y`
pub fn hf_rank(params: &HFRankParams) -> i64 {
    let HFRankParams { nu, y, slope } = *params;
    slope.alpha.abs() + 2 * x_term(nu, slope.alpha, slope.beta) + slope.beta.abs() * y
}

/// Numerical evaluation of the argument that an L-space slope `α/β` with
/// `β >= 2` forces the integral slope `α` to be one too.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim2Check {
    pub params: HFRankParams,
    pub x_beta: i64,
    pub x_one: i64,
    /// `2X(ν,α,β) + |β|Y = 0`
    pub hypothesis: bool,
    /// `Y <= 0`
    pub y_nonpositive: bool,
    /// `2X(ν,α,1) + Y`
    pub integral_excess: i64,
    /// `rk(S^3_α) - |α|` evaluated through the rank formula directly.
    pub integral_rank_excess: i64,
    /// `2X(ν,α,1) + Y <= 0`
    pub integral_bound: bool,
}

impl Claim2Check {
    pub fn both_hold(&self) -> bool {
        self.y_nonpositive && self.integral_bound
    }
}

pub fn claim2_implication(params: &HFRankParams) -> Result<Claim2Check> {
    let HFRankParams { nu, y, slope } = *params;
    if slope.beta < 2 {
        return Err(Error::Hypothesis(format!("beta = {} < 2", slope.beta)));
    }
    let x_beta = x_term(nu, slope.alpha, slope.beta);
    let x_one = x_term(nu, slope.alpha, 1);
    let integral = HFRankParams {
        nu,
        y,
        slope: SurgerySlope::integral(slope.alpha),
    };
    let integral_excess = 2 * x_one + y;
    Ok(Claim2Check {
        params: *params,
        x_beta,
        x_one,
        hypothesis: 2 * x_beta + slope.beta * y == 0,
        y_nonpositive: y <= 0,
        integral_excess,
        integral_rank_excess: hf_rank(&integral) - slope.alpha.abs(),
        integral_bound: integral_excess <= 0,
    })
}

/// Inclusive bounds for the rank-formula sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim2Grid {
    pub nu: (i64, i64),
    pub alpha: (i64, i64),
    pub beta: (i64, i64),
    pub y: (i64, i64),
}

impl Default for Claim2Grid {
    fn default() -> Self {
        Self {
            nu: (-3, 5),
            alpha: (-30, 30),
            beta: (2, 5),
            y: (-10, 0),
        }
    }
}

impl Claim2Grid {
    /// Every tuple with coprime `α, β` satisfying the L-space hypothesis.
    pub fn checks(&self) -> Result<Vec<Claim2Check>> {
        let mut out = Vec::new();
        for nu in self.nu.0..=self.nu.1 {
            for beta in self.beta.0.max(2)..=self.beta.1 {
                for alpha in self.alpha.0..=self.alpha.1 {
                    let Ok(slope) = SurgerySlope::new(alpha, beta) else {
                        continue;
                    };
                    for y in self.y.0..=self.y.1 {
                        let check = claim2_implication(&HFRankParams { nu, y, slope })?;
                        if check.hypothesis {
                            out.push(check);
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Fiberedness {
    Fibered,
    NotFibered,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GabaiCase {
    #[serde(rename = "CASE 2")]
    Case2,
    #[serde(rename = "CASE 2B")]
    Case2B,
    #[serde(rename = "CASE 1")]
    Case1,
}

/// Twist data of the type II Seifert surface after cyclic permutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeIISurface {
    pub m1: i64,
    pub m11: i64,
    pub m2: i64,
    pub m3: i64,
    pub m4: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GabaiCaseTrace {
    pub input: PretzelLink,
    pub surface: TypeIISurface,
    /// `Σ_{j=1}^4 m_j / |m_j|`
    pub sign_sum: i64,
    pub case_path: Vec<GabaiCase>,
    pub associated_link: PretzelLink,
    /// `L'` is not `±(2, -2, 2)`.
    pub associated_link_generic: bool,
    /// Some twist of `L'` is `±1`.
    pub associated_has_unit_twist: bool,
    /// `L'` has the form `±(2, -2, ..., 2, -2, n)`.
    pub associated_alternating_form: bool,
    pub verdict: Fiberedness,
}

/// Whether some rotation/reversal of `±params` reads `(2, -2, ..., 2, -2, n)`.
pub fn has_alternating_two_form(params: &[i64]) -> bool {
    let len = params.len();
    if len.is_multiple_of(2) {
        return false;
    }
    let reversed: Vec<i64> = params.iter().rev().copied().collect();
    for seq in [params.to_vec(), reversed] {
        for r in 0..len {
            for sign in [1, -1] {
                let ok = (0..len - 1).all(|i| {
                    let want = if i % 2 == 0 { 2 } else { -2 };
                    sign * seq[(r + i) % len] == want
                });
                if ok {
                    return true;
                }
            }
        }
    }
    false
}

/// Decision chain showing that the `(-1, -1, 2m, p, q)` pretzel knot is not
/// fibered, valid for `m > 1` and odd `3 <= p <= q`.
pub fn gabai_not_fibered(m: i64, p: i64, q: i64) -> Result<GabaiCaseTrace> {
    if m < 2 || p < 3 || q < p || p % 2 == 0 || q % 2 == 0 {
        return Err(Error::OutsideFamily(format!("(m={m}, p={p}, q={q})")));
    }
    let input = PretzelLink::new(vec![-1, -1, 2 * m, p, q])?;
    let surface = TypeIISurface {
        m1: -1,
        m11: 2 * m,
        m2: p,
        m3: q,
        m4: -1,
    };
    let sign_sum = [surface.m1, surface.m2, surface.m3, surface.m4]
        .iter()
        .map(|v| v.signum())
        .sum();
    let associated = PretzelLink::new(vec![2 * m, -2, -2])?;

    let exceptional = dihedral_min(&[2, -2, 2]);
    let exceptional_neg = dihedral_min(&[-2, 2, -2]);
    let canonical = dihedral_min(associated.params());
    let generic = canonical != exceptional && canonical != exceptional_neg;
    if sign_sum != 0 || !generic {
        return Err(Error::OutsideFamily(format!(
            "(m={m}, p={p}, q={q}): CASE 2B does not apply"
        )));
    }
    let unit = associated.params().iter().any(|a| a.abs() == 1);
    let alternating = has_alternating_two_form(associated.params());
    let verdict = if unit || alternating {
        Fiberedness::Fibered
    } else {
        Fiberedness::NotFibered
    };
    Ok(GabaiCaseTrace {
        input,
        surface,
        sign_sum,
        case_path: vec![GabaiCase::Case2, GabaiCase::Case2B, GabaiCase::Case1],
        associated_link: associated,
        associated_link_generic: generic,
        associated_has_unit_twist: unit,
        associated_alternating_form: alternating,
        verdict,
    })
}

/// A coefficient of absolute value at least two, if any.
pub fn large_coefficient(delta: &LaurentPoly) -> Option<(i64, BigInt)> {
    let n = delta.normalize().ok()?;
    let found = n
        .terms()
        .find(|(_, c)| c.abs() > BigInt::one())
        .map(|(e, c)| (e / 2, c.clone()));
    found
}
