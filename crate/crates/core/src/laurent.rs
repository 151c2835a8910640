//! Exact Laurent polynomials over the integers in a half-power variable.
//!
//! Exponents are stored in units of `s`, where `s^2 = t`. The exponent `2k`
//! therefore stands for `t^k` and odd exponents are half-integer powers of
//! `t`. Coefficients are arbitrary precision and zero coefficients are never
//! stored, so two polynomials are equal iff their maps are equal.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial_s(0, c)
    }

    /// `c * s^e`.
    pub fn monomial_s(e: i64, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c.into());
        p
    }

    /// `c * t^k`.
    pub fn monomial_t(k: i64, c: impl Into<BigInt>) -> Self {
        Self::monomial_s(2 * k, c)
    }

    /// `t^{-1/2} - t^{1/2}`, the factor in the skein relation.
    pub fn skein_z() -> Self {
        Self::from_s_terms([(-1, 1), (1, -1)])
    }

    pub fn from_s_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// Build from coefficients of `t^0, t^1, ...`.
    pub fn from_t_coeffs<C: Into<BigInt>>(coeffs: impl IntoIterator<Item = C>) -> Self {
        Self::from_s_terms(
            coeffs
                .into_iter()
                .enumerate()
                .map(|(i, c)| (2 * i as i64, c)),
        )
    }

    fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(e).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    /// Nonzero terms in ascending `s`-exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Lowest exponent in `s`-units.
    pub fn min_s_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Highest exponent in `s`-units.
    pub fn max_s_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Lowest and highest exponent, in `t`-units. Half-integer exponents
    /// come back as `x.5`.
    pub fn mindeg(&self) -> Option<f64> {
        self.min_s_exp().map(|e| e as f64 / 2.0)
    }

    pub fn maxdeg(&self) -> Option<f64> {
        self.max_s_exp().map(|e| e as f64 / 2.0)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.values().next_back()
    }

    pub fn trailing_coeff(&self) -> Option<&BigInt> {
        self.coeffs.values().next()
    }

    /// True when every exponent is an integer power of `t`.
    pub fn has_integer_exponents(&self) -> bool {
        self.coeffs.keys().all(|e| e % 2 == 0)
    }

    /// The coefficient of `t^j`.
    pub fn coefficient(&self, j: i64) -> BigInt {
        self.coefficient_s(2 * j)
    }

    /// The coefficient of `s^e`.
    pub fn coefficient_s(&self, e: i64) -> BigInt {
        self.coeffs.get(&e).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Multiply by `s^k`.
    pub fn shift_s(&self, k: i64) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&e, c)| (e + k, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(&e, x)| (e, x * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `p(t^{-1})`.
    pub fn invert_variable(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    /// `p(-t)`. Only defined when all exponents are integer powers of `t`.
    pub fn substitute_neg_t(&self) -> Result<Self> {
        if !self.has_integer_exponents() {
            return Err(Error::HalfIntegerExponent);
        }
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&e, c)| (e, if (e / 2) % 2 == 0 { c.clone() } else { -c }))
                .collect(),
        })
    }

    /// Multiply by `±s^k` so that the lowest exponent is zero and the
    /// constant coefficient is positive.
    pub fn normalize(&self) -> Result<Self> {
        let min = self.min_s_exp().ok_or(Error::ZeroPolynomial)?;
        let shifted = self.shift_s(-min);
        if shifted.coeffs[&0].is_negative() {
            Ok(-shifted)
        } else {
            Ok(shifted)
        }
    }

    /// Whether `a = ±s^k b` for some `k`.
    pub fn equal_up_to_units(&self, other: &Self) -> bool {
        match (self.normalize(), other.normalize()) {
            (Ok(a), Ok(b)) => a == b,
            (Err(_), Err(_)) => true,
            _ => false,
        }
    }

    /// Evaluate at an integer value of `s`. Negative exponents require
    /// `s = ±1`.
    pub fn eval_s(&self, s: i64) -> Option<BigInt> {
        let s = BigInt::from(s);
        let mut acc = BigInt::zero();
        for (&e, c) in &self.coeffs {
            if e >= 0 {
                acc += c * num_traits::pow(s.clone(), e as usize);
            } else if s.abs().is_one() {
                acc += c * num_traits::pow(s.clone(), (-e) as usize);
            } else {
                return None;
            }
        }
        Some(acc)
    }

    /// Value at `t = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    /// Value at `t = -1`. Only defined for integer exponents.
    pub fn eval_at_minus_one(&self) -> Result<BigInt> {
        Ok(self.substitute_neg_t()?.eval_at_one())
    }
}

/// `f_l = 1 + t + ... + t^l`.
pub fn f_poly(l: i64) -> Result<LaurentPoly> {
    if l < 0 {
        return Err(Error::NegativeDegree(l));
    }
    Ok(LaurentPoly::from_s_terms((0..=l).map(|i| (2 * i, 1))))
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.coeffs {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.coeffs {
            out.add_term(e, -c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e1, c1) in &self.coeffs {
            for (&e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |a, b| &a + &b)
    }
}

impl std::iter::Product for LaurentPoly {
    fn product<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::one(), |a, b| &a * &b)
    }
}

fn fmt_monomial(e: i64) -> String {
    if e % 2 != 0 {
        format!("t^({e}/2)")
    } else if e == 2 {
        "t".to_string()
    } else {
        format!("t^{}", e / 2)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&e, c)) in self.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            if e == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&fmt_monomial(e))?;
            } else {
                write!(f, "{mag}*{}", fmt_monomial(e))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

fn parse_monomial(s: &str) -> Option<i64> {
    let rest = s.strip_prefix('t')?;
    if rest.is_empty() {
        return Some(2);
    }
    let rest = rest.strip_prefix('^')?;
    if let Some(inner) = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        let num = inner.strip_suffix("/2")?;
        return num.parse::<i64>().ok();
    }
    rest.parse::<i64>().ok().map(|k| 2 * k)
}

fn parse_term(s: &str) -> Option<(i64, BigInt)> {
    if let Some((c, m)) = s.split_once('*') {
        Some((parse_monomial(m)?, c.parse().ok()?))
    } else if s.starts_with('t') {
        Some((parse_monomial(s)?, BigInt::one()))
    } else {
        Some((0, s.parse().ok()?))
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(input: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("malformed polynomial `{input}`"));
        let compact: String = input
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| if c == '\u{2212}' { '-' } else { c })
            .collect();
        if compact.is_empty() {
            return Err(bad());
        }
        // Split into signed terms; a sign directly after `^` or `(` belongs
        // to an exponent.
        let mut terms = Vec::new();
        let mut current = String::new();
        let mut prev: Option<char> = None;
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && !matches!(prev, None | Some('^') | Some('(')) {
                terms.push(std::mem::take(&mut current));
            }
            current.push(ch);
            prev = Some(ch);
        }
        terms.push(current);

        let mut p = LaurentPoly::zero();
        for raw in terms {
            let (negative, body) = match raw.chars().next() {
                Some('-') => (true, &raw[1..]),
                Some('+') => (false, &raw[1..]),
                _ => (false, raw.as_str()),
            };
            if body.is_empty() || body.starts_with(['+', '-']) {
                return Err(bad());
            }
            let (e, c) = parse_term(body).ok_or_else(bad)?;
            if c.is_negative() {
                return Err(bad());
            }
            p.add_term(e, if negative { -c } else { c });
        }
        Ok(p)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
