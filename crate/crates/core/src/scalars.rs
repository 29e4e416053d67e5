//! The coefficient ring `Q[hbar][alpha, alpha^-1]`.
//!
//! Every coefficient in the crate is a [`Scalar`]: a sparse map from
//! `(hbar power, alpha power)` to a nonzero rational. Arithmetic is exact.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("alpha must be invertible, got alpha = 0")]
    AlphaNotInvertible,
    #[error("scalar {0} is not a unit of Q[hbar][alpha, alpha^-1]")]
    NotInvertible(String),
    #[error("expected a pure alpha-term, got {0}")]
    NotPureAlpha(String),
}

/// Exponent pair `(hbar power, alpha power)`.
pub type Exponents = (u32, i32);

/// Element of `Q[hbar][alpha, alpha^-1]` in canonical form (no zero coefficients).
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    terms: BTreeMap<Exponents, BigRational>,
}

// Integer fast paths: `Ratio` arithmetic normalizes by a gcd even when both
// denominators are one.
fn add_into(acc: &mut BigRational, c: BigRational) {
    if acc.is_integer() && c.is_integer() {
        let n = acc.numer() + c.numer();
        *acc = BigRational::from_integer(n);
    } else {
        *acc += c;
    }
}

fn rmul(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_integer() && b.is_integer() {
        BigRational::from_integer(a.numer() * b.numer())
    } else {
        a * b
    }
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Scalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(rational(n, d))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Self::term(q, 0, 0)
    }

    /// `c * hbar^hpow * alpha^apow`.
    pub fn term(c: BigRational, hpow: u32, apow: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((hpow, apow), c);
        }
        Self { terms }
    }

    pub fn hbar() -> Self {
        Self::hbar_pow(1)
    }

    pub fn hbar_pow(k: u32) -> Self {
        Self::term(BigRational::one(), k, 0)
    }

    pub fn alpha() -> Self {
        Self::alpha_pow(1)
    }

    pub fn alpha_pow(k: i32) -> Self {
        Self::term(BigRational::one(), 0, k)
    }

    /// `alpha + alpha^-1`, the diagonal weight of the massive Laplacian.
    pub fn alpha_sum() -> Self {
        Self::alpha() + Self::alpha_pow(-1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&(0, 0))
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value if this scalar is a plain rational (including zero).
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    /// True when no term carries a power of alpha.
    pub fn is_alpha_free(&self) -> bool {
        self.terms.keys().all(|&(_, a)| a == 0)
    }

    pub fn is_hbar_free(&self) -> bool {
        self.terms.keys().all(|&(h, _)| h == 0)
    }

    pub fn max_hbar_power(&self) -> Option<u32> {
        self.terms.keys().map(|&(h, _)| h).max()
    }

    pub fn coefficient(&self, hpow: u32, apow: i32) -> BigRational {
        self.terms
            .get(&(hpow, apow))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    fn add_term(&mut self, key: Exponents, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(BigRational::zero);
        add_into(entry, c);
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (*k, rmul(v, c)))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Inverse of a unit: a single term with no hbar factor.
    pub fn inverse(&self) -> Result<Self, ScalarError> {
        if self.terms.len() == 1 {
            let (&(h, a), c) = self.terms.iter().next().unwrap();
            if h == 0 {
                return Ok(Self::term(c.recip(), 0, -a));
            }
        }
        Err(ScalarError::NotInvertible(self.to_string()))
    }

    /// Evaluation homomorphism `hbar := hval`, `alpha := aval`.
    pub fn specialize(&self, hval: &BigRational, aval: &BigRational) -> Result<BigRational, ScalarError> {
        let s = self.substitute(Some(hval), Some(aval))?;
        Ok(s.as_rational().expect("fully specialized scalar is rational"))
    }

    /// Partial evaluation; `None` keeps the variable symbolic.
    pub fn substitute(
        &self,
        hval: Option<&BigRational>,
        aval: Option<&BigRational>,
    ) -> Result<Self, ScalarError> {
        if let Some(a) = aval {
            if a.is_zero() {
                return Err(ScalarError::AlphaNotInvertible);
            }
        }
        let mut out = Self::zero();
        for (&(h, a), c) in &self.terms {
            let mut coef = c.clone();
            let mut key = (h, a);
            if let Some(hv) = hval {
                coef *= pow_rational(hv, h as i32);
                key.0 = 0;
            }
            if let Some(av) = aval {
                coef *= pow_rational(av, a);
                key.1 = 0;
            }
            out.add_term(key, coef);
        }
        Ok(out)
    }
}

fn pow_rational(x: &BigRational, e: i32) -> BigRational {
    let mut acc = BigRational::one();
    let base = if e < 0 { x.recip() } else { x.clone() };
    for _ in 0..e.unsigned_abs() {
        acc *= &base;
    }
    acc
}

/// `m^2 = alpha + alpha^-1 - 2` for a pure alpha-term input.
///
/// The input is either the symbol `alpha` (possibly scaled/powered, any single
/// pure-alpha term) or a nonzero rational specialization.
pub fn mass_squared(alpha: &Scalar) -> Result<Scalar, ScalarError> {
    if !alpha.is_hbar_free() || alpha.len() != 1 {
        if alpha.is_zero() {
            return Err(ScalarError::AlphaNotInvertible);
        }
        return Err(ScalarError::NotPureAlpha(alpha.to_string()));
    }
    let inv = alpha.inverse()?;
    Ok(alpha + &inv - Scalar::from_int(2))
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Self::from_rational(q)
    }
}

impl<'a> Add<&'a Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(mut self, rhs: Scalar) -> Scalar {
        self += &rhs;
        self
    }
}

impl<'a> AddAssign<&'a Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &'a Scalar) {
        for (k, v) in &rhs.terms {
            self.add_term(*k, v.clone());
        }
    }
}

impl<'a> SubAssign<&'a Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &'a Scalar) {
        for (k, v) in &rhs.terms {
            self.add_term(*k, -v.clone());
        }
    }
}

impl<'a> Sub<&'a Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(mut self, rhs: Scalar) -> Scalar {
        self -= &rhs;
        self
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(k, v)| (*k, -v.clone())).collect(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl<'a> Mul<&'a Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (&(h1, a1), c1) in &self.terms {
            for (&(h2, a2), c2) in &rhs.terms {
                out.add_term((h1 + h2, a1 + a2), rmul(c1, c2));
            }
        }
        out
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, q: &BigRational) -> fmt::Result {
    if q.is_integer() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

/// Writes `sum c_i * label_i`, inlining single-term coefficients and
/// parenthesizing the rest. An empty label stands for the unit.
pub(crate) fn write_combination<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (String, &'a Scalar)>,
) -> fmt::Result {
    let mut empty = true;
    for (i, (label, c)) in terms.enumerate() {
        empty = false;
        if c.len() == 1 {
            let (&(h, a), q) = c.terms().next().unwrap();
            match (i, q.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let unit = h == 0 && a == 0 && q.abs().is_one();
            if label.is_empty() {
                write_unsigned_term(f, q, h, a, false)?;
            } else {
                if !unit {
                    write_unsigned_term(f, q, h, a, true)?;
                    write!(f, "*")?;
                }
                write!(f, "{label}")?;
            }
        } else {
            if i > 0 {
                write!(f, " + ")?;
            }
            if label.is_empty() {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})*{label}")?;
            }
        }
    }
    if empty {
        write!(f, "0")?;
    }
    Ok(())
}

/// Writes `|c| * hbar^h * alpha^a` (the sign is handled by the caller).
pub(crate) fn write_unsigned_term(
    f: &mut fmt::Formatter<'_>,
    c: &BigRational,
    h: u32,
    a: i32,
    trailing: bool,
) -> fmt::Result {
    let abs = c.abs();
    let mut factors: Vec<String> = Vec::new();
    if h == 1 {
        factors.push("hbar".into());
    } else if h > 1 {
        factors.push(format!("hbar^{h}"));
    }
    if a == 1 {
        factors.push("alpha".into());
    } else if a != 0 {
        factors.push(format!("alpha^{a}"));
    }
    let needs_coef = !abs.is_one() || (factors.is_empty() && !trailing);
    let mut first = true;
    if needs_coef {
        write_rational(f, &abs)?;
        first = false;
    }
    for fac in factors {
        if !first {
            write!(f, "*")?;
        }
        write!(f, "{fac}")?;
        first = false;
    }
    Ok(())
}

impl Scalar {
    /// Terms in display order: descending hbar power, then descending alpha power.
    pub(crate) fn display_terms(&self) -> impl Iterator<Item = (&Exponents, &BigRational)> {
        self.terms.iter().rev()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&(h, a), c)) in self.display_terms().enumerate() {
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write_unsigned_term(f, c, h, a, false)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_times_inverse_is_one() {
        let x = &Scalar::alpha() * &Scalar::alpha_pow(-1);
        assert!(x.is_one());
    }

    #[test]
    fn difference_of_squares() {
        let s = Scalar::alpha() + Scalar::alpha_pow(-1);
        let d = Scalar::alpha() - Scalar::alpha_pow(-1);
        assert_eq!(s.pow(2) - d.pow(2), Scalar::from_int(4));
    }

    #[test]
    fn hbar_times_zero() {
        assert!((&Scalar::hbar() * &Scalar::zero()).is_zero());
    }

    #[test]
    fn specialize_examples() {
        let x = Scalar::alpha_sum();
        assert_eq!(x.specialize(&rational(7, 3), &rational(2, 1)).unwrap(), rational(5, 2));
        assert_eq!(Scalar::hbar().specialize(&rational(1, 1), &rational(1, 1)).unwrap(), rational(1, 1));
        assert_eq!(
            Scalar::alpha().specialize(&rational(1, 1), &rational(0, 1)),
            Err(ScalarError::AlphaNotInvertible)
        );
    }

    #[test]
    fn mass_squared_examples() {
        assert_eq!(
            mass_squared(&Scalar::alpha()).unwrap(),
            Scalar::alpha() + Scalar::alpha_pow(-1) - Scalar::from_int(2)
        );
        assert!(mass_squared(&Scalar::one()).unwrap().is_zero());
        assert_eq!(mass_squared(&Scalar::from_int(4)).unwrap(), Scalar::from_ratio(9, 4));
        assert_eq!(mass_squared(&Scalar::zero()), Err(ScalarError::AlphaNotInvertible));
        assert!(mass_squared(&Scalar::hbar()).is_err());
    }

    #[test]
    fn inverse_of_non_unit_fails() {
        assert!(Scalar::alpha_sum().inverse().is_err());
        assert!(Scalar::hbar().inverse().is_err());
        assert_eq!(Scalar::from_ratio(2, 3).inverse().unwrap(), Scalar::from_ratio(3, 2));
    }

    #[test]
    fn rendering() {
        let x = Scalar::from_ratio(3, 2) * Scalar::hbar() * Scalar::alpha_pow(-1) + Scalar::alpha()
            - Scalar::from_int(2);
        assert_eq!(x.to_string(), "3/2*hbar*alpha^-1 + alpha - 2");
        assert_eq!((-Scalar::one()).to_string(), "-1");
    }
}
