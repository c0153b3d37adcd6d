//! Exact scalars in ℚ[u₀][ε, ε⁻¹].
//!
//! The Planck constant never appears on its own: it is always stored as
//! ε², so half-integer powers of ħ are ordinary odd powers of ε.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::ring::Ring;
use crate::Rational;

/// Sparse Laurent polynomial in ε with polynomial dependence on u₀.
///
/// Keys are `(power of ε, power of u₀)`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactScalar {
    terms: BTreeMap<(i32, u32), Rational>,
}

impl ExactScalar {
    pub fn monomial(c: Rational, eps_pow: i32, u0_pow: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((eps_pow, u0_pow), c);
        }
        ExactScalar { terms }
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn eps() -> Self {
        Self::eps_pow(1)
    }

    pub fn eps_pow(b: i32) -> Self {
        Self::monomial(Rational::one(), b, 0)
    }

    /// ħ = ε².
    pub fn hbar() -> Self {
        Self::eps_pow(2)
    }

    pub fn u0() -> Self {
        Self::monomial(Rational::one(), 0, 1)
    }

    /// Terms as `((eps power, u0 power), coefficient)`, sorted by (b, a).
    pub fn terms(&self) -> impl Iterator<Item = ((i32, u32), &Rational)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, eps_pow: i32, u0_pow: u32) -> Rational {
        self.terms
            .get(&(eps_pow, u0_pow))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, key: (i32, u32), c: &Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// The value as a rational, if it has no ε or u₀ dependence.
    pub fn to_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (&(b, a), c) = self.terms.iter().next().unwrap();
                (b == 0 && a == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn min_eps_power(&self) -> Option<i32> {
        self.terms.keys().map(|k| k.0).min()
    }

    pub fn max_u0_power(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.1).max()
    }

    pub fn has_odd_eps_power(&self) -> bool {
        self.terms.keys().any(|k| k.0 % 2 != 0)
    }

    pub fn depends_on_u0(&self) -> bool {
        self.terms.keys().any(|k| k.1 > 0)
    }

    pub fn depends_on_eps(&self) -> bool {
        self.terms.keys().any(|k| k.0 != 0)
    }

    /// The coefficient of ε^b, as an element of ℚ[u₀].
    pub fn eps_part(&self, b: i32) -> ExactScalar {
        let terms = self
            .terms
            .iter()
            .filter(|(k, _)| k.0 == b)
            .map(|(&(_, a), c)| ((0, a), c.clone()))
            .collect();
        ExactScalar { terms }
    }

    /// Multiply by ε^b.
    pub fn shift_eps(&self, b: i32) -> ExactScalar {
        let terms = self
            .terms
            .iter()
            .map(|(&(e, a), c)| ((e + b, a), c.clone()))
            .collect();
        ExactScalar { terms }
    }

    /// Substitute ε ↦ `value`.
    pub fn subs_eps(&self, value: &Rational) -> Result<ExactScalar> {
        let mut out = ExactScalar::zero();
        for (&(b, a), c) in &self.terms {
            let factor = rational_pow(value, b).ok_or(Error::DivisionByZero("eps"))?;
            out.add_term((0, a), &(c * factor));
        }
        Ok(out)
    }

    /// Substitute u₀ ↦ `value`.
    pub fn subs_u0(&self, value: &Rational) -> ExactScalar {
        let mut out = ExactScalar::zero();
        for (&(b, a), c) in &self.terms {
            let factor = rational_pow(value, a as i32).expect("non-negative power");
            out.add_term((b, 0), &(c * factor));
        }
        out
    }

    /// Substitute ε ↦ −ε.
    pub fn flip_eps(&self) -> ExactScalar {
        let terms = self
            .terms
            .iter()
            .map(|(&(b, a), c)| ((b, a), if b % 2 == 0 { c.clone() } else { -c }))
            .collect();
        ExactScalar { terms }
    }

    pub fn eval(&self, eps: &Rational, u0: &Rational) -> Result<Rational> {
        let s = self.subs_u0(u0).subs_eps(eps)?;
        Ok(s.to_rational().expect("fully substituted"))
    }

    /// JSON form: an array of `[b, a, num, den]` quadruples.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(&(b, a), c)| {
                    Value::Array(vec![
                        Value::from(b),
                        Value::from(a),
                        bigint_json(c.numer()),
                        bigint_json(c.denom()),
                    ])
                })
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<ExactScalar> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Parse("scalar must be an array".into()))?;
        let mut out = ExactScalar::zero();
        for t in arr {
            let q = t
                .as_array()
                .filter(|q| q.len() == 4)
                .ok_or_else(|| Error::Parse("scalar term must be [b, a, num, den]".into()))?;
            let b = q[0]
                .as_i64()
                .ok_or_else(|| Error::Parse("eps power".into()))? as i32;
            let a = q[1]
                .as_u64()
                .ok_or_else(|| Error::Parse("u0 power".into()))? as u32;
            let num = bigint_from_json(&q[2])?;
            let den = bigint_from_json(&q[3])?;
            if den.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            out.add_term((b, a), &Rational::new(num, den));
        }
        Ok(out)
    }
}

fn bigint_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(n.to_string()),
    }
}

fn bigint_from_json(v: &Value) -> Result<BigInt> {
    if let Some(i) = v.as_i64() {
        return Ok(BigInt::from(i));
    }
    v.as_str()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::Parse(format!("not an integer: {v}")))
}

/// `value^e` for any integer `e`; `None` for 0 raised to a negative power.
pub fn rational_pow(value: &Rational, e: i32) -> Option<Rational> {
    if e >= 0 {
        Some(Ring::pow(value, e as u32))
    } else if value.is_zero() {
        None
    } else {
        Some(Ring::pow(&value.recip(), (-e) as u32))
    }
}

impl Zero for ExactScalar {
    fn zero() -> Self {
        ExactScalar::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for ExactScalar {
    fn one() -> Self {
        ExactScalar::constant(Rational::one())
    }
}

impl<'a> AddAssign<&'a ExactScalar> for ExactScalar {
    fn add_assign(&mut self, rhs: &'a ExactScalar) {
        for (k, c) in &rhs.terms {
            self.add_term(*k, c);
        }
    }
}

impl<'a> SubAssign<&'a ExactScalar> for ExactScalar {
    fn sub_assign(&mut self, rhs: &'a ExactScalar) {
        for (k, c) in &rhs.terms {
            self.add_term(*k, &-c);
        }
    }
}

impl Add for ExactScalar {
    type Output = ExactScalar;
    fn add(mut self, rhs: ExactScalar) -> ExactScalar {
        self += &rhs;
        self
    }
}

impl Sub for ExactScalar {
    type Output = ExactScalar;
    fn sub(mut self, rhs: ExactScalar) -> ExactScalar {
        self -= &rhs;
        self
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(mut self) -> ExactScalar {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl<'a> Mul<&'a ExactScalar> for ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &'a ExactScalar) -> ExactScalar {
        if self.is_zero() || rhs.is_zero() {
            return ExactScalar::zero();
        }
        // Scalar fast path keeps constant factors cheap.
        if let Some(r) = rhs.to_rational() {
            let terms = self.terms.into_iter().map(|(k, c)| (k, c * &r)).collect();
            return ExactScalar { terms };
        }
        let mut out = ExactScalar::zero();
        for (&(b1, a1), c1) in &self.terms {
            for (&(b2, a2), c2) in &rhs.terms {
                out.add_term((b1 + b2, a1 + a2), &(c1 * c2));
            }
        }
        out
    }
}

impl Mul for ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: ExactScalar) -> ExactScalar {
        self * &rhs
    }
}

impl From<Rational> for ExactScalar {
    fn from(c: Rational) -> Self {
        ExactScalar::constant(c)
    }
}

impl Ring for ExactScalar {
    fn from_rational(r: &Rational) -> Self {
        ExactScalar::constant(r.clone())
    }

    fn try_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (&(b, a), c) = self.terms.iter().next().unwrap();
        (a == 0).then(|| ExactScalar::monomial(c.recip(), -b, 0))
    }

    fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return ExactScalar::zero();
        }
        let terms = self.terms.iter().map(|(k, c)| (*k, c * r)).collect();
        ExactScalar { terms }
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&(b, a), c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            let mut factors = Vec::new();
            if !abs.is_one() || (a == 0 && b == 0) {
                factors.push(abs.to_string());
            }
            match a {
                0 => {}
                1 => factors.push("u0".to_string()),
                _ => factors.push(format!("u0^{a}")),
            }
            match b {
                0 => {}
                1 => factors.push("eps".to_string()),
                _ => factors.push(format!("eps^{b}")),
            }
            write!(f, "{}", factors.join(" * "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactScalar({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::ratio;

    #[test]
    fn renders_canonically() {
        let x =
            ExactScalar::u0().pow(2).scale(&ratio(1, 2)) - ExactScalar::hbar().scale(&ratio(1, 24));
        assert_eq!(x.to_string(), "1/2 * u0^2 - 1/24 * eps^2");
        assert_eq!(ExactScalar::u0().to_string(), "u0");
        assert_eq!(ExactScalar::eps_pow(-1).to_string(), "eps^-1");
        assert_eq!(ExactScalar::zero().to_string(), "0");
        assert_eq!(ExactScalar::constant(ratio(-3, 4)).to_string(), "-3/4");
    }

    #[test]
    fn json_roundtrip() {
        let x = ExactScalar::monomial(ratio(-7, 5760), 4, 0) + ExactScalar::u0();
        let v = x.to_json();
        assert_eq!(v.to_string(), "[[0,1,1,1],[4,0,-7,5760]]");
        assert_eq!(ExactScalar::from_json(&v).unwrap(), x);
    }

    #[test]
    fn laurent_inverse() {
        let x = ExactScalar::monomial(ratio(2, 3), -3, 0);
        assert_eq!(x.clone() * &x.try_inverse().unwrap(), ExactScalar::one());
        assert!(ExactScalar::u0().try_inverse().is_none());
        assert!((ExactScalar::one() + ExactScalar::eps())
            .try_inverse()
            .is_none());
    }

    #[test]
    fn substitution_refuses_zero_for_negative_powers() {
        let x = ExactScalar::eps_pow(-1);
        assert_eq!(
            x.subs_eps(&Rational::zero()),
            Err(Error::DivisionByZero("eps"))
        );
        assert_eq!(
            x.subs_eps(&ratio(1, 2)).unwrap(),
            ExactScalar::constant(ratio(2, 1))
        );
    }
}
