//! Laurent polynomials in v₀, v₁, … with integer exponents.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use crate::ring::Ring;
use crate::Rational;

/// Exponent vectors are stored without trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Exponents(Vec<i64>);

impl Exponents {
    pub fn new(mut e: Vec<i64>) -> Self {
        while e.last() == Some(&0) {
            e.pop();
        }
        Exponents(e)
    }

    pub fn get(&self, k: usize) -> i64 {
        self.0.get(k).copied().unwrap_or(0)
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    fn add(&self, other: &Exponents) -> Exponents {
        let n = self.0.len().max(other.0.len());
        Exponents::new((0..n).map(|k| self.get(k) + other.get(k)).collect())
    }

    fn negate(&self) -> Exponents {
        Exponents(self.0.iter().map(|e| -e).collect())
    }
}

impl fmt::Debug for Exponents {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[derive(Clone, PartialEq)]
pub struct LaurentPoly<C> {
    terms: BTreeMap<Exponents, C>,
}

impl<C: Ring> LaurentPoly<C> {
    pub fn constant(c: C) -> Self {
        Self::monomial(Exponents::default(), c)
    }

    pub fn monomial(e: Exponents, c: C) -> Self {
        let mut out = Self::zero();
        out.add_term(e, c);
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &Exponents) -> C {
        self.terms.get(e).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, e: Exponents, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> LaurentPoly<D> {
        let mut out = LaurentPoly::zero();
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }
}

impl<C: Ring> Zero for LaurentPoly<C> {
    fn zero() -> Self {
        LaurentPoly {
            terms: BTreeMap::new(),
        }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Ring> One for LaurentPoly<C> {
    fn one() -> Self {
        Self::constant(C::one())
    }
}

impl<'a, C: Ring> AddAssign<&'a LaurentPoly<C>> for LaurentPoly<C> {
    fn add_assign(&mut self, rhs: &'a LaurentPoly<C>) {
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), c.clone());
        }
    }
}

impl<'a, C: Ring> SubAssign<&'a LaurentPoly<C>> for LaurentPoly<C> {
    fn sub_assign(&mut self, rhs: &'a LaurentPoly<C>) {
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), -c.clone());
        }
    }
}

impl<C: Ring> Add for LaurentPoly<C> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += &rhs;
        self
    }
}

impl<C: Ring> Sub for LaurentPoly<C> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self -= &rhs;
        self
    }
}

impl<C: Ring> Neg for LaurentPoly<C> {
    type Output = Self;
    fn neg(self) -> Self {
        self.map_coeffs(|c| -c.clone())
    }
}

impl<'a, C: Ring> Mul<&'a LaurentPoly<C>> for LaurentPoly<C> {
    type Output = Self;
    fn mul(self, rhs: &'a LaurentPoly<C>) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            for (f, d) in &rhs.terms {
                out.add_term(e.add(f), c.clone() * d);
            }
        }
        out
    }
}

impl<C: Ring> Mul for LaurentPoly<C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self * &rhs
    }
}

impl<C: Ring> Ring for LaurentPoly<C> {
    fn from_rational(r: &Rational) -> Self {
        Self::constant(C::from_rational(r))
    }

    /// Units are the single-term elements with an invertible coefficient.
    fn try_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next().unwrap();
        c.try_inverse().map(|inv| Self::monomial(e.negate(), inv))
    }
}

impl<C: Ring + fmt::Display> fmt::Display for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let vars: Vec<String> = e
                .as_slice()
                .iter()
                .enumerate()
                .filter(|(_, &p)| p != 0)
                .map(|(k, &p)| {
                    if p == 1 {
                        format!("v{k}")
                    } else {
                        format!("v{k}^{p}")
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{c}")?;
            } else {
                write!(f, "({c})*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<C: fmt::Debug> fmt::Debug for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{rat, ratio};

    fn lp(e: &[i64], c: Rational) -> LaurentPoly<Rational> {
        LaurentPoly::monomial(Exponents::new(e.to_vec()), c)
    }

    #[test]
    fn monomial_inverse() {
        let a = lp(&[-1, 3], ratio(2, 5));
        let inv = a.try_inverse().unwrap();
        assert_eq!(a * &inv, LaurentPoly::one());
        let b = lp(&[1], rat(1)) + lp(&[], rat(1));
        assert!(b.try_inverse().is_none());
    }

    #[test]
    fn trailing_zeros_normalised() {
        assert_eq!(Exponents::new(vec![1, 0, 0]), Exponents::new(vec![1]));
        let x = lp(&[1, 1], rat(1)) * &lp(&[0, -1], rat(1));
        assert_eq!(x, lp(&[1], rat(1)));
    }

    #[test]
    fn cancellation() {
        let a = lp(&[2], rat(3));
        assert!((a.clone() - a).is_zero());
    }
}
