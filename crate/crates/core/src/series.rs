//! Truncated univariate power series and the universal series s(t), 1/s(t).

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ring::{binomial, factorial, rat, Ring};
use crate::Rational;

/// Power series `Σ_{n ≤ order} a_n t^n`; everything above `order` is unknown.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<C> {
    coeffs: Vec<C>,
}

impl<C: Ring> Series<C> {
    pub fn new(mut coeffs: Vec<C>, order: usize) -> Self {
        coeffs.resize(order + 1, C::zero());
        Series { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![C::one()], order)
    }

    /// `c·t^n` truncated at `order`.
    pub fn monomial(c: C, n: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if n <= order {
            s.coeffs[n] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> C {
        self.coeffs.get(n).cloned().unwrap_or_else(C::zero)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs.iter().take(order + 1).cloned().collect(), order)
    }

    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> Series<D> {
        Series {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map(|a| a.clone() * c)
    }

    /// Substitute t ↦ c·t.
    pub fn rescale(&self, c: &C) -> Self {
        let mut power = C::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            coeffs.push(a.clone() * &power);
            power = power * c;
        }
        Series { coeffs }
    }

    /// Multiply by t^k, keeping the order.
    pub fn shift(&self, k: usize) -> Self {
        let order = self.order();
        let mut coeffs = vec![C::zero(); k.min(order + 1)];
        coeffs.extend(
            self.coeffs
                .iter()
                .take((order + 1).saturating_sub(k))
                .cloned(),
        );
        Self::new(coeffs, order)
    }

    pub fn mul_ref(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        let mut coeffs = vec![C::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j] += &(a.clone() * b);
                }
            }
        }
        Series { coeffs }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..e {
            acc = acc.mul_ref(self);
        }
        acc
    }

    /// Multiplicative inverse; needs a unit constant term.
    pub fn inverse(&self) -> Result<Self> {
        let inv0 = self.coeffs[0]
            .try_inverse()
            .ok_or_else(|| Error::NotInvertible(format!("{:?}", self.coeffs[0])))?;
        let order = self.order();
        let mut out: Vec<C> = Vec::with_capacity(order + 1);
        out.push(inv0.clone());
        for n in 1..=order {
            let mut acc = C::zero();
            for k in 1..=n {
                acc += &(self.coeffs[k].clone() * &out[n - k]);
            }
            out.push(-(acc * &inv0));
        }
        Ok(Series { coeffs: out })
    }

    /// exp of a series without constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::InvalidArgument(
                "exp needs a series with zero constant term".into(),
            ));
        }
        // n·e_n = Σ_{k=1}^n k·a_k·e_{n−k}
        let order = self.order();
        let mut out: Vec<C> = Vec::with_capacity(order + 1);
        out.push(C::one());
        for n in 1..=order {
            let mut acc = C::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &(self.coeffs[k].scale(&rat(k as i64)) * &out[n - k]);
                }
            }
            out.push(acc.scale(&Rational::new(BigInt::one(), BigInt::from(n))));
        }
        Ok(Series { coeffs: out })
    }

    /// log of a series with constant term one.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one_like() {
            return Err(Error::InvalidArgument(
                "log needs a series with constant term 1".into(),
            ));
        }
        let order = self.order();
        let x = {
            let mut c = self.coeffs.clone();
            c[0] = C::zero();
            Series { coeffs: c }
        };
        let mut out = Self::zero(order);
        let mut power = Self::one(order);
        for m in 1..=order {
            power = power.mul_ref(&x);
            let sign = if m % 2 == 1 { 1 } else { -1 };
            out = out + power.map(|a| a.scale(&Rational::new(BigInt::from(sign), BigInt::from(m))));
        }
        Ok(out)
    }
}

trait OneLike {
    fn is_one_like(&self) -> bool;
}

impl<C: Ring> OneLike for C {
    fn is_one_like(&self) -> bool {
        *self == C::one()
    }
}

impl<C: Ring> Add for Series<C> {
    type Output = Series<C>;
    fn add(self, rhs: Series<C>) -> Series<C> {
        let order = self.order().min(rhs.order());
        let mut coeffs: Vec<C> = self.coeffs.into_iter().take(order + 1).collect();
        for (a, b) in coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *a += b;
        }
        Series { coeffs }
    }
}

impl<C: Ring> Sub for Series<C> {
    type Output = Series<C>;
    fn sub(self, rhs: Series<C>) -> Series<C> {
        self + (-rhs)
    }
}

impl<C: Ring> Neg for Series<C> {
    type Output = Series<C>;
    fn neg(self) -> Series<C> {
        Series {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl<C: Ring> Mul for Series<C> {
    type Output = Series<C>;
    fn mul(self, rhs: Series<C>) -> Series<C> {
        self.mul_ref(&rhs)
    }
}

/// Bernoulli numbers with B₁ = −1/2, from Σ_{j≤n} C(n+1, j) B_j = 0.
pub fn bernoulli_table(n: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
    b.push(Rational::one());
    for m in 1..=n {
        let mut acc = Rational::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += Rational::from_integer(binomial(m as u32 + 1, j as u32)) * bj;
        }
        b.push(-acc / Rational::from_integer(BigInt::from(m + 1)));
    }
    b
}

pub fn bernoulli(n: usize) -> Rational {
    bernoulli_table(n).pop().unwrap()
}

/// s(t) = sinh(t/2)/(t/2) = Σ t^{2n} / (2^{2n} (2n+1)!).
pub fn s_series(order: usize) -> Series<Rational> {
    let coeffs = (0..=order)
        .map(|n| {
            if n % 2 == 1 {
                Rational::zero()
            } else {
                let den = (BigInt::one() << n) * factorial(n as u32 + 1);
                Rational::new(BigInt::one(), den)
            }
        })
        .collect();
    Series::new(coeffs, order)
}

/// 1/s(t) = Σ (2^{1−n} − 1) B_n t^n / n!.
pub fn inv_s_series(order: usize) -> Series<Rational> {
    let b = bernoulli_table(order);
    let coeffs = b
        .iter()
        .enumerate()
        .map(|(n, bn)| {
            let two_pow = if n == 0 {
                rat(2)
            } else {
                Rational::new(BigInt::one(), BigInt::one() << (n - 1))
            };
            (two_pow - rat(1)) * bn / Rational::from_integer(factorial(n as u32))
        })
        .collect();
    Series::new(coeffs, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::ratio;

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(0), rat(1));
        assert_eq!(bernoulli(1), ratio(-1, 2));
        assert_eq!(bernoulli(2), ratio(1, 6));
        assert_eq!(bernoulli(4), ratio(-1, 30));
        assert_eq!(bernoulli(3), rat(0));
        assert_eq!(bernoulli(12), ratio(-691, 2730));
    }

    #[test]
    fn s_coefficients() {
        let s = s_series(6);
        assert_eq!(s.coeff(0), rat(1));
        assert_eq!(s.coeff(2), ratio(1, 24));
        assert_eq!(s.coeff(3), rat(0));
        assert_eq!(s.coeff(4), ratio(1, 1920));
    }

    #[test]
    fn inv_s_coefficients() {
        let inv = inv_s_series(6);
        assert_eq!(inv.coeff(0), rat(1));
        assert_eq!(inv.coeff(2), ratio(-1, 24));
        assert_eq!(inv.coeff(4), ratio(7, 5760));
    }

    #[test]
    fn inverse_agrees_with_bernoulli_formula() {
        for n in 0..=20 {
            let s = s_series(n);
            assert_eq!(s.inverse().unwrap(), inv_s_series(n));
            assert_eq!(s.mul_ref(&inv_s_series(n)), Series::one(n));
        }
    }

    #[test]
    fn exp_log_roundtrip() {
        let x = Series::new(vec![rat(0), ratio(1, 3), rat(-2), ratio(5, 7)], 6);
        let e = x.exp().unwrap();
        assert_eq!(e.log().unwrap(), x);
        // exp(t) coefficients
        let t = Series::monomial(rat(1), 1, 5).exp().unwrap();
        assert_eq!(t.coeff(5), ratio(1, 120));
    }

    #[test]
    fn shift_and_rescale() {
        let x = Series::new(vec![rat(1), rat(2), rat(3)], 2);
        assert_eq!(x.shift(1).coeffs(), &[rat(0), rat(1), rat(2)]);
        assert_eq!(x.rescale(&rat(2)).coeffs(), &[rat(1), rat(4), rat(12)]);
        assert!(Series::new(vec![rat(1)], 2).exp().is_err());
    }
}
