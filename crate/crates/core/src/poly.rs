//! Sparse multivariate polynomials over a coefficient ring.
//!
//! Variables are indexed by non-negative integers. For the Fock space the
//! index `k ≥ 1` names q_k (or p_k) and carries weight k.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::ring::Ring;
use crate::Rational;

/// A monomial ∏ x_k^{m_k}, stored as sorted `(k, m_k)` pairs with m_k > 0.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(u32, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(k: u32) -> Self {
        Monomial(vec![(k, 1)])
    }

    pub fn var_pow(k: u32, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(k, e)])
        }
    }

    /// Build from arbitrary `(index, multiplicity)` pairs, merging repeats.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut map = BTreeMap::new();
        for (k, m) in pairs {
            *map.entry(k).or_insert(0) += m;
        }
        Monomial(map.into_iter().filter(|&(_, m)| m > 0).collect())
    }

    /// q_{λ_1} q_{λ_2} ⋯
    pub fn from_partition(lambda: &Partition) -> Self {
        Self::from_pairs(lambda.parts().iter().map(|&p| (p, 1)))
    }

    /// The partition whose parts are the variable indices (with multiplicity).
    pub fn to_partition(&self) -> Partition {
        let mut parts: Vec<u32> = self
            .0
            .iter()
            .rev()
            .flat_map(|&(k, m)| std::iter::repeat_n(k, m as usize))
            .collect();
        parts.retain(|&k| k > 0);
        Partition::new(parts).expect("indices form a partition")
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Σ k·m_k
    pub fn weight(&self) -> u64 {
        self.0.iter().map(|&(k, m)| k as u64 * m as u64).sum()
    }

    /// Σ m_k
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, m)| m).sum()
    }

    pub fn exponent(&self, k: u32) -> u32 {
        self.0
            .binary_search_by_key(&k, |&(i, _)| i)
            .map(|pos| self.0[pos].1)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::from_pairs(self.0.iter().chain(other.0.iter()).copied())
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &(k, m) in &self.0 {
            let mut mm = m;
            if j < other.0.len() && other.0[j].0 == k {
                if other.0[j].1 > m {
                    return None;
                }
                mm -= other.0[j].1;
                j += 1;
            } else if j < other.0.len() && other.0[j].0 < k {
                return None;
            }
            if mm > 0 {
                out.push((k, mm));
            }
        }
        (j == other.0.len()).then_some(Monomial(out))
    }

    /// ∏ m_k!
    pub fn factorial_product(&self) -> num_bigint::BigInt {
        self.0
            .iter()
            .map(|&(_, m)| crate::ring::factorial(m))
            .product()
    }

    pub fn render(&self, var: &str) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        self.0
            .iter()
            .map(|&(k, m)| {
                if m == 1 {
                    format!("{var}{k}")
                } else {
                    format!("{var}{k}^{m}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("x"))
    }
}

/// Sparse polynomial `Σ c_m · m` with no zero coefficients stored.
#[derive(Clone, PartialEq)]
pub struct Polynomial<C> {
    terms: BTreeMap<Monomial, C>,
}

impl<C: Ring> Default for Polynomial<C> {
    fn default() -> Self {
        Polynomial {
            terms: BTreeMap::new(),
        }
    }
}

impl<C: Ring> Polynomial<C> {
    pub fn constant(c: C) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn var(k: u32) -> Self {
        Self::term(Monomial::var(k), C::one())
    }

    pub fn term(m: Monomial, c: C) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&Monomial::one())
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += &c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    pub fn try_map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> Result<D>) -> Result<Polynomial<D>> {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c)?);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        self.map_coeffs(|a| a.clone() * c)
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.map_coeffs(|a| a.scale(r))
    }

    /// ∂/∂x_k
    pub fn derivative(&self, k: u32) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(k);
            if e > 0 {
                let reduced = m.div(&Monomial::var(k)).unwrap();
                out.add_term(reduced, c.clone() * &C::from_i64(e as i64));
            }
        }
        out
    }

    /// Apply ∏_k ∂_k^{β_k} with β given as a monomial.
    pub fn derivative_multi(&self, beta: &Monomial) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if let Some(reduced) = m.div(beta) {
                let mut factor = num_bigint::BigInt::one();
                for &(k, b) in beta.pairs() {
                    let e = m.exponent(k);
                    for i in 0..b {
                        factor *= e - i;
                    }
                }
                out.add_term(reduced, c.scale(&Rational::from_integer(factor)));
            }
        }
        out
    }

    /// Multiply by the monomial `m`.
    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        if m.is_one() {
            return self.clone();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(n, c)| (n.mul(m), c.clone()))
                .collect(),
        }
    }

    /// Substitute x_k ↦ f(k)·x_k in every variable.
    pub fn scale_vars(&self, f: impl Fn(u32) -> C) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            for &(k, e) in m.pairs() {
                coeff = coeff * &f(k).pow(e);
            }
            out.add_term(m.clone(), coeff);
        }
        out
    }

    pub fn mul_ref(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1.clone() * c2);
            }
        }
        out
    }

    /// Product keeping only terms of weight ≤ `max_weight`.
    pub fn mul_truncated(&self, rhs: &Self, max_weight: u64) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            let w1 = m1.weight();
            if w1 > max_weight {
                continue;
            }
            for (m2, c2) in &rhs.terms {
                if w1 + m2.weight() <= max_weight {
                    out.add_term(m1.mul(m2), c1.clone() * c2);
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul_ref(self);
        }
        acc
    }

    pub fn truncate_weight(&self, max_weight: u64) -> Self {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.weight() <= max_weight)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn weight_part(&self, w: u64) -> Self {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.weight() == w)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn max_weight(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::weight).max()
    }

    pub fn is_homogeneous(&self, w: u64) -> bool {
        self.terms.keys().all(|m| m.weight() == w)
    }

    pub fn render(&self, var: &str) -> String
    where
        C: fmt::Display,
    {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(m, c)| format!("({c})*{}", m.render(var)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl<C: Ring> Zero for Polynomial<C> {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Ring> One for Polynomial<C> {
    fn one() -> Self {
        Self::constant(C::one())
    }
}

impl<'a, C: Ring> AddAssign<&'a Polynomial<C>> for Polynomial<C> {
    fn add_assign(&mut self, rhs: &'a Polynomial<C>) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl<'a, C: Ring> SubAssign<&'a Polynomial<C>> for Polynomial<C> {
    fn sub_assign(&mut self, rhs: &'a Polynomial<C>) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl<C: Ring> Add for Polynomial<C> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += &rhs;
        self
    }
}

impl<C: Ring> Sub for Polynomial<C> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self -= &rhs;
        self
    }
}

impl<C: Ring> Neg for Polynomial<C> {
    type Output = Self;
    fn neg(self) -> Self {
        self.map_coeffs(|c| -c.clone())
    }
}

impl<'a, C: Ring> Mul<&'a Polynomial<C>> for Polynomial<C> {
    type Output = Self;
    fn mul(self, rhs: &'a Polynomial<C>) -> Self {
        self.mul_ref(rhs)
    }
}

impl<C: Ring> Mul for Polynomial<C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl<C: Ring> Ring for Polynomial<C> {
    fn from_rational(r: &Rational) -> Self {
        Self::constant(C::from_rational(r))
    }

    fn try_inverse(&self) -> Option<Self> {
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_one() {
                return c.try_inverse().map(Self::constant);
            }
        }
        None
    }
}

impl<C: Ring> fmt::Debug for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

/// Parse `[[k, mult], ...]` into a monomial.
pub fn monomial_from_json(v: &serde_json::Value) -> Result<Monomial> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse("multi-index must be an array".into()))?;
    let mut pairs = Vec::with_capacity(arr.len());
    for p in arr {
        let pair = p
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| Error::Parse("multi-index entry must be [k, mult]".into()))?;
        let k = pair[0]
            .as_u64()
            .ok_or_else(|| Error::Parse("index".into()))? as u32;
        let m = pair[1]
            .as_u64()
            .ok_or_else(|| Error::Parse("mult".into()))? as u32;
        pairs.push((k, m));
    }
    Ok(Monomial::from_pairs(pairs))
}

pub fn monomial_to_json(m: &Monomial) -> serde_json::Value {
    serde_json::Value::Array(
        m.pairs()
            .iter()
            .map(|&(k, e)| serde_json::json!([k, e]))
            .collect(),
    )
}

/// All monomials in x_1, x_2, … of weight exactly `w`.
pub fn monomials_of_weight(w: usize) -> Vec<Monomial> {
    crate::partition::partitions_of(w)
        .iter()
        .map(Monomial::from_partition)
        .collect()
}
