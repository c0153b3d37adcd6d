//! Normally ordered operators on the bosonic Fock space ℚ[q₁, q₂, …].
//!
//! A term `(α, β) ↦ c` stands for `c · q^α · ∏_k p̂_k^{β_k}` with
//! `p̂_k = ħ k ∂/∂q_k`. The value of ħ lives on the operator so the same
//! machinery serves symbolic ħ = ε² and the fermionic checks at ħ = 1.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::partition::{partitions_of, partitions_up_to};
use crate::poly::{monomial_from_json, monomial_to_json, Monomial, Polynomial};
use crate::ring::{binomial, factorial, Ring};
use crate::scalar::ExactScalar;
use crate::schur::{expand_in_scaled_schur, scaled_schur, schur_coefficient_matrix};
use crate::Rational;

/// Index of a normally ordered term: creation part α, annihilation part β.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct OpKey {
    pub alpha: Monomial,
    pub beta: Monomial,
}

impl OpKey {
    pub fn new(alpha: Monomial, beta: Monomial) -> Self {
        OpKey { alpha, beta }
    }

    pub fn identity() -> Self {
        OpKey::new(Monomial::one(), Monomial::one())
    }

    pub fn is_weight_preserving(&self) -> bool {
        self.alpha.weight() == self.beta.weight()
    }

    pub fn swapped(&self) -> OpKey {
        OpKey::new(self.beta.clone(), self.alpha.clone())
    }

    pub fn render(&self) -> String {
        match (self.alpha.is_one(), self.beta.is_one()) {
            (true, true) => "Id".to_string(),
            (false, true) => self.alpha.render("q"),
            (true, false) => self.beta.render("p"),
            (false, false) => format!("{}*{}", self.alpha.render("q"), self.beta.render("p")),
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct Operator<C> {
    terms: BTreeMap<OpKey, C>,
    hbar: C,
}

impl<C: Ring> Operator<C> {
    pub fn zero(hbar: C) -> Self {
        Operator {
            terms: BTreeMap::new(),
            hbar,
        }
    }

    pub fn identity(hbar: C) -> Self {
        Self::scalar(hbar, C::one())
    }

    pub fn scalar(hbar: C, c: C) -> Self {
        let mut op = Self::zero(hbar);
        op.add_term(OpKey::identity(), c);
        op
    }

    pub fn q(hbar: C, k: u32) -> Self {
        let mut op = Self::zero(hbar);
        op.add_term(OpKey::new(Monomial::var(k), Monomial::one()), C::one());
        op
    }

    pub fn p(hbar: C, k: u32) -> Self {
        let mut op = Self::zero(hbar);
        op.add_term(OpKey::new(Monomial::one(), Monomial::var(k)), C::one());
        op
    }

    pub fn hbar(&self) -> &C {
        &self.hbar
    }

    pub fn terms(&self) -> impl Iterator<Item = (&OpKey, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &OpKey) -> C {
        self.terms.get(key).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, key: OpKey, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(existing) => {
                *existing += &c;
                if existing.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn from_terms(hbar: C, terms: impl IntoIterator<Item = (OpKey, C)>) -> Self {
        let mut op = Self::zero(hbar);
        for (k, c) in terms {
            op.add_term(k, c);
        }
        op
    }

    pub fn map_coeffs<D: Ring>(&self, hbar: D, f: impl Fn(&C) -> D) -> Operator<D> {
        Operator::from_terms(hbar, self.terms.iter().map(|(k, c)| (k.clone(), f(c))))
    }

    pub fn try_map_coeffs<D: Ring>(
        &self,
        hbar: D,
        f: impl Fn(&C) -> Result<D>,
    ) -> Result<Operator<D>> {
        let mut op = Operator::zero(hbar);
        for (k, c) in &self.terms {
            op.add_term(k.clone(), f(c)?);
        }
        Ok(op)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map_coeffs(self.hbar.clone(), |a| a.clone() * c)
    }

    /// Swap creation and annihilation parts of every term.
    pub fn transpose(&self) -> Self {
        Self::from_terms(
            self.hbar.clone(),
            self.terms.iter().map(|(k, c)| (k.swapped(), c.clone())),
        )
    }

    /// Keep terms whose creation weight is at most `max_weight`.
    pub fn truncate(&self, max_weight: u64) -> Self {
        Self::from_terms(
            self.hbar.clone(),
            self.terms
                .iter()
                .filter(|(k, _)| k.alpha.weight() <= max_weight)
                .map(|(k, c)| (k.clone(), c.clone())),
        )
    }

    pub fn check_weight_preserving(&self) -> Result<()> {
        match self.terms.keys().find(|k| !k.is_weight_preserving()) {
            Some(k) => Err(Error::NotWeightPreserving { term: k.render() }),
            None => Ok(()),
        }
    }

    pub fn is_weight_preserving(&self) -> bool {
        self.check_weight_preserving().is_ok()
    }

    /// Is coeff(α, β) = coeff(β, α) for every term?
    pub fn is_symmetric(&self) -> bool {
        self.terms
            .iter()
            .all(|(k, c)| self.terms.get(&k.swapped()) == Some(c))
    }

    /// Precompute ∏(ħk)^{β_k} factors and a β-index for repeated application.
    pub fn prepare(&self) -> PreparedOperator<C> {
        let mut by_beta: BTreeMap<Monomial, Vec<(Monomial, C)>> = BTreeMap::new();
        for (k, c) in &self.terms {
            let mut factor = c.clone();
            for &(idx, b) in k.beta.pairs() {
                let hk = self.hbar.clone() * &C::from_i64(idx as i64);
                factor = factor * &hk.pow(b);
            }
            by_beta
                .entry(k.beta.clone())
                .or_default()
                .push((k.alpha.clone(), factor));
        }
        PreparedOperator { by_beta }
    }

    pub fn apply(&self, f: &Polynomial<C>) -> Polynomial<C> {
        self.prepare().apply(f)
    }

    /// Normally ordered product `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.hbar.clone());
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                let base = c1.clone() * c2;
                for (alpha_drop, beta_drop, weight) in contractions(&k1.beta, &k2.alpha) {
                    let coeff = base.clone() * &weight.coefficient::<C>(&self.hbar);
                    if coeff.is_zero() {
                        continue;
                    }
                    let alpha = k1
                        .alpha
                        .mul(&k2.alpha.div(&alpha_drop).expect("contraction divides"));
                    let beta = k1
                        .beta
                        .div(&beta_drop)
                        .expect("contraction divides")
                        .mul(&k2.beta);
                    out.add_term(OpKey::new(alpha, beta), coeff);
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.compose(other).sub(&other.compose(self))
    }

    pub fn render(&self) -> String
    where
        C: fmt::Display,
    {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(k, c)| {
                let cs = c.to_string();
                let wrapped = if cs.contains(" + ") || cs.contains(" - ") {
                    format!("({cs})")
                } else {
                    cs
                };
                format!("{wrapped} * {}", k.render())
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Weight of one Wick contraction pattern: ∏_k j_k! C(a_k, j_k) C(b_k, j_k) k^{j_k} · ħ^{Σ j_k}.
struct ContractionWeight {
    integer: BigInt,
    hbar_power: u32,
}

impl ContractionWeight {
    fn coefficient<C: Ring>(&self, hbar: &C) -> C {
        hbar.pow(self.hbar_power)
            .scale(&Rational::from_integer(self.integer.clone()))
    }
}

/// All ways of contracting p̂^β (left) against q^α (right).
fn contractions(beta: &Monomial, alpha: &Monomial) -> Vec<(Monomial, Monomial, ContractionWeight)> {
    let common: Vec<(u32, u32, u32)> = beta
        .pairs()
        .iter()
        .filter_map(|&(k, b)| {
            let a = alpha.exponent(k);
            (a > 0).then_some((k, a, b))
        })
        .collect();
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(common.len());
    fn rec(
        common: &[(u32, u32, u32)],
        idx: usize,
        chosen: &mut Vec<(u32, u32)>,
        integer: BigInt,
        hbar_power: u32,
        out: &mut Vec<(Monomial, Monomial, ContractionWeight)>,
    ) {
        if idx == common.len() {
            let m = Monomial::from_pairs(chosen.iter().copied());
            out.push((
                m.clone(),
                m,
                ContractionWeight {
                    integer,
                    hbar_power,
                },
            ));
            return;
        }
        let (k, a, b) = common[idx];
        for j in 0..=a.min(b) {
            let w = factorial(j) * binomial(a, j) * binomial(b, j) * BigInt::from(k).pow(j);
            chosen.push((k, j));
            rec(common, idx + 1, chosen, &integer * w, hbar_power + j, out);
            chosen.pop();
        }
    }
    rec(&common, 0, &mut chosen, BigInt::one(), 0, &mut out);
    out
}

/// An operator indexed by annihilation part, with the ħk factors folded in.
pub struct PreparedOperator<C> {
    by_beta: BTreeMap<Monomial, Vec<(Monomial, C)>>,
}

impl<C: Ring> PreparedOperator<C> {
    pub fn apply(&self, f: &Polynomial<C>) -> Polynomial<C> {
        let mut out = Polynomial::zero();
        for (m, c) in f.terms() {
            for beta in divisors(m) {
                let Some(entries) = self.by_beta.get(&beta) else {
                    continue;
                };
                let rest = m.div(&beta).unwrap();
                let mut falling = BigInt::one();
                for &(k, b) in beta.pairs() {
                    let e = m.exponent(k);
                    for i in 0..b {
                        falling *= e - i;
                    }
                }
                let base = c.scale(&Rational::from_integer(falling));
                for (alpha, factor) in entries {
                    out.add_term(rest.mul(alpha), base.clone() * factor);
                }
            }
        }
        out
    }
}

/// Every monomial dividing `m` (including 1 and `m`).
pub fn divisors(m: &Monomial) -> Vec<Monomial> {
    let mut out = vec![Vec::new()];
    for &(k, e) in m.pairs() {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for prefix in &out {
            for j in 0..=e {
                let mut p: Vec<(u32, u32)> = prefix.clone();
                if j > 0 {
                    p.push((k, j));
                }
                next.push(p);
            }
        }
        out = next;
    }
    out.into_iter().map(Monomial::from_pairs).collect()
}

/// Pairs of monomials (α, β) with equal weight ≤ `max_weight` and
/// `deg α + deg β ≤ max_degree`.
pub fn balanced_pairs(max_weight: usize, max_degree: u32) -> Vec<OpKey> {
    let monos: Vec<Monomial> = partitions_up_to(max_weight)
        .iter()
        .map(Monomial::from_partition)
        .collect();
    let mut out = Vec::new();
    for a in &monos {
        for b in &monos {
            if a.weight() == b.weight() && a.degree() + b.degree() <= max_degree {
                out.push(OpKey::new(a.clone(), b.clone()));
            }
        }
    }
    out
}

/// The normally ordered classical Hamiltonian (1/2π)∫ :u^{n+2}/(n+2)!: dx.
///
/// Term (α, β) with m = n + 2 − |α| − |β| ≥ 0 carries u₀^m / (m! ∏ α_k! β_k!).
pub fn naive_hamiltonian(n: i32, max_weight: usize) -> Result<Operator<ExactScalar>> {
    if n < -1 {
        return Err(Error::InvalidArgument(format!(
            "Hamiltonian index must be ≥ -1, got {n}"
        )));
    }
    let total = (n + 2) as u32;
    let mut op = Operator::zero(ExactScalar::hbar());
    for key in balanced_pairs(max_weight, total) {
        let m = total - key.alpha.degree() - key.beta.degree();
        let den = factorial(m) * key.alpha.factorial_product() * key.beta.factorial_product();
        let c = ExactScalar::monomial(Rational::new(BigInt::one(), den), 0, m);
        op.add_term(key, c);
    }
    Ok(op)
}

/// Ordered basis of the weight-n piece used by [`matrix_on_weight`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    Monomial,
    /// s_λ(q/ε), λ ⊢ n.
    Schur,
}

/// Matrix of a weight-preserving operator restricted to the weight-`n` piece.
///
/// Column j holds the image of the j-th basis vector; bases are ordered by
/// `partitions_of(n)`.
pub fn matrix_on_weight(
    op: &Operator<ExactScalar>,
    n: usize,
    basis: Basis,
) -> Result<Matrix<ExactScalar>> {
    op.check_weight_preserving()?;
    let parts = partitions_of(n);
    let prepared = op.prepare();
    let columns: Vec<Vec<ExactScalar>> = match basis {
        Basis::Monomial => parts
            .iter()
            .map(|lambda| {
                let image = prepared.apply(&Polynomial::term(
                    Monomial::from_partition(lambda),
                    ExactScalar::one(),
                ));
                parts
                    .iter()
                    .map(|mu| image.coeff(&Monomial::from_partition(mu)))
                    .collect()
            })
            .collect(),
        Basis::Schur => {
            let inv = crate::linalg::inverse(&schur_coefficient_matrix(n))?;
            parts
                .iter()
                .map(|lambda| {
                    expand_in_scaled_schur(&prepared.apply(&scaled_schur(lambda)), n, &inv)
                })
                .collect::<Result<_>>()?
        }
    };
    let dim = parts.len();
    Ok((0..dim)
        .map(|i| (0..dim).map(|j| columns[j][i].clone()).collect())
        .collect())
}

/// The degree operator Σ_k q̂_k p̂_k truncated at `max_weight`.
pub fn degree_operator(max_weight: usize) -> Operator<ExactScalar> {
    let mut op = Operator::zero(ExactScalar::hbar());
    for k in 1..=max_weight as u32 {
        op.add_term(
            OpKey::new(Monomial::var(k), Monomial::var(k)),
            ExactScalar::one(),
        );
    }
    op
}

impl Operator<ExactScalar> {
    /// JSON dump: `[{alpha: [[k, mult]..], beta: [[k, mult]..], coeff: scalar}]`.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(k, c)| {
                    json!({
                        "alpha": monomial_to_json(&k.alpha),
                        "beta": monomial_to_json(&k.beta),
                        "coeff": c.to_json(),
                    })
                })
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Parse("operator must be an array of terms".into()))?;
        let mut op = Operator::zero(ExactScalar::hbar());
        for t in arr {
            let field = |name: &str| {
                t.get(name)
                    .ok_or_else(|| Error::Parse(format!("operator term missing {name}")))
            };
            let alpha = monomial_from_json(field("alpha")?)?;
            let beta = monomial_from_json(field("beta")?)?;
            let c = ExactScalar::from_json(field("coeff")?)?;
            op.add_term(OpKey::new(alpha, beta), c);
        }
        Ok(op)
    }

    /// Substitute u₀ ↦ value in every coefficient.
    pub fn subs_u0(&self, value: &Rational) -> Self {
        self.map_coeffs(ExactScalar::hbar(), |c| c.subs_u0(value))
    }

    /// The ε⁰ part of every coefficient (the classical symbol).
    pub fn semiclassical_part(&self) -> Self {
        self.map_coeffs(ExactScalar::hbar(), |c| c.eps_part(0))
    }

    /// Specialise ε to a rational; ħ becomes ε² as a rational.
    pub fn at_eps(&self, eps: &Rational) -> Result<Operator<ExactScalar>> {
        let hbar = ExactScalar::constant(eps * eps);
        self.try_map_coeffs(hbar, |c| c.subs_eps(eps))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{rat, ratio};

    fn h() -> ExactScalar {
        ExactScalar::hbar()
    }

    type Op = Operator<ExactScalar>;
    type Poly = Polynomial<ExactScalar>;

    fn mono(pairs: &[(u32, u32)]) -> Monomial {
        Monomial::from_pairs(pairs.iter().copied())
    }

    #[test]
    fn apply_examples() {
        let q1 = Poly::var(1);
        assert_eq!(Op::p(h(), 1).apply(&q1), Poly::constant(h()));
        assert_eq!(Op::q(h(), 2).apply(&Poly::one()), Poly::var(2));
        let f = Poly::term(mono(&[(1, 1), (2, 1)]), ExactScalar::one());
        let d = degree_operator(4);
        assert_eq!(d.apply(&f), f.scale(&h().scale(&rat(3))));
    }

    #[test]
    fn compose_examples() {
        let p1 = Op::p(h(), 1);
        let q1 = Op::q(h(), 1);
        let expect = Op::from_terms(
            h(),
            [
                (
                    OpKey::new(mono(&[(1, 1)]), mono(&[(1, 1)])),
                    ExactScalar::one(),
                ),
                (OpKey::identity(), h()),
            ],
        );
        assert_eq!(p1.compose(&q1), expect);

        let p2 = Op::p(h(), 2);
        let q3 = Op::q(h(), 3);
        assert_eq!(
            p2.compose(&q3),
            Op::from_terms(
                h(),
                [(
                    OpKey::new(mono(&[(3, 1)]), mono(&[(2, 1)])),
                    ExactScalar::one()
                )]
            )
        );

        let p1sq = p1.compose(&p1);
        let q1sq = q1.compose(&q1);
        let expect = Op::from_terms(
            h(),
            [
                (
                    OpKey::new(mono(&[(1, 2)]), mono(&[(1, 2)])),
                    ExactScalar::one(),
                ),
                (
                    OpKey::new(mono(&[(1, 1)]), mono(&[(1, 1)])),
                    h().scale(&rat(4)),
                ),
                (OpKey::identity(), h().pow(2).scale(&rat(2))),
            ],
        );
        assert_eq!(p1sq.compose(&q1sq), expect);
    }

    #[test]
    fn commutator_with_degree_operator() {
        let h0 = naive_hamiltonian(0, 6).unwrap().subs_u0(&rat(0));
        for n in 1..=4 {
            let qn = Op::q(h(), n);
            let c = h0.commutator(&qn);
            assert_eq!(c, qn.scale(&h().scale(&rat(n as i64))));
        }
        assert!(h0.commutator(&h0).is_zero());
    }

    #[test]
    fn naive_examples() {
        let hm1 = naive_hamiltonian(-1, 5).unwrap();
        assert_eq!(hm1, Op::scalar(h(), ExactScalar::u0()));

        let h0 = naive_hamiltonian(0, 3).unwrap();
        let mut expect = Op::scalar(h(), ExactScalar::u0().pow(2).scale(&ratio(1, 2)));
        for k in 1..=3 {
            expect.add_term(
                OpKey::new(Monomial::var(k), Monomial::var(k)),
                ExactScalar::one(),
            );
        }
        assert_eq!(h0, expect);

        let h1 = naive_hamiltonian(1, 4).unwrap();
        // q1 q2 p3 has coefficient 1 (two ordered pairs times 1/2)
        assert_eq!(
            h1.coeff(&OpKey::new(mono(&[(1, 1), (2, 1)]), mono(&[(3, 1)]))),
            ExactScalar::one()
        );
        assert_eq!(
            h1.coeff(&OpKey::new(mono(&[(2, 1)]), mono(&[(1, 2)]))),
            ExactScalar::constant(ratio(1, 2))
        );
        assert_eq!(
            h1.coeff(&OpKey::new(mono(&[(2, 1)]), mono(&[(2, 1)]))),
            ExactScalar::u0()
        );
        assert!(naive_hamiltonian(-2, 3).is_err());
        assert!(h1.is_weight_preserving());
    }

    #[test]
    fn weight_check_rejects_unbalanced() {
        let op = Op::q(h(), 1);
        assert!(matches!(
            op.check_weight_preserving(),
            Err(Error::NotWeightPreserving { .. })
        ));
    }

    #[test]
    fn json_roundtrip() {
        let h1 = naive_hamiltonian(1, 3).unwrap();
        let v = h1.to_json();
        assert_eq!(Op::from_json(&v).unwrap(), h1);
    }

    #[test]
    fn matrices_on_graded_pieces() {
        let d = degree_operator(4);
        let m = matrix_on_weight(&d, 2, Basis::Monomial).unwrap();
        let two_h = h().scale(&rat(2));
        assert_eq!(
            m,
            vec![
                vec![two_h.clone(), ExactScalar::zero()],
                vec![ExactScalar::zero(), two_h]
            ]
        );
        let id = Op::identity(h());
        let m = matrix_on_weight(&id, 3, Basis::Schur).unwrap();
        assert!(crate::linalg::is_diagonal(&m));
        assert!(m
            .iter()
            .enumerate()
            .all(|(i, r)| r[i] == ExactScalar::one()));
        assert!(matrix_on_weight(&Op::q(h(), 1), 2, Basis::Monomial).is_err());
    }

    #[test]
    fn divisor_enumeration() {
        assert_eq!(divisors(&mono(&[(1, 2), (3, 1)])).len(), 6);
        assert_eq!(divisors(&Monomial::one()), vec![Monomial::one()]);
    }
}
