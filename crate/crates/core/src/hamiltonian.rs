//! The commuting quantum Hamiltonians Ĥₙ, their eigenvalues on s_λ(q/ε),
//! and the sweeps that check both.
//!
//! The generating series is
//! Ĥ(z) = e^{zu₀}/s(εz) · Σ_{(α,β)} ∏_k [z·s(εzk)]^{α_k+β_k}/(α_k! β_k!) q^α p̂^β,
//! summed over pairs with Σkα_k = Σkβ_k, and Ĥₙ is its z^{n+2} coefficient.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::operator::{balanced_pairs, naive_hamiltonian, OpKey, Operator};
use crate::partition::{partitions_up_to, Partition};
use crate::poly::{Monomial, Polynomial};
use crate::ring::{binomial, factorial, rat, ratio, Ring};
use crate::scalar::ExactScalar;
use crate::schur::scaled_schur;
use crate::series::{bernoulli_table, inv_s_series, s_series, Series};
use crate::Rational;

type Op = Operator<ExactScalar>;
type Poly = Polynomial<ExactScalar>;

/// e^{zu₀}/s(εz) to the given z-order.
fn vacuum_prefix(order: usize) -> Series<ExactScalar> {
    let inv_s = inv_s_series(order);
    let exp_u0 = Series::new(
        (0..=order)
            .map(|j| {
                ExactScalar::monomial(
                    Rational::new(BigInt::one(), factorial(j as u32)),
                    0,
                    j as u32,
                )
            })
            .collect(),
        order,
    );
    let inv_s_eps = Series::new(
        (0..=order)
            .map(|j| ExactScalar::monomial(inv_s.coeff(j), j as i32, 0))
            .collect(),
        order,
    );
    exp_u0.mul_ref(&inv_s_eps)
}

/// ∏_k s(kw)^{m_k} as a rational series in w = εz.
fn s_product(multiplicities: &Monomial, order: usize) -> Series<Rational> {
    let s = s_series(order);
    let mut acc = Series::one(order);
    for &(k, m) in multiplicities.pairs() {
        acc = acc.mul_ref(&s.rescale(&rat(k as i64)).pow(m));
    }
    acc
}

/// Coefficients of the term `key` in Ĥ_{−1}, …, Ĥ_K.
pub fn term_coefficients(key: &OpKey, k_max: i32) -> Vec<ExactScalar> {
    let order = (k_max + 2) as usize;
    term_coefficients_with_prefix(key, k_max, &vacuum_prefix(order))
}

fn term_coefficients_with_prefix(
    key: &OpKey,
    k_max: i32,
    prefix: &Series<ExactScalar>,
) -> Vec<ExactScalar> {
    let top = (k_max + 2) as usize;
    let d = (key.alpha.degree() + key.beta.degree()) as usize;
    let mut out = vec![ExactScalar::zero(); top];
    if d > top {
        return out;
    }
    let m = key.alpha.mul(&key.beta);
    let r = s_product(&m, top - d);
    let den = key.alpha.factorial_product() * key.beta.factorial_product();
    let norm = Rational::new(BigInt::one(), den);
    // Ĥ_n sits at z^{n+2}; index n+1 in `out` for n = −1..K.
    for (idx, slot) in out.iter_mut().enumerate() {
        let power = idx + 1;
        if power < d {
            continue;
        }
        let t = power - d;
        let mut acc = ExactScalar::zero();
        for j in 0..=t {
            let rj = r.coeff(j);
            if rj.is_zero() {
                continue;
            }
            acc += &prefix.coeff(t - j).shift_eps(j as i32).scale(&rj);
        }
        *slot = acc.scale(&norm);
    }
    out
}

/// Ĥ_{−1}, …, Ĥ_K restricted to creation weight ≤ `max_weight`.
pub fn hamiltonian_generating_coefficients(k_max: i32, max_weight: usize) -> Result<Vec<Op>> {
    if k_max < -1 {
        return Err(Error::InvalidArgument(format!(
            "Hamiltonian index must be ≥ -1, got {k_max}"
        )));
    }
    let order = (k_max + 2) as usize;
    let prefix = vacuum_prefix(order);
    let keys = balanced_pairs(max_weight, order as u32);
    let rows: Vec<(OpKey, Vec<ExactScalar>)> = keys
        .into_par_iter()
        .map(|key| {
            let c = term_coefficients_with_prefix(&key, k_max, &prefix);
            (key, c)
        })
        .collect();
    let mut ops: Vec<Op> = (0..order)
        .map(|_| Operator::zero(ExactScalar::hbar()))
        .collect();
    for (key, coeffs) in rows {
        for (op, c) in ops.iter_mut().zip(coeffs) {
            op.add_term(key.clone(), c);
        }
    }
    Ok(ops)
}

/// The single Hamiltonian Ĥₙ.
pub fn quantum_hamiltonian(n: i32, max_weight: usize) -> Result<Op> {
    let mut ops = hamiltonian_generating_coefficients(n, max_weight)?;
    Ok(ops.pop().expect("at least Ĥ₋₁"))
}

/// ½Σ_{i,j}(ħ(i+j) q_i q_j ∂_{q_{i+j}} + ħ² ij q_{i+j} ∂_{q_i} ∂_{q_j}), with ∂_{q_n} = p̂_n/(ħn).
pub fn cut_and_join(max_weight: usize) -> Op {
    let hbar = ExactScalar::hbar();
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let d = |n: u32| {
        (hbar.clone() * &ExactScalar::from_i64(n as i64))
            .try_inverse()
            .expect("monomial is invertible")
    };
    let mut op = Operator::zero(hbar.clone());
    for i in 1..max_weight as u32 {
        for j in 1..=(max_weight as u32 - i) {
            let split =
                (hbar.clone() * &ExactScalar::from_i64((i + j) as i64) * &d(i + j)).scale(&half);
            op.add_term(
                OpKey::new(
                    Monomial::var(i).mul(&Monomial::var(j)),
                    Monomial::var(i + j),
                ),
                split,
            );
            let join =
                (hbar.pow(2) * &ExactScalar::from_i64((i * j) as i64) * &d(i) * &d(j)).scale(&half);
            op.add_term(
                OpKey::new(
                    Monomial::var(i + j),
                    Monomial::var(i).mul(&Monomial::var(j)),
                ),
                join,
            );
        }
    }
    op
}

/// The eigenvalue generating series E(z) = 1 + Σ_{n ≥ −1} E_n z^{n+2}.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenvalueSeries {
    coeffs: Vec<ExactScalar>,
}

impl EigenvalueSeries {
    /// The constant head (always 1).
    pub fn head(&self) -> &ExactScalar {
        &self.coeffs[0]
    }

    /// E_n for −1 ≤ n ≤ K.
    pub fn e(&self, n: i32) -> &ExactScalar {
        &self.coeffs[(n + 2) as usize]
    }

    pub fn coeffs(&self) -> &[ExactScalar] {
        &self.coeffs
    }

    pub fn max_index(&self) -> i32 {
        self.coeffs.len() as i32 - 3
    }
}

/// ε·a as a scalar, with a half-integer given as `twice / 2`.
fn half_int_scalar(twice: i64) -> ExactScalar {
    ExactScalar::monomial(Rational::new(BigInt::from(twice), BigInt::from(2)), 1, 0)
}

/// E(z) = e^{zu₀}[1/s(εz) + εz Σ_{i ≤ l(λ)} (e^{zε(λ_i−i+½)} − e^{zε(−i+½)})].
pub fn eigenvalue_series(lambda: &Partition, k_max: i32) -> EigenvalueSeries {
    let order = (k_max + 2).max(0) as usize;
    let mut bracket = Series::new(
        inv_s_series(order)
            .coeffs()
            .iter()
            .enumerate()
            .map(|(j, c)| ExactScalar::monomial(c.clone(), j as i32, 0))
            .collect(),
        order,
    );
    let exp_of = |twice: i64| -> Series<ExactScalar> {
        // εz·e^{zεa}: coefficient of z^j is ε·(εa)^{j−1}/(j−1)!
        let a = half_int_scalar(twice);
        let mut coeffs = vec![ExactScalar::zero()];
        for j in 1..=order {
            let c = a
                .pow(j as u32 - 1)
                .shift_eps(1)
                .scale(&Rational::new(BigInt::one(), factorial(j as u32 - 1)));
            coeffs.push(c);
        }
        Series::new(coeffs, order)
    };
    for (i, &part) in lambda.parts().iter().enumerate() {
        let i = i as i64 + 1;
        bracket = bracket + exp_of(2 * (part as i64 - i) + 1) - exp_of(-2 * i + 1);
    }
    let exp_u0 = Series::new(
        (0..=order)
            .map(|j| {
                ExactScalar::monomial(
                    Rational::new(BigInt::one(), factorial(j as u32)),
                    0,
                    j as u32,
                )
            })
            .collect(),
        order,
    );
    EigenvalueSeries {
        coeffs: exp_u0.mul_ref(&bracket).coeffs().to_vec(),
    }
}

/// c_k(u₀, ħ) = −(1/(k+2)!) Σ_j C(k+2, j)(1 − 2^{1−j}) B_j ε^j u₀^{k+2−j}.
pub fn vacuum_constant(k: i32) -> ExactScalar {
    let top = (k + 2) as u32;
    let b = bernoulli_table(top as usize);
    let mut acc = ExactScalar::zero();
    for j in 0..=top {
        let two = if j == 0 {
            rat(2)
        } else {
            Rational::new(BigInt::one(), BigInt::one() << (j - 1))
        };
        let c = Rational::from_integer(binomial(top, j)) * (rat(1) - two) * &b[j as usize];
        acc += &ExactScalar::monomial(c, j as i32, top - j);
    }
    acc.scale(&-Rational::new(BigInt::one(), factorial(top)))
}

/// (u₀ + ε·a)^{k+1}/(k+1)! with a = twice/2.
fn shifted_power(twice: i64, k: i32) -> ExactScalar {
    let base = ExactScalar::u0() + half_int_scalar(twice);
    base.pow((k + 1) as u32)
        .scale(&Rational::new(BigInt::one(), factorial((k + 1) as u32)))
}

/// E_k(λ, u₀, ħ) = c_k + ε Σ_{i ≤ l(λ)} ([u₀+ε(λ_i−i+½)]^{k+1} − [u₀+ε(−i+½)]^{k+1})/(k+1)!.
pub fn eigenvalue_closed_form(k: i32, lambda: &Partition) -> ExactScalar {
    let mut acc = ExactScalar::zero();
    for (i, &part) in lambda.parts().iter().enumerate() {
        let i = i as i64 + 1;
        acc += &shifted_power(2 * (part as i64 - i) + 1, k);
        acc -= &shifted_power(-2 * i + 1, k);
    }
    vacuum_constant(k) + acc.shift_eps(1)
}

/// The same eigenvalue written through Frobenius coordinates.
pub fn eigenvalue_frobenius_form(k: i32, lambda: &Partition) -> ExactScalar {
    let f = lambda.frobenius();
    let mut acc = ExactScalar::zero();
    for (a, b) in f.alpha.iter().zip(&f.beta) {
        acc += &shifted_power(2 * *a as i64 + 1, k);
        acc -= &shifted_power(-(2 * *b as i64 + 1), k);
    }
    vacuum_constant(k) + acc.shift_eps(1)
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Violation {
    pub label: String,
    pub vector: String,
    pub residual: String,
}

/// Report schema shared by the sweeps: {pairs_checked, weight_bound, failures}.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct VerificationReport {
    pub pairs_checked: usize,
    pub weight_bound: usize,
    pub failures: Vec<Violation>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serialises")
    }
}

fn render_poly(p: &Poly) -> String {
    p.render("q")
}

/// All monomials q^μ with weight(μ) ≤ `max_weight`.
pub fn fock_basis(max_weight: usize) -> Vec<Monomial> {
    partitions_up_to(max_weight)
        .iter()
        .map(Monomial::from_partition)
        .collect()
}

/// Apply [A, B] to every monomial of weight ≤ W for each labelled pair.
pub fn check_commuting(ops: &[(String, Op)], max_weight: usize) -> VerificationReport {
    let basis = fock_basis(max_weight);
    let prepared: Vec<_> = ops.iter().map(|(_, op)| op.prepare()).collect();
    // images[i][b] = ops[i] applied to basis[b]
    let images: Vec<Vec<Poly>> = prepared
        .par_iter()
        .map(|p| {
            basis
                .iter()
                .map(|m| p.apply(&Poly::term(m.clone(), ExactScalar::one())))
                .collect()
        })
        .collect();
    let pairs: Vec<(usize, usize)> = (0..ops.len())
        .flat_map(|i| ((i + 1)..ops.len()).map(move |j| (i, j)))
        .collect();
    let failures: Vec<Violation> = pairs
        .par_iter()
        .flat_map_iter(|&(i, j)| {
            let mut out = Vec::new();
            for (b, m) in basis.iter().enumerate() {
                let ab = prepared[i].apply(&images[j][b]);
                let ba = prepared[j].apply(&images[i][b]);
                let residual = ab - ba;
                if !residual.is_zero() {
                    out.push(Violation {
                        label: format!("[{}, {}]", ops[i].0, ops[j].0),
                        vector: m.render("q"),
                        residual: render_poly(&residual),
                    });
                }
            }
            out
        })
        .collect();
    VerificationReport {
        pairs_checked: pairs.len(),
        weight_bound: max_weight,
        failures,
    }
}

/// [Ĥₙ, Ĥₘ] = 0 on every monomial of weight ≤ W, for −1 ≤ n < m ≤ N.
pub fn verify_commutativity(n_max: i32, max_weight: usize) -> Result<VerificationReport> {
    let ops = hamiltonian_generating_coefficients(n_max, max_weight)?;
    let labelled: Vec<(String, Op)> = ops
        .into_iter()
        .enumerate()
        .map(|(i, op)| (format!("H{}", i as i32 - 1), op))
        .collect();
    Ok(check_commuting(&labelled, max_weight))
}

/// Ĥ_k s_λ(q/ε) = E_k(λ) s_λ(q/ε) for every |λ| ≤ W and −1 ≤ k ≤ K.
pub fn verify_eigenvectors(k_max: i32, max_weight: usize) -> Result<VerificationReport> {
    let ops = hamiltonian_generating_coefficients(k_max, max_weight)?;
    Ok(check_eigenvectors(&ops, max_weight))
}

/// `ops[i]` is Ĥ_{i−1}.
pub fn check_eigenvectors(ops: &[Op], max_weight: usize) -> VerificationReport {
    let prepared: Vec<_> = ops.iter().map(|op| op.prepare()).collect();
    let partitions = partitions_up_to(max_weight);
    let failures: Vec<Violation> = partitions
        .par_iter()
        .flat_map_iter(|lambda| {
            let s = scaled_schur(lambda);
            let mut out = Vec::new();
            for (i, p) in prepared.iter().enumerate() {
                let k = i as i32 - 1;
                let expected = s.scale(&eigenvalue_closed_form(k, lambda));
                let residual = p.apply(&s) - expected;
                if !residual.is_zero() {
                    out.push(Violation {
                        label: format!("H{k}"),
                        vector: format!("s{lambda}(q/eps)"),
                        residual: render_poly(&residual),
                    });
                }
            }
            out
        })
        .collect();
    VerificationReport {
        pairs_checked: partitions.len() * ops.len(),
        weight_bound: max_weight,
        failures,
    }
}

/// ε⁰ part of every coefficient of Ĥₙ against the naive Ĥₙ⁰, term by term.
/// Returns the keys where they differ.
pub fn semiclassical_mismatches(n: i32, max_weight: usize) -> Result<Vec<OpKey>> {
    let quantum = quantum_hamiltonian(n, max_weight)?;
    let naive = naive_hamiltonian(n, max_weight)?;
    let classical = quantum.semiclassical_part();
    let mut keys: BTreeMap<OpKey, ()> = BTreeMap::new();
    for (k, _) in classical.terms().chain(naive.terms()) {
        keys.insert(k.clone(), ());
    }
    Ok(keys
        .into_keys()
        .filter(|k| classical.coeff(k) != naive.coeff(k))
        .collect())
}

/// The lowest ε-power part of each coefficient; for these operators that is ε⁰.
pub fn lowest_eps_parts(op: &Op) -> Vec<(OpKey, i32, ExactScalar)> {
    op.terms()
        .map(|(k, c)| {
            let b = c.min_eps_power().unwrap_or(0);
            (k.clone(), b, c.eps_part(b))
        })
        .collect()
}

/// (ħ²/8)Σ_{i,j ≥ 1} ij(i+j)(q_{i+j} p̂_i p̂_j − q_i q_j p̂_{i+j}), i + j ≤ W.
pub fn naive_commutator_formula(max_weight: usize) -> Op {
    let hbar = ExactScalar::hbar();
    let pref = hbar
        .pow(2)
        .scale(&Rational::new(BigInt::one(), BigInt::from(8)));
    let mut op = Operator::zero(hbar);
    for i in 1..max_weight as u32 {
        for j in 1..=(max_weight as u32 - i) {
            let c = pref.scale(&rat((i * j * (i + j)) as i64));
            let ij = Monomial::var(i).mul(&Monomial::var(j));
            op.add_term(OpKey::new(Monomial::var(i + j), ij.clone()), c.clone());
            op.add_term(OpKey::new(ij, Monomial::var(i + j)), -c);
        }
    }
    op
}

/// :(1/2π)∫[u⁴/24 + outer·(ħ/24)(u u″ + inner·½u²)]dx: + 7ħ²/5760 in modes.
/// The displayed form is (outer, inner) = (1, −1); the generated Ĥ₂ is (−1, 1).
pub fn h2_from_density(outer: i64, inner: i64, max_weight: usize) -> Result<Op> {
    let hbar = ExactScalar::hbar();
    let h24 = hbar.scale(&ratio(outer, 24));
    let mut op = naive_hamiltonian(2, max_weight)?;
    // (1/2π)∫u u″ = −2Σk² q_k p̂_k,  (1/2π)∫u² = u₀² + 2Σ q_k p̂_k
    for k in 1..=max_weight as u32 {
        let c = rat(-2 * (k as i64).pow(2) + inner);
        op.add_term(
            OpKey::new(Monomial::var(k), Monomial::var(k)),
            h24.scale(&c),
        );
    }
    let u0_sq = ExactScalar::u0().pow(2).scale(&ratio(inner, 2));
    let constant = h24 * &u0_sq + hbar.pow(2).scale(&ratio(7, 5760));
    op.add_term(OpKey::identity(), constant);
    Ok(op)
}

/// Terms where two operators differ, as (key, left, right).
pub fn operator_differences(a: &Op, b: &Op) -> Vec<(OpKey, ExactScalar, ExactScalar)> {
    let mut keys: Vec<&OpKey> = a.terms().chain(b.terms()).map(|(k, _)| k).collect();
    keys.sort();
    keys.dedup();
    keys.into_iter()
        .filter_map(|k| {
            let (x, y) = (a.coeff(k), b.coeff(k));
            (x != y).then(|| (k.clone(), x, y))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn eps_pow(c: Rational, b: i32) -> ExactScalar {
        ExactScalar::monomial(c, b, 0)
    }

    #[test]
    fn low_hamiltonians() {
        let ops = hamiltonian_generating_coefficients(2, 4).unwrap();
        assert_eq!(
            ops[0],
            Operator::scalar(ExactScalar::hbar(), ExactScalar::u0())
        );
        let naive0 = naive_hamiltonian(0, 4).unwrap();
        let expect0 = naive0.add(&Operator::scalar(
            ExactScalar::hbar(),
            eps_pow(ratio(-1, 24), 2),
        ));
        assert_eq!(ops[1], expect0);
        let naive1 = naive_hamiltonian(1, 4).unwrap();
        let corr = ExactScalar::monomial(ratio(-1, 24), 2, 1);
        assert_eq!(
            ops[2],
            naive1.add(&Operator::scalar(ExactScalar::hbar(), corr))
        );
        let h2 = ops[3].subs_u0(&rat(0));
        assert_eq!(h2.coeff(&OpKey::identity()), eps_pow(ratio(7, 5760), 4));
    }

    #[test]
    fn single_term_coefficients_match_family() {
        let ops = hamiltonian_generating_coefficients(3, 4).unwrap();
        let key = OpKey::new(Monomial::var(2), Monomial::var(1).mul(&Monomial::var(1)));
        let coeffs = term_coefficients(&key, 3);
        for (i, c) in coeffs.iter().enumerate() {
            assert_eq!(&ops[i].coeff(&key), c);
        }
    }

    #[test]
    fn cut_and_join_matches_h1() {
        let cj = cut_and_join(6);
        let h1 = quantum_hamiltonian(1, 6).unwrap().subs_u0(&rat(0));
        assert_eq!(cj, h1);
        let q2 = Poly::var(2);
        let image = cj.apply(&q2);
        assert_eq!(
            image,
            Poly::term(Monomial::var_pow(1, 2), ExactScalar::hbar())
        );
        let q11 = Poly::term(Monomial::var_pow(1, 2), ExactScalar::one());
        assert_eq!(
            cj.apply(&q11),
            Poly::var(2).scale(&ExactScalar::hbar().pow(2))
        );
    }

    #[test]
    fn eigenvalue_examples() {
        let e = eigenvalue_series(&Partition::empty(), 3);
        assert_eq!(e.head(), &ExactScalar::one());
        assert_eq!(e.e(-1), &ExactScalar::u0());
        let e1 = eigenvalue_series(&p(&[1]), 3);
        assert_eq!(e1.e(0).subs_u0(&rat(0)), eps_pow(ratio(23, 24), 2));
        assert!(e1.e(1).subs_u0(&rat(0)).is_zero());
        assert_eq!(
            vacuum_constant(0).subs_u0(&rat(0)),
            eps_pow(ratio(-1, 24), 2)
        );
        assert_eq!(
            vacuum_constant(2).subs_u0(&rat(0)),
            eps_pow(ratio(7, 5760), 4)
        );
        let diff = eigenvalue_closed_form(2, &p(&[1])) - vacuum_constant(2);
        assert_eq!(diff.subs_u0(&rat(0)), eps_pow(ratio(1, 24), 4));
    }

    #[test]
    fn eigenvalue_forms_agree() {
        for lambda in partitions_up_to(6) {
            let series = eigenvalue_series(&lambda, 6);
            for k in -1..=6 {
                let closed = eigenvalue_closed_form(k, &lambda);
                assert_eq!(series.e(k), &closed, "{lambda} k={k}");
                assert_eq!(eigenvalue_frobenius_form(k, &lambda), closed);
            }
        }
    }

    #[test]
    fn small_sweeps() {
        assert!(verify_commutativity(2, 5).unwrap().passed());
        assert!(verify_eigenvectors(3, 5).unwrap().passed());
        for n in -1..=3 {
            assert!(semiclassical_mismatches(n, 5).unwrap().is_empty());
        }
    }

    #[test]
    fn h0_on_first_schur() {
        let h0 = quantum_hamiltonian(0, 3).unwrap();
        let s1 = scaled_schur(&p(&[1]));
        let expected = ExactScalar::u0().pow(2).scale(&ratio(1, 2)) + eps_pow(ratio(23, 24), 2);
        assert_eq!(h0.apply(&s1), s1.scale(&expected));
    }

    #[test]
    fn h2_density_forms() {
        let w = 5;
        let generated = quantum_hamiltonian(2, w).unwrap();
        assert_eq!(generated, h2_from_density(-1, 1, w).unwrap());
        let printed = h2_from_density(1, -1, w).unwrap();
        let diff = operator_differences(&printed, &generated);
        // the q_k p̂_k terms; the u₀² constant agrees
        assert_eq!(diff.len(), w);
        let qp = OpKey::new(Monomial::var(1), Monomial::var(1));
        let half_u0_sq = ExactScalar::monomial(ratio(1, 2), 0, 2);
        assert_eq!(
            generated.coeff(&qp),
            half_u0_sq.clone() + eps_pow(ratio(1, 24), 2)
        );
        assert_eq!(printed.coeff(&qp), half_u0_sq + eps_pow(ratio(-3, 24), 2));
    }
}
