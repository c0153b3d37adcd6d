//! The disk potential Σ_λ ε^{−|λ|} (dim λ/|λ|!) e^{Σ_k t_k E_k(λ)/ħ} s_λ(p/ε),
//! its t-expansion, the Schrödinger equations, the Fock pairing and the P¹
//! partition function.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hamiltonian::{
    eigenvalue_closed_form, hamiltonian_generating_coefficients, vacuum_constant,
};
use crate::operator::{OpKey, Operator};
use crate::partition::{partitions_of, partitions_up_to, Partition};
use crate::poly::{Monomial, Polynomial};
use crate::ring::{factorial, rat, ratio, Ring};
use crate::scalar::ExactScalar;
use crate::schur::scaled_schur;
use crate::Rational;

type Poly = Polynomial<ExactScalar>;

/// One summand of the disk potential, kept unexpanded.
#[derive(Clone, Debug, PartialEq)]
pub struct DiskAmplitude {
    pub partition: Partition,
    /// ε^{−|λ|} dim λ / |λ|!
    pub prefactor: ExactScalar,
    /// E_k(λ)/ħ for k = 0..=K
    pub exponents: Vec<ExactScalar>,
}

impl DiskAmplitude {
    pub fn new(lambda: &Partition, k_max: usize) -> Self {
        let n = lambda.size();
        let prefactor = ExactScalar::monomial(
            Rational::new(lambda.dim(), factorial(n as u32)),
            -(n as i32),
            0,
        );
        let exponents = (0..=k_max as i32)
            .map(|k| eigenvalue_closed_form(k, lambda).shift_eps(-2))
            .collect();
        DiskAmplitude {
            partition: lambda.clone(),
            prefactor,
            exponents,
        }
    }

    /// The p-polynomial s_λ(p/ε) times the prefactor.
    pub fn p_part(&self) -> Poly {
        scaled_schur(&self.partition).scale(&self.prefactor)
    }

    pub fn subs_u0(&self, u0: &Rational) -> Self {
        DiskAmplitude {
            partition: self.partition.clone(),
            prefactor: self.prefactor.subs_u0(u0),
            exponents: self.exponents.iter().map(|e| e.subs_u0(u0)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiskPotential {
    pub max_weight: usize,
    pub k_max: usize,
    /// In `partitions_up_to(max_weight)` order.
    pub amplitudes: Vec<DiskAmplitude>,
}

pub fn disk_potential(max_weight: usize, k_max: usize) -> DiskPotential {
    let amplitudes = partitions_up_to(max_weight)
        .par_iter()
        .map(|lambda| DiskAmplitude::new(lambda, k_max))
        .collect();
    DiskPotential {
        max_weight,
        k_max,
        amplitudes,
    }
}

impl DiskPotential {
    pub fn amplitude(&self, lambda: &Partition) -> Option<&DiskAmplitude> {
        self.amplitudes.iter().find(|a| &a.partition == lambda)
    }

    pub fn subs_u0(&self, u0: &Rational) -> Self {
        DiskPotential {
            max_weight: self.max_weight,
            k_max: self.k_max,
            amplitudes: self.amplitudes.iter().map(|a| a.subs_u0(u0)).collect(),
        }
    }
}

/// Polynomials in t₀, t₁, … (variable index k stands for t_k).
pub type TPolynomial = Polynomial<ExactScalar>;

/// e^{Σ_k t_k X_k} with t_k kept to order `orders[k]`.
fn exp_in_t(exponents: &[ExactScalar], orders: &[u32]) -> TPolynomial {
    let mut acc = TPolynomial::one();
    for (k, (x, &order)) in exponents.iter().zip(orders).enumerate() {
        let mut factor = TPolynomial::zero();
        for j in 0..=order {
            let c = x.pow(j).scale(&Rational::new(BigInt::one(), factorial(j)));
            factor.add_term(Monomial::var_pow(k as u32, j), c);
        }
        acc = acc.mul_ref(&factor);
    }
    acc
}

/// Taylor-expand every exponential; returns p-monomial ↦ t-polynomial.
pub fn expand_in_t(pot: &DiskPotential, orders: &[u32]) -> Result<BTreeMap<Monomial, TPolynomial>> {
    if orders.len() > pot.k_max + 1 {
        return Err(Error::InvalidArgument(format!(
            "{} t-orders given but the potential stops at t_{}",
            orders.len(),
            pot.k_max
        )));
    }
    let mut out: BTreeMap<Monomial, TPolynomial> = BTreeMap::new();
    for amp in &pot.amplitudes {
        let t_part = exp_in_t(&amp.exponents[..orders.len()], orders);
        for (m, c) in amp.p_part().terms() {
            let entry = out.entry(m.clone()).or_insert_with(TPolynomial::zero);
            *entry += &t_part.scale(c);
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

/// Does every coefficient of the expansion contain only even powers of ε?
pub fn has_integer_hbar_powers(expansion: &BTreeMap<Monomial, TPolynomial>) -> bool {
    expansion
        .values()
        .all(|tp| tp.terms().all(|(_, c)| !c.has_odd_eps_power()))
}

/// Σ_λ ε^{−|λ|}(dim λ/|λ|!) s_λ(p/ε) against e^{p₁/ħ}, weight by weight.
pub fn plane_wave_check(max_weight: usize) -> bool {
    (0..=max_weight).all(|n| {
        let mut lhs = Poly::zero();
        for lambda in partitions_of(n) {
            lhs += &DiskAmplitude::new(&lambda, 0).p_part();
        }
        let rhs = Poly::term(
            Monomial::var_pow(1, n as u32),
            ExactScalar::monomial(
                Rational::new(BigInt::one(), factorial(n as u32)),
                -2 * n as i32,
                0,
            ),
        );
        lhs == rhs
    })
}

/// E_k(λ′, u₀, ε) = E_k(λ, u₀, −ε) for every |λ| ≤ W, k ≤ K.
pub fn transpose_flips_eps(max_weight: usize, k_max: i32) -> bool {
    partitions_up_to(max_weight).iter().all(|lambda| {
        (-1..=k_max).all(|k| {
            eigenvalue_closed_form(k, &lambda.transpose())
                == eigenvalue_closed_form(k, lambda).flip_eps()
        })
    })
}

// ---------------------------------------------------------------------------
// The printed degree ≤ 3 expansion at u₀ = 0, transcribed literally.

/// One printed bracket: e^{Σ_k t_k·exponents[k]} times a p-polynomial.
#[derive(Clone, Debug)]
pub struct PrintedTerm {
    pub weight: usize,
    pub exponents: [ExactScalar; 4],
    pub polynomial: Poly,
}

fn es(c: Rational, eps: i32) -> ExactScalar {
    ExactScalar::monomial(c, eps, 0)
}

fn pm(pairs: &[(u32, u32)]) -> Monomial {
    Monomial::from_pairs(pairs.iter().copied())
}

/// The display, with the global vacuum factor e^{−t₀/24 + 7ħt₂/5760} pushed into every bracket.
pub fn printed_expansion() -> Vec<PrintedTerm> {
    let vac = [
        es(ratio(-1, 24), 0),
        ExactScalar::zero(),
        es(ratio(7, 5760), 2),
        ExactScalar::zero(),
    ];
    let with_vac = |e: [ExactScalar; 4]| -> [ExactScalar; 4] {
        let mut out = e;
        for (o, v) in out.iter_mut().zip(&vac) {
            *o += v;
        }
        out
    };
    let poly = |terms: &[(&[(u32, u32)], Rational, i32)], pref: &ExactScalar| -> Poly {
        Poly::from_terms(
            terms
                .iter()
                .map(|(m, c, e)| (pm(m), es(c.clone(), *e) * pref)),
        )
    };
    let zero = ExactScalar::zero;
    let mut out = Vec::new();

    out.push(PrintedTerm {
        weight: 0,
        exponents: with_vac([zero(), zero(), zero(), zero()]),
        polynomial: Poly::one(),
    });

    // (1/ħ) e^{t₀ + ħt₂/24} p₁
    out.push(PrintedTerm {
        weight: 1,
        exponents: with_vac([es(rat(1), 0), zero(), es(ratio(1, 24), 2), zero()]),
        polynomial: poly(&[(&[(1, 1)], rat(1), 0)], &es(rat(1), -2)),
    });

    // (1/(2ħ²)) ( e^{2t₀ ± ħ^{½}t₁ + 7ħt₂/12 ± (5/24)ħ^{3/2}t₃} (p₁² ± ħ^{½}p₂) )
    let w2 = es(ratio(1, 2), -4);
    for s in [1i64, -1] {
        out.push(PrintedTerm {
            weight: 2,
            exponents: with_vac([
                es(rat(2), 0),
                es(rat(s), 1),
                es(ratio(7, 12), 2),
                es(ratio(5 * s, 24), 3),
            ]),
            polynomial: poly(&[(&[(1, 2)], rat(1), 0), (&[(2, 1)], rat(s), 1)], &w2),
        });
    }

    // (1/(36ħ³)) ( e^{3t₀ ± 3ħ^{½}t₁ + (21/8)ħt₂ ± (13/8)ħ^{3/2}t₃}(p₁³ ± 3ħ^{½}p₁p₂ + 2ħp₃)
    //             + 4 e^{3t₀ + (9/8)ħt₂}(p₁³ − ħp₃) )
    let w3 = es(ratio(1, 36), -6);
    for s in [1i64, -1] {
        out.push(PrintedTerm {
            weight: 3,
            exponents: with_vac([
                es(rat(3), 0),
                es(rat(3 * s), 1),
                es(ratio(21, 8), 2),
                es(ratio(13 * s, 8), 3),
            ]),
            polynomial: poly(
                &[
                    (&[(1, 3)], rat(1), 0),
                    (&[(1, 1), (2, 1)], rat(3 * s), 1),
                    (&[(3, 1)], rat(2), 2),
                ],
                &w3,
            ),
        });
    }
    out.push(PrintedTerm {
        weight: 3,
        exponents: with_vac([es(rat(3), 0), zero(), es(ratio(9, 8), 2), zero()]),
        polynomial: poly(&[(&[(1, 3)], rat(4), 0), (&[(3, 1)], rat(-4), 2)], &w3),
    });
    out
}

/// One disagreement between the display and the computed potential.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct PrintedMismatch {
    pub weight: usize,
    pub exponents: String,
    pub monomial: String,
    pub printed: String,
    pub computed: String,
}

fn exponent_key(e: &[ExactScalar]) -> String {
    e.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" | ")
}

/// Group (exponent vector, weight) ↦ p-polynomial.
fn group(
    terms: impl IntoIterator<Item = (usize, Vec<ExactScalar>, Poly)>,
) -> BTreeMap<(usize, String), Poly> {
    let mut out: BTreeMap<(usize, String), Poly> = BTreeMap::new();
    for (w, e, p) in terms {
        *out.entry((w, exponent_key(&e))).or_insert_with(Poly::zero) += &p;
    }
    out
}

/// Compare the display with the computed potential (u₀ = 0, |λ| ≤ 3, t₀…t₃) item by item.
pub fn verify_printed_expansion() -> Vec<PrintedMismatch> {
    let pot = disk_potential(3, 3).subs_u0(&rat(0));
    let computed = group(
        pot.amplitudes
            .iter()
            .map(|a| (a.partition.size(), a.exponents.clone(), a.p_part())),
    );
    let printed = group(
        printed_expansion()
            .into_iter()
            .map(|t| (t.weight, t.exponents.to_vec(), t.polynomial)),
    );
    let mut keys: Vec<&(usize, String)> = computed.keys().chain(printed.keys()).collect();
    keys.sort();
    keys.dedup();
    let mut out = Vec::new();
    let empty = Poly::zero();
    for key in keys {
        let a = printed.get(key).unwrap_or(&empty);
        let b = computed.get(key).unwrap_or(&empty);
        let mut monos: Vec<&Monomial> = a.terms().chain(b.terms()).map(|(m, _)| m).collect();
        monos.sort();
        monos.dedup();
        for m in monos {
            let (x, y) = (a.coeff(m), b.coeff(m));
            if x != y {
                out.push(PrintedMismatch {
                    weight: key.0,
                    exponents: key.1.clone(),
                    monomial: m.render("p"),
                    printed: x.to_string(),
                    computed: y.to_string(),
                });
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------

/// (a) ħ ∂_{t_k} of each amplitude is E_k(λ) times it; (b) Ĥ_kᵀ s_λ(p/ε) = E_k(λ) s_λ(p/ε).
/// Returns the partitions that fail either check.
pub fn schroedinger_check(k: i32, max_weight: usize) -> Result<Vec<Partition>> {
    if k < 0 {
        return Err(Error::InvalidArgument(format!("t_k needs k ≥ 0, got {k}")));
    }
    let pot = disk_potential(max_weight, k as usize);
    let op = hamiltonian_generating_coefficients(k, max_weight)?
        .pop()
        .expect("Ĥ_k");
    let transposed = op.transpose().prepare();
    Ok(pot
        .amplitudes
        .par_iter()
        .filter(|amp| {
            let e = eigenvalue_closed_form(k, &amp.partition);
            let a_ok = amp.exponents[k as usize].shift_eps(2) == e;
            let s = scaled_schur(&amp.partition);
            let b_ok = transposed.apply(&s) == s.scale(&e);
            !(a_ok && b_ok)
        })
        .map(|amp| amp.partition.clone())
        .collect())
}

/// ⟨bra(⃗p) ket⟩: p_n ↦ ħn∂/∂q_n in `bra`, applied to `ket`, evaluated at q = 0.
pub fn fock_pairing(bra: &Poly, ket: &Poly, hbar: &ExactScalar) -> ExactScalar {
    let op = Operator::from_terms(
        hbar.clone(),
        bra.terms()
            .map(|(m, c)| (OpKey::new(Monomial::one(), m.clone()), c.clone())),
    );
    op.apply(ket).constant_term()
}

/// One term of a degree-d slice: prefactor · e^{Σ t_k exponents[k]}.
#[derive(Clone, Debug, PartialEq)]
pub struct SliceTerm {
    pub partition: Partition,
    pub prefactor: ExactScalar,
    pub exponents: Vec<ExactScalar>,
}

/// Degree-d slices by the closed formula: ħ^{−d}(dim λ/d!)² e^{(1/ħ)Σ t_k E_k(λ)}.
pub fn p1_partition_function(max_degree: usize, k_max: usize) -> BTreeMap<usize, Vec<SliceTerm>> {
    (0..=max_degree)
        .map(|d| {
            let terms = partitions_of(d)
                .iter()
                .map(|lambda| {
                    let r = Rational::new(lambda.dim(), factorial(d as u32));
                    SliceTerm {
                        partition: lambda.clone(),
                        prefactor: ExactScalar::monomial(&r * &r, -2 * d as i32, 0),
                        exponents: (0..=k_max as i32)
                            .map(|k| eigenvalue_closed_form(k, lambda).shift_eps(-2))
                            .collect(),
                    }
                })
                .collect();
            (d, terms)
        })
        .collect()
}

/// Degree-d slices by pairing the disk potential with e^{zq₁/ħ}.
pub fn p1_by_pairing(max_degree: usize, k_max: usize) -> BTreeMap<usize, Vec<SliceTerm>> {
    let pot = disk_potential(max_degree, k_max);
    let hbar = ExactScalar::hbar();
    (0..=max_degree)
        .map(|d| {
            // z^d part of e^{zq₁/ħ}: q₁^d/(ħ^d d!)
            let ket = Poly::term(
                Monomial::var_pow(1, d as u32),
                ExactScalar::monomial(
                    Rational::new(BigInt::one(), factorial(d as u32)),
                    -2 * d as i32,
                    0,
                ),
            );
            let terms = pot
                .amplitudes
                .iter()
                .filter(|a| a.partition.size() == d)
                .map(|a| SliceTerm {
                    partition: a.partition.clone(),
                    prefactor: fock_pairing(&a.p_part(), &ket, &hbar),
                    exponents: a.exponents.clone(),
                })
                .collect();
            (d, terms)
        })
        .collect()
}

/// The degree-0 slice is e^{(1/ħ)Σ t_k c_k}.
pub fn vacuum_slice_exponents(k_max: usize) -> Vec<ExactScalar> {
    (0..=k_max as i32)
        .map(|k| vacuum_constant(k).shift_eps(-2))
        .collect()
}

/// Specialise u₀ = 0, t₁ = β, other t = 0, ħ = 1: coefficient of β^m/m! for n ≤ W, m ≤ M.
pub fn hurwitz_series(
    max_weight: usize,
    max_m: u32,
) -> Result<BTreeMap<(usize, u32), Polynomial<Rational>>> {
    let pot = disk_potential(max_weight, 1).subs_u0(&rat(0));
    let one = rat(1);
    let mut out: BTreeMap<(usize, u32), Polynomial<Rational>> = BTreeMap::new();
    for amp in &pot.amplitudes {
        let n = amp.partition.size();
        let x = amp.exponents[1].eval(&one, &one)?;
        let base = amp.p_part().try_map_coeffs(|c| c.eval(&one, &one))?;
        for m in 0..=max_m {
            let entry = out.entry((n, m)).or_insert_with(Polynomial::zero);
            *entry += &base.scale_rational(&Ring::pow(&x, m));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn amplitude_examples() {
        let pot = disk_potential(2, 3).subs_u0(&rat(0));
        let vac = pot.amplitude(&Partition::empty()).unwrap();
        assert_eq!(vac.prefactor, ExactScalar::one());
        assert_eq!(vac.exponents[0], es(ratio(-1, 24), 0));
        assert_eq!(vac.exponents[2], es(ratio(7, 5760), 2));
        let one = pot.amplitude(&p(&[1])).unwrap();
        assert_eq!(one.prefactor, es(rat(1), -1));
        let rel: Vec<_> = one
            .exponents
            .iter()
            .zip(&vac.exponents)
            .map(|(a, b)| a.clone() - b.clone())
            .collect();
        assert_eq!(rel[0], es(rat(1), 0));
        assert!(rel[1].is_zero());
        assert_eq!(rel[2], es(ratio(1, 24), 2));
    }

    #[test]
    fn zero_t_expansion() {
        let pot = disk_potential(2, 0).subs_u0(&rat(0));
        let e = expand_in_t(&pot, &[0]).unwrap();
        assert_eq!(e[&Monomial::one()], TPolynomial::one());
        assert_eq!(e[&Monomial::var(1)], TPolynomial::constant(es(rat(1), -2)));
        let e = expand_in_t(&pot, &[1]).unwrap();
        let t0p1 = e[&Monomial::var(1)].coeff(&Monomial::var(0));
        assert_eq!(t0p1, es(ratio(23, 24), -2));
    }

    #[test]
    fn plane_wave() {
        assert!(plane_wave_check(6));
    }

    #[test]
    fn pairing_examples() {
        let h = ExactScalar::hbar();
        assert_eq!(fock_pairing(&Poly::var(1), &Poly::var(1), &h), h);
        let one = ExactScalar::one();
        for lambda in partitions_up_to(4) {
            for mu in partitions_up_to(4) {
                let bra =
                    crate::schur::schur(&lambda).map_coeffs(|c| ExactScalar::constant(c.clone()));
                let ket = crate::schur::schur(&mu).map_coeffs(|c| ExactScalar::constant(c.clone()));
                let expect = if lambda == mu {
                    one.clone()
                } else {
                    ExactScalar::zero()
                };
                assert_eq!(fock_pairing(&bra, &ket, &one), expect, "{lambda} {mu}");
            }
        }
    }

    #[test]
    fn p1_routes_agree_small() {
        assert_eq!(p1_partition_function(3, 2), p1_by_pairing(3, 2));
        let s = p1_partition_function(1, 2);
        assert_eq!(s[&0][0].exponents, vacuum_slice_exponents(2));
        assert_eq!(s[&1][0].prefactor, es(rat(1), -2));
    }

    #[test]
    fn schroedinger_small() {
        for k in 0..=2 {
            assert!(schroedinger_check(k, 4).unwrap().is_empty());
        }
    }

    #[test]
    fn hurwitz_first_values() {
        let h = hurwitz_series(2, 2).unwrap();
        // m = 0: e^{p₁}
        assert_eq!(h[&(2, 0)].coeff(&Monomial::var_pow(1, 2)), ratio(1, 2));
        // one transposition in S₂ is a 2-cycle: 1/2!
        assert_eq!(h[&(2, 1)].coeff(&Monomial::var(2)), ratio(1, 2));
        assert_eq!(h[&(2, 2)].coeff(&Monomial::var_pow(1, 2)), ratio(1, 2));
    }

    #[test]
    fn printed_expansion_disagrees_only_at_weight_two() {
        let bad = verify_printed_expansion();
        assert_eq!(bad.len(), 4);
        for m in &bad {
            assert_eq!(m.weight, 2);
            let printed = m.printed.split(" * ").next().unwrap();
            let computed = m.computed.split(" * ").next().unwrap();
            assert_eq!(printed.trim_start_matches('-'), "1/2");
            assert_eq!(computed.trim_start_matches('-'), "1/4");
        }
    }

    #[test]
    fn integer_hbar_and_transpose() {
        let pot = disk_potential(5, 3);
        let e = expand_in_t(&pot, &[1, 1, 1, 1]).unwrap();
        assert!(has_integer_hbar_powers(&e));
        assert!(transpose_flips_eps(6, 4));
    }

    #[test]
    fn hurwitz_matches_oracle() {
        let h = hurwitz_series(4, 4).unwrap();
        for ((n, m), poly) in &h {
            for mu in partitions_of(*n) {
                let mono = Monomial::from_pairs(mu.parts().iter().map(|&k| (k, 1)));
                let expect = crate::hurwitz::hurwitz_oracle(*n, *m, &mu).unwrap();
                assert_eq!(poly.coeff(&mono), expect, "n={n} m={m} {mu}");
            }
        }
    }
}
