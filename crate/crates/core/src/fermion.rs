//! The fermionic Fock space as a semi-infinite wedge, and the boson-fermion map.
//!
//! A basis state is a set S of occupied half-integers that agrees with the
//! vacuum {−½, −3/2, …} away from finitely many places. It is stored as the
//! occupied positive indices together with the vacant negative ones (holes).
//! Half-integers are carried as odd `i64`s holding twice their value.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hamiltonian::hamiltonian_generating_coefficients;
use crate::partition::{partitions_up_to, Partition};
use crate::poly::Polynomial;
use crate::ring::{factorial, rat, Ring};
use crate::scalar::ExactScalar;
use crate::schur::{complete_homogeneous, negate_variables, schur};
use crate::series::{inv_s_series, Series};
use crate::Rational;

type RPoly = Polynomial<Rational>;

/// A half-integer k, stored as 2k.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct HalfInt(i64);

impl HalfInt {
    pub fn from_twice(twice: i64) -> Result<Self> {
        if twice % 2 == 0 {
            return Err(Error::InvalidArgument(format!(
                "{twice}/2 is not a half-integer"
            )));
        }
        Ok(HalfInt(twice))
    }

    /// n + ½
    pub fn plus_half(n: i64) -> Self {
        HalfInt(2 * n + 1)
    }

    pub fn twice(self) -> i64 {
        self.0
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn shift(self, n: i64) -> Self {
        HalfInt(self.0 + 2 * n)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2", self.0)
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct WedgeState {
    positive: BTreeSet<HalfInt>,
    holes: BTreeSet<HalfInt>,
}

impl WedgeState {
    pub fn vacuum() -> Self {
        Self::default()
    }

    /// v_λ = e_{λ₁−½} ∧ e_{λ₂−3/2} ∧ …
    pub fn of_partition(lambda: &Partition) -> Self {
        let f = lambda.frobenius();
        WedgeState {
            positive: f
                .alpha
                .iter()
                .map(|&a| HalfInt::plus_half(a as i64))
                .collect(),
            holes: f
                .beta
                .iter()
                .map(|&b| HalfInt::plus_half(-(b as i64) - 1))
                .collect(),
        }
    }

    pub fn charge(&self) -> i64 {
        self.positive.len() as i64 - self.holes.len() as i64
    }

    /// Σ positive indices + Σ |holes|; equals |λ| in charge zero.
    pub fn energy(&self) -> i64 {
        let p: i64 = self.positive.iter().map(|k| k.0).sum();
        let h: i64 = self.holes.iter().map(|k| -k.0).sum();
        (p + h) / 2
    }

    pub fn is_occupied(&self, k: HalfInt) -> bool {
        if k.is_positive() {
            self.positive.contains(&k)
        } else {
            !self.holes.contains(&k)
        }
    }

    /// #{s ∈ S : s > k}, finite for every k.
    fn count_above(&self, k: HalfInt) -> usize {
        if k.is_positive() {
            self.positive.range(HalfInt(k.0 + 1)..).count()
        } else {
            // negative half-integers strictly between k and 0
            let window = ((-k.0 - 1) / 2) as usize;
            let holes_above = self.holes.range(HalfInt(k.0 + 1)..).count();
            self.positive.len() + window - holes_above
        }
    }

    fn insert(&mut self, k: HalfInt) {
        if k.is_positive() {
            self.positive.insert(k);
        } else {
            self.holes.remove(&k);
        }
    }

    fn remove(&mut self, k: HalfInt) {
        if k.is_positive() {
            self.positive.remove(&k);
        } else {
            self.holes.insert(k);
        }
    }

    /// e_k ∧ v, as (sign, state).
    pub fn wedge(&self, k: HalfInt) -> Option<(bool, WedgeState)> {
        if self.is_occupied(k) {
            return None;
        }
        let negative = self.count_above(k) % 2 == 1;
        let mut out = self.clone();
        out.insert(k);
        Some((negative, out))
    }

    /// ∂/∂e_k v, as (sign, state).
    pub fn contract(&self, k: HalfInt) -> Option<(bool, WedgeState)> {
        if !self.is_occupied(k) {
            return None;
        }
        let negative = self.count_above(k) % 2 == 1;
        let mut out = self.clone();
        out.remove(k);
        Some((negative, out))
    }

    /// The partition labelling a charge-zero state.
    pub fn to_partition(&self) -> Result<Partition> {
        if self.charge() != 0 {
            return Err(Error::InvalidArgument(format!(
                "state has charge {}, not 0",
                self.charge()
            )));
        }
        let depth = self
            .holes
            .iter()
            .next()
            .map_or(0, |h| ((-h.0 + 1) / 2) as usize);
        let mut occupied: Vec<i64> = self.positive.iter().rev().map(|k| k.0).collect();
        for i in 1..=depth as i64 {
            let k = -2 * i + 1;
            if !self.holes.contains(&HalfInt(k)) {
                occupied.push(k);
            }
        }
        let parts: Vec<u32> = occupied
            .iter()
            .enumerate()
            .map(|(i, &twice)| ((twice + 1) / 2 + i as i64) as u32)
            .filter(|&p| p > 0)
            .collect();
        Partition::new(parts)
    }

    /// The finitely many indices where the state differs from the vacuum.
    pub fn support(&self) -> impl Iterator<Item = HalfInt> + '_ {
        self.positive.iter().chain(self.holes.iter()).copied()
    }
}

impl fmt::Display for WedgeState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_partition() {
            Ok(p) => write!(f, "{p}"),
            Err(_) => {
                let pos: Vec<String> = self.positive.iter().map(|k| k.to_string()).collect();
                let holes: Vec<String> = self.holes.iter().map(|k| k.to_string()).collect();
                write!(f, "+{{{}}} -{{{}}}", pos.join(","), holes.join(","))
            }
        }
    }
}

/// A finite linear combination of wedge states.
#[derive(Clone, PartialEq, Debug)]
pub struct FermionVector<C> {
    terms: BTreeMap<WedgeState, C>,
}

impl<C: Ring> FermionVector<C> {
    pub fn zero() -> Self {
        FermionVector {
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(state: WedgeState) -> Self {
        let mut v = Self::zero();
        v.add_term(state, C::one());
        v
    }

    pub fn vacuum() -> Self {
        Self::basis(WedgeState::vacuum())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WedgeState, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, s: &WedgeState) -> C {
        self.terms.get(s).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, s: WedgeState, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&s) {
            Some(e) => {
                *e += &c;
                if e.is_zero() {
                    self.terms.remove(&s);
                }
            }
            None => {
                self.terms.insert(s, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(s.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(s.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero();
        for (s, a) in &self.terms {
            out.add_term(s.clone(), a.clone() * c);
        }
        out
    }

    fn act(&self, f: impl Fn(&WedgeState) -> Option<(bool, WedgeState)>) -> Self {
        let mut out = Self::zero();
        for (s, c) in &self.terms {
            if let Some((neg, t)) = f(s) {
                out.add_term(t, if neg { -c.clone() } else { c.clone() });
            }
        }
        out
    }

    /// ψ_k = e_k ∧
    pub fn psi(&self, k: HalfInt) -> Self {
        self.act(|s| s.wedge(k))
    }

    /// ψ*_k = ∂/∂e_k
    pub fn psi_star(&self, k: HalfInt) -> Self {
        self.act(|s| s.contract(k))
    }

    pub fn max_energy(&self) -> i64 {
        self.terms.keys().map(WedgeState::energy).max().unwrap_or(0)
    }
}

impl FermionVector<RPoly> {
    /// K(q) = Σ_n (q_n/n) Σ_j ψ_j ψ*_{j+n}; lowers energy by n.
    pub fn apply_k(&self, sign: i64) -> Self {
        let mut out = Self::zero();
        for (state, c) in &self.terms {
            let energy = state.energy();
            // occupied indices that can move down: positives, and negatives above the lowest hole
            let lowest = state.holes.iter().next().map_or(-1, |h| h.0);
            let mut movable: Vec<HalfInt> = state.positive.iter().copied().collect();
            let mut k = -1;
            while k > lowest {
                if !state.holes.contains(&HalfInt(k)) {
                    movable.push(HalfInt(k));
                }
                k -= 2;
            }
            for s in movable {
                for n in 1..=energy {
                    let j = s.shift(-n);
                    let Some((neg1, mid)) = state.contract(s) else {
                        continue;
                    };
                    let Some((neg2, end)) = mid.wedge(j) else {
                        continue;
                    };
                    let q = RPoly::var(n as u32)
                        .scale_rational(&Rational::new(BigInt::from(sign), BigInt::from(n)));
                    let term = c.clone() * &q;
                    out.add_term(end, if neg1 ^ neg2 { -term } else { term });
                }
            }
        }
        out
    }

    /// e^{±K} v, finite because K strictly lowers energy.
    pub fn exp_k(&self, sign: i64) -> Self {
        let mut total = self.clone();
        let mut power = self.clone();
        let mut m = 1;
        while !power.is_zero() {
            power = power.apply_k(sign).scale(&RPoly::constant(Rational::new(
                BigInt::one(),
                BigInt::from(m),
            )));
            total = total.add(&power);
            m += 1;
        }
        total
    }

    /// Σ_{m ≥ 0} h_m(±q) ψ_{i−m} v (sign +) or Σ h_m(−q) ψ*_{i+m} v.
    fn dressed_rhs(&self, i: HalfInt, star: bool) -> Self {
        let mut out = Self::zero();
        let top = 2 * self.max_energy() + 2 + (i.0.abs() / 2);
        for m in 0..=top {
            let h = complete_homogeneous(m, m.max(0) as u32);
            let (coef, v) = if star {
                (negate_variables(&h), self.psi_star(i.shift(m)))
            } else {
                (h, self.psi(i.shift(-m)))
            };
            out = out.add(&v.scale(&coef));
        }
        out
    }
}

/// |λ⟩ = ψ_{α₁+½} … ψ_{α_d+½} ψ*_{−β_d−½} … ψ*_{−β₁−½} |0⟩.
pub fn state_of_partition<C: Ring>(lambda: &Partition) -> FermionVector<C> {
    let f = lambda.frobenius();
    let mut v = FermionVector::vacuum();
    for &b in &f.beta {
        v = v.psi_star(HalfInt::plus_half(-(b as i64) - 1));
    }
    for &a in f.alpha.iter().rev() {
        v = v.psi(HalfInt::plus_half(a as i64));
    }
    v
}

/// Φ(ξ) = ⟨0| e^{K(q)} ξ ⟩.
pub fn boson_fermion_map(v: &FermionVector<RPoly>) -> RPoly {
    v.exp_k(1).coeff(&WedgeState::vacuum())
}

/// Σ ± e^{z·k} with half-integer k, merged by exponent.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ExponentialSum {
    /// 2k ↦ signed multiplicity
    terms: BTreeMap<i64, i64>,
}

impl ExponentialSum {
    pub fn add(&mut self, sign: i64, exponent: HalfInt) {
        let e = self.terms.entry(exponent.0).or_insert(0);
        *e += sign;
        if *e == 0 {
            self.terms.remove(&exponent.0);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sorted `[sign, 2·exponent]` pairs, one per unit of multiplicity.
    pub fn entries(&self) -> Vec<[i64; 2]> {
        let mut out = Vec::new();
        for (&twice, &mult) in &self.terms {
            for _ in 0..mult.abs() {
                out.push([mult.signum(), twice]);
            }
        }
        out
    }

    /// Coefficient of z^n in the expansion.
    pub fn z_coefficient(&self, n: u32) -> Rational {
        let mut acc = Rational::zero();
        for (&twice, &mult) in &self.terms {
            let k = Rational::new(BigInt::from(twice), BigInt::from(2));
            acc += Ring::pow(&k, n) * rat(mult);
        }
        acc / Rational::from_integer(factorial(n))
    }

    /// Row form Σ_{i ≤ l(λ)} [e^{z(λ_i−i+½)} − e^{z(−i+½)}].
    pub fn row_form(lambda: &Partition) -> Self {
        let mut s = Self::default();
        for (i, &part) in lambda.parts().iter().enumerate() {
            let i = i as i64 + 1;
            s.add(1, HalfInt::plus_half(part as i64 - i));
            s.add(-1, HalfInt::plus_half(-i));
        }
        s
    }

    /// Frobenius form Σ_{i ≤ d(λ)} [e^{z(α_i+½)} − e^{−z(β_i+½)}].
    pub fn frobenius_form(lambda: &Partition) -> Self {
        let f = lambda.frobenius();
        let mut s = Self::default();
        for (&a, &b) in f.alpha.iter().zip(&f.beta) {
            s.add(1, HalfInt::plus_half(a as i64));
            s.add(-1, HalfInt::plus_half(-(b as i64) - 1));
        }
        s
    }
}

impl fmt::Display for ExponentialSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self
            .entries()
            .iter()
            .map(|[s, e]| format!("[{s},{e}]"))
            .collect();
        write!(f, "[{}]", items.join(","))
    }
}

/// Apply O(z) = Σ_k e^{kz} :ψ_k ψ*_k: one summand at a time and read off the eigenvalue.
pub fn diagonal_operator_eigenvalue(lambda: &Partition) -> Result<ExponentialSum> {
    let v: FermionVector<Rational> = state_of_partition(lambda);
    let (state, c) = v
        .terms()
        .next()
        .map(|(s, c)| (s.clone(), c.clone()))
        .ok_or_else(|| Error::InvalidArgument("zero state".into()))?;
    let bound = lambda.size() as i64 + 1;
    let mut sum = ExponentialSum::default();
    for n in -bound..bound {
        let k = HalfInt::plus_half(n);
        // :ψ_k ψ*_k: is ψ_k ψ*_k for k > 0 and −ψ*_k ψ_k for k < 0
        let image = if k.is_positive() {
            v.psi_star(k).psi(k)
        } else {
            v.psi(k).psi_star(k).scale(&rat(-1))
        };
        if image.is_zero() {
            continue;
        }
        if image.len() != 1 || image.terms().next().unwrap().0 != &state {
            return Err(Error::InvalidArgument(format!(
                "summand {k} is not diagonal on {lambda}"
            )));
        }
        let ratio = image.coeff(&state) / &c;
        let sign = if ratio == rat(1) {
            1
        } else if ratio == rat(-1) {
            -1
        } else {
            return Err(Error::InvalidArgument(format!(
                "summand {k} has eigenvalue {ratio} on {lambda}"
            )));
        };
        sum.add(sign, k);
    }
    Ok(sum)
}

/// Every wedge state of charge `charge` and energy ≤ `max_energy`.
pub fn states_up_to(max_energy: usize, charge: i64) -> Vec<WedgeState> {
    partitions_up_to(max_energy + charge.unsigned_abs() as usize * 4)
        .iter()
        .map(|lambda| {
            let mut s = WedgeState::of_partition(lambda);
            shift_charge(&mut s, charge);
            s
        })
        .filter(|s| s.energy() <= max_energy as i64)
        .collect()
}

/// Shift every occupied index up (charge > 0) or down, preserving the shape.
fn shift_charge(s: &mut WedgeState, charge: i64) {
    if charge == 0 {
        return;
    }
    let lambda = s.to_partition().expect("charge zero input");
    let mut occupied: Vec<i64> = (0..lambda.len().max(1) + charge.unsigned_abs() as usize + 2)
        .map(|i| 2 * (lambda.part(i + 1) as i64 - i as i64 - 1) + 1 + 2 * charge)
        .collect();
    occupied.sort_unstable_by(|a, b| b.cmp(a));
    let bottom = *occupied.last().unwrap();
    let mut out = WedgeState::vacuum();
    for &k in &occupied {
        if k > 0 {
            out.positive.insert(HalfInt(k));
        }
    }
    let mut k = -1;
    while k > bottom {
        if !occupied.contains(&k) {
            out.holes.insert(HalfInt(k));
        }
        k -= 2;
    }
    *s = out;
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct FermionFailure {
    pub check: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct FermionReport {
    pub checks: usize,
    pub failures: Vec<FermionFailure>,
}

impl FermionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// {ψ_i, ψ*_j} = δ_{ij}, {ψ_i, ψ_j} = {ψ*_i, ψ*_j} = 0 on every state of energy ≤ E
/// and charge in {−1, 0, 1}, for |i|, |j| ≤ `max_index` (a half-integer bound, given doubled).
pub fn verify_anticommutators(max_energy: usize, max_twice_index: i64) -> FermionReport {
    let indices: Vec<HalfInt> = (-max_twice_index..=max_twice_index)
        .filter(|k| k % 2 != 0)
        .map(HalfInt)
        .collect();
    let states: Vec<WedgeState> = (-1..=1).flat_map(|c| states_up_to(max_energy, c)).collect();
    let mut checks = 0;
    let mut failures = Vec::new();
    for s in &states {
        let v: FermionVector<Rational> = FermionVector::basis(s.clone());
        for &i in &indices {
            for &j in &indices {
                checks += 3;
                let mixed = v.psi_star(j).psi(i).add(&v.psi(i).psi_star(j));
                let expect = if i == j {
                    v.clone()
                } else {
                    FermionVector::zero()
                };
                if mixed != expect {
                    failures.push(FermionFailure {
                        check: format!("{{psi({i}), psi*({j})}}"),
                        detail: s.to_string(),
                    });
                }
                if !v.psi(j).psi(i).add(&v.psi(i).psi(j)).is_zero() {
                    failures.push(FermionFailure {
                        check: format!("{{psi({i}), psi({j})}}"),
                        detail: s.to_string(),
                    });
                }
                if !v
                    .psi_star(j)
                    .psi_star(i)
                    .add(&v.psi_star(i).psi_star(j))
                    .is_zero()
                {
                    failures.push(FermionFailure {
                        check: format!("{{psi*({i}), psi*({j})}}"),
                        detail: s.to_string(),
                    });
                }
            }
        }
    }
    FermionReport { checks, failures }
}

/// e^{K} ψ_i e^{−K} = Σ h_m(q) ψ_{i−m} and e^{K} ψ*_i e^{−K} = Σ h_m(−q) ψ*_{i+m},
/// applied to every charge-zero state of energy ≤ E.
pub fn dressed_fermion_check(i: HalfInt, max_energy: usize) -> bool {
    states_up_to(max_energy, 0).iter().all(|s| {
        let v: FermionVector<RPoly> = FermionVector::basis(s.clone());
        let undressed = v.exp_k(-1);
        let lhs = undressed.psi(i).exp_k(1);
        let lhs_star = undressed.psi_star(i).exp_k(1);
        lhs == v.dressed_rhs(i, false) && lhs_star == v.dressed_rhs(i, true)
    })
}

/// Per-partition comparison of Φ(|λ⟩) with s_λ(q): the sign σ with Φ(|λ⟩) = σ s_λ.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct BosonFermionRow {
    pub partition: String,
    pub b: u32,
    pub d: usize,
    /// ±1, or 0 when Φ(|λ⟩) is not a multiple of s_λ.
    pub sign: i64,
}

pub fn boson_fermion_table(max_weight: usize) -> Vec<BosonFermionRow> {
    partitions_up_to(max_weight)
        .par_iter()
        .map(|lambda| {
            let image = boson_fermion_map(&state_of_partition(lambda));
            let s = schur(lambda);
            let sign = if image == *s {
                1
            } else if image == -(*s).clone() {
                -1
            } else {
                0
            };
            BosonFermionRow {
                partition: lambda.to_string(),
                b: lambda.b_sign_exponent(),
                d: lambda.diagonal(),
                sign,
            }
        })
        .collect()
}

/// Φ(v_λ) = s_λ for the bare wedge vectors.
pub fn wedge_basis_maps_to_schur(max_weight: usize) -> bool {
    partitions_up_to(max_weight).par_iter().all(|lambda| {
        let v = FermionVector::basis(WedgeState::of_partition(lambda));
        boson_fermion_map(&v) == *schur(lambda)
    })
}

/// Ĥ(z, u₀, ħ=1) s_λ(q) against e^{zu₀}(z·eig_O(λ) + 1/s(z)) coefficient by coefficient,
/// with the eigenvalue read off the wedge computation.
pub fn verify_fermionic_hamiltonian(k_max: i32, max_weight: usize) -> Result<FermionReport> {
    let ops = hamiltonian_generating_coefficients(k_max, max_weight)?;
    let one = rat(1);
    let ops: Vec<_> = ops
        .iter()
        .map(|op| op.at_eps(&one).map(|o| o.prepare()))
        .collect::<Result<_>>()?;
    let order = (k_max + 2) as usize;
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
    let partitions = partitions_up_to(max_weight);
    let results: Vec<Result<Vec<FermionFailure>>> = partitions
        .par_iter()
        .map(|lambda| {
            let eig = diagonal_operator_eigenvalue(lambda)?;
            let mut inner = vec![ExactScalar::zero()];
            for j in 1..=order {
                inner.push(ExactScalar::constant(eig.z_coefficient(j as u32 - 1)));
            }
            let bracket = Series::new(inner, order)
                + Series::new(
                    inv_s
                        .coeffs()
                        .iter()
                        .map(|c| ExactScalar::constant(c.clone()))
                        .collect(),
                    order,
                );
            let full = exp_u0.mul_ref(&bracket);
            let s: Polynomial<ExactScalar> =
                schur(lambda).map_coeffs(|c| ExactScalar::constant(c.clone()));
            let mut fails = Vec::new();
            for (i, op) in ops.iter().enumerate() {
                let expected = s.scale(&full.coeff(i + 1));
                if op.apply(&s) != expected {
                    fails.push(FermionFailure {
                        check: format!("H{} at hbar=1", i as i32 - 1),
                        detail: lambda.to_string(),
                    });
                }
            }
            Ok(fails)
        })
        .collect();
    let mut failures = Vec::new();
    for r in results {
        failures.extend(r?);
    }
    Ok(FermionReport {
        checks: partitions.len() * ops.len(),
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn h(twice: i64) -> HalfInt {
        HalfInt::from_twice(twice).unwrap()
    }

    #[test]
    fn vacuum_rules() {
        let vac: FermionVector<Rational> = FermionVector::vacuum();
        assert!(vac.psi_star(h(1)).is_zero());
        assert!(vac.psi(h(-1)).is_zero());
        let v = vac.psi(h(1));
        assert_eq!(v.len(), 1);
        assert_eq!(v.terms().next().unwrap().0.charge(), 1);
    }

    #[test]
    fn partitions_roundtrip_through_wedges() {
        for lambda in partitions_up_to(7) {
            let s = WedgeState::of_partition(&lambda);
            assert_eq!(s.energy(), lambda.size() as i64);
            assert_eq!(s.to_partition().unwrap(), lambda);
        }
    }

    #[test]
    fn first_states() {
        let v: FermionVector<Rational> = state_of_partition(&Partition::empty());
        assert_eq!(v, FermionVector::vacuum());
        let v: FermionVector<Rational> = state_of_partition(&p(&[2, 1]));
        assert_eq!(v.len(), 1);
        assert_eq!(
            v.terms().next().unwrap().0,
            &WedgeState::of_partition(&p(&[2, 1]))
        );
        // ψ_{½} ψ*_{−½} |0⟩ = +v_(1)
        let v: FermionVector<Rational> = state_of_partition(&p(&[1]));
        assert_eq!(v.coeff(&WedgeState::of_partition(&p(&[1]))), rat(1));
    }

    #[test]
    fn phi_of_first_state_is_plus_q1() {
        let image = boson_fermion_map(&state_of_partition(&p(&[1])));
        assert_eq!(image, RPoly::var(1));
        assert_eq!(boson_fermion_map(&FermionVector::vacuum()), RPoly::one());
    }

    #[test]
    fn diagonal_eigenvalues() {
        assert!(diagonal_operator_eigenvalue(&Partition::empty())
            .unwrap()
            .is_zero());
        let e = diagonal_operator_eigenvalue(&p(&[1])).unwrap();
        assert_eq!(e.entries(), vec![[-1, -1], [1, 1]]);
        for lambda in partitions_up_to(6) {
            let e = diagonal_operator_eigenvalue(&lambda).unwrap();
            assert_eq!(e, ExponentialSum::row_form(&lambda));
            assert_eq!(e, ExponentialSum::frobenius_form(&lambda));
        }
    }

    #[test]
    fn small_anticommutators() {
        assert!(verify_anticommutators(2, 5).passed());
    }

    #[test]
    fn dressed_small() {
        assert!(dressed_fermion_check(h(-1), 0));
        assert!(dressed_fermion_check(h(3), 2));
    }

    #[test]
    fn charged_states() {
        for c in -1..=1 {
            let states = states_up_to(3, c);
            assert!(states.iter().all(|s| s.charge() == c && s.energy() <= 3));
            let distinct: BTreeSet<_> = states.iter().collect();
            assert_eq!(distinct.len(), states.len());
        }
    }
}
