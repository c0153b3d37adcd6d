//! Hirota bilinear operators and the KP checks on truncated tau functions built
//! from the disk potential.
//!
//! Exponentials e^{t_k E_k(λ)/ħ} are made exact by substituting e^{t_k/d_k} ↦ v_k,
//! where d_k is the common denominator of the exponents, so every amplitude
//! carries an honest Laurent monomial in the v's.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::disk::DiskPotential;
use crate::error::{Error, Result};
use crate::laurent::{Exponents, LaurentPoly};
use crate::partition::{partitions_of, Partition};
use crate::poly::{Monomial, Polynomial};
use crate::ring::{binomial, factorial, Ring};
use crate::scalar::ExactScalar;
use crate::Rational;

/// Polynomial in D₁, D₂, … (variable index k is D_k).
pub type HirotaPolynomial<C> = Polynomial<C>;

/// How ε enters a tau function.
#[derive(Clone, Debug, PartialEq)]
pub enum EpsChoice {
    Value(Rational),
    Symbolic,
}

impl fmt::Display for EpsChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EpsChoice::Value(e) => write!(f, "{e}"),
            EpsChoice::Symbolic => write!(f, "symbolic"),
        }
    }
}

/// τ(p) truncated at weight `max_weight`, coefficients Laurent polynomials in v_k.
#[derive(Clone)]
pub struct TruncatedTau<C> {
    pub max_weight: usize,
    /// (k, d_k) for every active t_k.
    pub active: Vec<(usize, BigInt)>,
    pub hbar: C,
    pub specialization: String,
    pub series: Polynomial<LaurentPoly<C>>,
}

impl<C: Ring> fmt::Debug for TruncatedTau<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TruncatedTau")
            .field("max_weight", &self.max_weight)
            .field("active", &self.active)
            .field("specialization", &self.specialization)
            .field("terms", &self.series.len())
            .finish()
    }
}

impl<C: Ring> TruncatedTau<C> {
    /// Wrap a series; the constant term must be a unit.
    pub fn from_series(
        series: Polynomial<LaurentPoly<C>>,
        max_weight: usize,
        hbar: C,
        specialization: impl Into<String>,
    ) -> Result<Self> {
        let c0 = series.constant_term();
        if c0.try_inverse().is_none() {
            return Err(Error::NotInvertible(format!(
                "constant term of tau has {} terms",
                c0.len()
            )));
        }
        Ok(TruncatedTau {
            max_weight,
            active: Vec::new(),
            hbar,
            specialization: specialization.into(),
            series: series.truncate_weight(max_weight as u64),
        })
    }
}

fn lcm_of_denominators(values: &[Rational]) -> BigInt {
    values
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

fn tau_from_disk_with<C: Ring>(
    pot: &DiskPotential,
    active: &BTreeSet<usize>,
    u0: &Rational,
    eps: &EpsChoice,
    convert: impl Fn(&ExactScalar) -> Result<C>,
    hbar: C,
) -> Result<TruncatedTau<C>> {
    if let Some(&k) = active.iter().find(|&&k| k > pot.k_max) {
        return Err(Error::InvalidArgument(format!(
            "t_{k} is active but the potential stops at t_{}",
            pot.k_max
        )));
    }
    let pot = pot.subs_u0(u0);
    let mut dens = Vec::new();
    let mut exps: Vec<Vec<Rational>> = vec![Vec::new(); pot.amplitudes.len()];
    for &k in active {
        let mut column = Vec::with_capacity(pot.amplitudes.len());
        for amp in &pot.amplitudes {
            let x = &amp.exponents[k];
            let r = match eps {
                EpsChoice::Value(e) => Some(x.eval(e, u0)?),
                EpsChoice::Symbolic => x.to_rational(),
            };
            let r = r.ok_or_else(|| Error::NonRationalExponent {
                k,
                partition: amp.partition.to_string(),
                value: x.to_string(),
            })?;
            column.push(r);
        }
        let d = lcm_of_denominators(&column);
        for (row, r) in exps.iter_mut().zip(&column) {
            row.push(r * Rational::from_integer(d.clone()));
        }
        dens.push((k, d));
    }
    let mut series = Polynomial::zero();
    for (amp, row) in pot.amplitudes.iter().zip(&exps) {
        let mut e = vec![0i64; active.iter().max().map_or(0, |m| m + 1)];
        for (&k, r) in active.iter().zip(row) {
            e[k] = r.to_integer().to_i64().ok_or_else(|| {
                Error::InvalidArgument(format!("exponent {r} does not fit in i64"))
            })?;
        }
        let v = Exponents::new(e);
        for (m, c) in amp.p_part().terms() {
            series.add_term(m.clone(), LaurentPoly::monomial(v.clone(), convert(c)?));
        }
    }
    let names: Vec<String> = active.iter().map(|k| k.to_string()).collect();
    let spec = format!("active={{{}}}, u0={u0}, eps={eps}", names.join(","));
    let mut tau = TruncatedTau::from_series(series, pot.max_weight, hbar, spec)?;
    tau.active = dens;
    Ok(tau)
}

/// τ(p) = disk potential with ε set to a rational value.
pub fn tau_from_disk(
    pot: &DiskPotential,
    active: &BTreeSet<usize>,
    u0: &Rational,
    eps: &Rational,
) -> Result<TruncatedTau<Rational>> {
    if eps.is_zero() {
        return Err(Error::DivisionByZero("eps"));
    }
    tau_from_disk_with(
        pot,
        active,
        u0,
        &EpsChoice::Value(eps.clone()),
        |c| c.eval(eps, u0),
        eps * eps,
    )
}

/// τ(p) = disk potential with ε kept symbolic; refuses ε-dependent exponents.
pub fn tau_from_disk_symbolic(
    pot: &DiskPotential,
    active: &BTreeSet<usize>,
    u0: &Rational,
) -> Result<TruncatedTau<ExactScalar>> {
    tau_from_disk_with(
        pot,
        active,
        u0,
        &EpsChoice::Symbolic,
        |c| Ok(c.subs_u0(u0)),
        ExactScalar::hbar(),
    )
}

// ---------------------------------------------------------------------------

/// Σ_k k·a_k for a D-monomial.
fn d_weight(m: &Monomial) -> u64 {
    m.weight()
}

/// P(D) f·g = P(∂_y) f(p+y) g(p−y)|_{y=0}, kept to weight `max_weight`.
pub fn hirota_apply<S: Ring>(
    p: &HirotaPolynomial<S>,
    f: &Polynomial<S>,
    g: &Polynomial<S>,
    max_weight: u64,
) -> Polynomial<S> {
    let mut df: BTreeMap<Monomial, Polynomial<S>> = BTreeMap::new();
    let mut dg: BTreeMap<Monomial, Polynomial<S>> = BTreeMap::new();
    let mut out = Polynomial::zero();
    for (a, c) in p.terms() {
        let w = d_weight(a);
        if w > max_weight + f.max_weight().unwrap_or(0) + g.max_weight().unwrap_or(0) {
            continue;
        }
        for b in sub_monomials(a) {
            let rest = a.div(&b).expect("b divides a");
            let mut coef = BigInt::one();
            for &(k, ak) in a.pairs() {
                coef *= binomial(ak, b.exponent(k));
            }
            if rest.degree() % 2 == 1 {
                coef = -coef;
            }
            let fb = df
                .entry(b.clone())
                .or_insert_with(|| f.derivative_multi(&b))
                .clone();
            let gr = dg
                .entry(rest.clone())
                .or_insert_with(|| g.derivative_multi(&rest));
            let term = fb.mul_truncated(gr, max_weight);
            out += &term.scale(&c.scale(&Rational::from_integer(coef)));
        }
    }
    out
}

fn sub_monomials(a: &Monomial) -> Vec<Monomial> {
    let mut out = vec![Vec::new()];
    for &(k, e) in a.pairs() {
        out = out
            .into_iter()
            .flat_map(|pre| {
                (0..=e).map(move |j| {
                    let mut v = pre.clone();
                    v.push((k, j));
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(Monomial::from_pairs).collect()
}

/// Highest D-weight in P.
pub fn hirota_weight<C: Ring>(p: &HirotaPolynomial<C>) -> u64 {
    p.max_weight().unwrap_or(0)
}

/// Drop monomials of odd total degree; they vanish on τ·τ.
pub fn even_part<C: Ring>(p: &HirotaPolynomial<C>) -> HirotaPolynomial<C> {
    Polynomial::from_terms(
        p.terms()
            .filter(|(m, _)| m.degree() % 2 == 0)
            .map(|(m, c)| (m.clone(), c.clone())),
    )
}

fn dm(pairs: &[(u32, u32)]) -> Monomial {
    Monomial::from_pairs(pairs.iter().copied())
}

/// 12D₂² − 12D₁D₃ + ħD₁⁴ (which = 1) and 6D₂D₃ − 6D₁D₄ + ħD₁³D₂ (which = 2).
pub fn printed_bilinear<C: Ring>(which: u8, hbar: &C) -> Result<HirotaPolynomial<C>> {
    let terms = match which {
        1 => vec![
            (dm(&[(2, 2)]), C::from_i64(12)),
            (dm(&[(1, 1), (3, 1)]), C::from_i64(-12)),
            (dm(&[(1, 4)]), hbar.clone()),
        ],
        2 => vec![
            (dm(&[(2, 1), (3, 1)]), C::from_i64(6)),
            (dm(&[(1, 1), (4, 1)]), C::from_i64(-6)),
            (dm(&[(1, 3), (2, 1)]), hbar.clone()),
        ],
        _ => {
            return Err(Error::InvalidArgument(format!(
                "no printed equation {which}"
            )))
        }
    };
    Ok(Polynomial::from_terms(terms))
}

/// Σ_{ν ⊢ n} ∏_k (x_k/k)^{m_k}/m_k! with x_k = scale·k·D_k, i.e. h_n(scale·D̃).
fn h_of_dtilde<C: Ring>(n: usize, scale: &C) -> HirotaPolynomial<C> {
    let mut out = Polynomial::zero();
    for nu in partitions_of(n) {
        let m = Monomial::from_partition(&nu);
        let c = scale
            .pow(nu.len() as u32)
            .scale(&Rational::new(BigInt::one(), m.factorial_product()));
        out.add_term(m, c);
    }
    out
}

/// Coefficient of y^η in Σ_j h_j(−2y) h_{j+1}(εD̃) e^{εΣ y_k D_k}.
pub fn kp_generating_coefficient<C: Ring>(eta: &Monomial, eps: &C) -> HirotaPolynomial<C> {
    let mut out = Polynomial::zero();
    for gamma1 in sub_monomials(eta) {
        let gamma2 = eta.div(&gamma1).expect("divides");
        // [y^γ₁] h_j(−2y), j = wt γ₁
        let mut c1 = Rational::new(BigInt::one(), gamma1.factorial_product());
        for &(k, e) in gamma1.pairs() {
            c1 *= Rational::new(BigInt::from(-2), BigInt::from(k)).pow(e as i32);
        }
        let h = h_of_dtilde::<C>(gamma1.weight() as usize + 1, eps);
        // [y^γ₂] e^{εΣ y_k D_k} = ε^{deg γ₂} D^{γ₂}/γ₂!
        let c2 = eps
            .pow(gamma2.degree())
            .scale(&Rational::new(BigInt::one(), gamma2.factorial_product()));
        let e = Polynomial::term(gamma2, c2);
        out += &h.mul_ref(&e).scale(&C::from_rational(&c1));
    }
    out
}

/// Is `p` a multiple c·`q`? Returns c.
pub fn proportionality_factor<C: Ring>(
    p: &HirotaPolynomial<C>,
    q: &HirotaPolynomial<C>,
) -> Option<C> {
    let (m, qc) = q.terms().next()?;
    let factor = p.coeff(m) * &qc.try_inverse()?;
    if factor.is_zero() {
        return None;
    }
    (q.scale(&factor) == *p).then_some(factor)
}

// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct KpReport {
    pub equation: String,
    pub specialization: String,
    pub weight_validated: u64,
    pub residual_zero: bool,
    pub max_residual_term: Option<String>,
}

impl KpReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serialisable")
    }
}

fn render_first<C: Ring + fmt::Display>(r: &Polynomial<LaurentPoly<C>>) -> Option<String> {
    r.terms()
        .next()
        .map(|(m, c)| format!("({c}) * {}", m.render("p")))
}

fn valid_weight<C>(tau: &TruncatedTau<C>, loss: u64, what: &str) -> Result<u64> {
    (tau.max_weight as u64).checked_sub(loss).ok_or_else(|| {
        Error::InvalidArgument(format!(
            "{what} needs truncation weight ≥ {loss}, tau has {}",
            tau.max_weight
        ))
    })
}

fn lift<C: Ring>(p: &HirotaPolynomial<C>) -> HirotaPolynomial<LaurentPoly<C>> {
    p.map_coeffs(|c| LaurentPoly::constant(c.clone()))
}

/// P(D)τ·τ to the weight where it is exact.
pub fn hirota_residual<C: Ring + fmt::Display>(
    p: &HirotaPolynomial<C>,
    tau: &TruncatedTau<C>,
    equation: impl Into<String>,
) -> Result<KpReport> {
    let equation = equation.into();
    let w = valid_weight(tau, hirota_weight(p), &equation)?;
    let r = hirota_apply(&lift(p), &tau.series, &tau.series, w);
    Ok(KpReport {
        equation,
        specialization: tau.specialization.clone(),
        weight_validated: w,
        residual_zero: r.is_zero(),
        max_residual_term: render_first(&r),
    })
}

/// Printed bilinear equation 1 or 2 on τ·τ.
pub fn kp_bilinear_check<C: Ring + fmt::Display>(
    which: u8,
    tau: &TruncatedTau<C>,
) -> Result<KpReport> {
    let p = printed_bilinear(which, &tau.hbar)?;
    hirota_residual(&p, tau, format!("bilinear {which}"))
}

#[derive(Clone, Debug, Serialize)]
pub struct HierarchyReport {
    pub y_order: u32,
    pub slices: Vec<KpReport>,
    /// y-monomial ↦ c with (coefficient of y^η) ≡ c·(printed equation) mod odd D-monomials.
    pub printed_factors: Vec<(String, u8, String)>,
}

impl HierarchyReport {
    pub fn passed(&self) -> bool {
        self.slices.iter().all(|s| s.residual_zero)
    }
}

/// y-monomials of degree 1..=`degree` with weight ≤ `max_weight`.
pub fn y_monomials(degree: u32, max_weight: u64) -> Vec<Monomial> {
    fn rec(start: u32, left: u32, w: u64, max_w: u64, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if !cur.is_empty() {
            out.push(Monomial::from_partition(
                &Partition::new(cur.iter().rev().copied().collect()).unwrap(),
            ));
        }
        if left == 0 {
            return;
        }
        for k in start..=(max_w - w) as u32 {
            cur.push(k);
            rec(k, left - 1, w + k as u64, max_w, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, degree, 0, max_weight, &mut Vec::new(), &mut out);
    out
}

/// Every y-coefficient of the generating identity of total y-degree ≤ `y_order`
/// applied to τ·τ, for all η with wt(η) + 1 ≤ W.
pub fn kp_hierarchy_check<C: Ring + fmt::Display>(
    tau: &TruncatedTau<C>,
    y_order: u32,
    eps: &C,
) -> Result<HierarchyReport> {
    if y_order > 3 {
        return Err(Error::BoundExceeded {
            what: "y-order",
            value: y_order as usize,
            limit: 3,
        });
    }
    let w = tau.max_weight as u64;
    let mut etas = vec![Monomial::one()];
    if w >= 1 {
        etas.extend(y_monomials(y_order, w - 1));
    }
    let slices = etas
        .par_iter()
        .map(|eta| {
            let p = kp_generating_coefficient(eta, eps);
            hirota_residual(&p, tau, format!("y^{}", eta.render("y")))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut printed_factors = Vec::new();
    for (k, which) in [(3u32, 1u8), (4, 2)] {
        let eta = Monomial::var(k);
        let p = even_part(&kp_generating_coefficient(&eta, eps));
        let q = printed_bilinear(which, &eps.pow(2))?;
        let factor = proportionality_factor(&p, &q).ok_or_else(|| {
            Error::InvalidArgument(format!(
                "y{k} coefficient is not a multiple of equation {which}"
            ))
        })?;
        printed_factors.push((eta.render("y"), which, format!("{factor}")));
    }
    Ok(HierarchyReport {
        y_order,
        slices,
        printed_factors,
    })
}

// ---------------------------------------------------------------------------

/// (1 + X)⁻¹ and log(1 + X) for X without constant term, to weight W.
fn unit_inverse<S: Ring>(f: &Polynomial<S>, w: u64) -> Result<Polynomial<S>> {
    let c0 = f.constant_term();
    let inv0 = c0
        .try_inverse()
        .ok_or_else(|| Error::NotInvertible("constant term".into()))?;
    let x = f.scale(&inv0) - Polynomial::one();
    let mut acc = Polynomial::one();
    let mut power = Polynomial::one();
    for n in 1..=w {
        power = power.mul_truncated(&x, w);
        if n % 2 == 1 {
            acc -= &power;
        } else {
            acc += &power;
        }
    }
    Ok(acc.scale(&inv0))
}

/// log(f/f(0)) to weight W.
pub fn normalized_log<S: Ring>(f: &Polynomial<S>, w: u64) -> Result<Polynomial<S>> {
    let inv0 = f
        .constant_term()
        .try_inverse()
        .ok_or_else(|| Error::NotInvertible("constant term".into()))?;
    let x = f.scale(&inv0) - Polynomial::one();
    let mut acc = Polynomial::zero();
    let mut power = Polynomial::one();
    for n in 1..=w {
        power = power.mul_truncated(&x, w);
        let t = power.scale_rational(&Rational::new(BigInt::one(), BigInt::from(n)));
        if n % 2 == 1 {
            acc += &t;
        } else {
            acc -= &t;
        }
    }
    Ok(acc)
}

pub struct KpEquationResult<C> {
    pub report: KpReport,
    /// u_xt − u_yy − (u u_x + ħ/12 u_xxx)_x with x, y, t = p₁, p₂, p₃.
    pub residual: Polynomial<LaurentPoly<C>>,
    /// −(ε²/24) ∂ₓ²(B/τ²) with B the first bilinear residual.
    pub from_bilinear: Polynomial<LaurentPoly<C>>,
}

/// u = ε²∂ₓ² log τ into the KP equation.
pub fn kp_equation_check<C: Ring + fmt::Display>(
    tau: &TruncatedTau<C>,
) -> Result<KpEquationResult<C>> {
    let w = valid_weight(tau, 6, "KP equation")?;
    let top = tau.max_weight as u64;
    let hbar = LaurentPoly::constant(tau.hbar.clone());
    let log = normalized_log(&tau.series, top)?;
    let u = log.derivative(1).derivative(1).scale(&hbar);
    let ux = u.derivative(1);
    let uxxx = ux.derivative(1).derivative(1);
    let inner =
        u.mul_truncated(&ux, top) + uxxx.scale(&hbar.scale(&Rational::new(1.into(), 12.into())));
    let residual =
        (u.derivative(1).derivative(3) - u.derivative(2).derivative(2) - inner.derivative(1))
            .truncate_weight(w);

    let b = hirota_apply(
        &lift(&printed_bilinear(1, &tau.hbar)?),
        &tau.series,
        &tau.series,
        top - 4,
    );
    let tau_sq = tau.series.mul_truncated(&tau.series, top);
    let ratio = b.mul_truncated(&unit_inverse(&tau_sq, top)?, top - 4);
    let from_bilinear = ratio
        .derivative(1)
        .derivative(1)
        .scale(&hbar.scale(&Rational::new((-1).into(), 24.into())))
        .truncate_weight(w);

    let report = KpReport {
        equation: "KP".into(),
        specialization: tau.specialization.clone(),
        weight_validated: w,
        residual_zero: residual.is_zero(),
        max_residual_term: render_first(&residual),
    };
    Ok(KpEquationResult {
        report,
        residual,
        from_bilinear,
    })
}

/// e^{a·p₁} to weight W as a tau with trivial v-dependence.
pub fn exponential_tau(a: &Rational, max_weight: usize, eps: &Rational) -> TruncatedTau<Rational> {
    let series = Polynomial::from_terms((0..=max_weight as u32).map(|n| {
        let c = a.pow(n as i32) / Rational::from_integer(factorial(n));
        (Monomial::var_pow(1, n), LaurentPoly::constant(c))
    }));
    TruncatedTau::from_series(series, max_weight, eps * eps, format!("exp({a} p1)"))
        .expect("constant term 1")
}

/// Is every exponent an integer multiple of 1/d_k (the substitution is exact)?
pub fn exponents_are_integral<C>(tau: &TruncatedTau<C>) -> bool {
    tau.active.iter().all(|(_, d)| d.is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disk::disk_potential;
    use crate::ring::{rat, ratio};

    fn rpoly(terms: &[(&[(u32, u32)], i64)]) -> Polynomial<Rational> {
        Polynomial::from_terms(terms.iter().map(|(m, c)| (dm(m), rat(*c))))
    }

    #[test]
    fn odd_operator_on_square_vanishes() {
        let f = rpoly(&[
            (&[], 1),
            (&[(1, 1)], 3),
            (&[(2, 1)], -2),
            (&[(1, 2), (2, 1)], 5),
        ]);
        let d1 = rpoly(&[(&[(1, 1)], 1)]);
        assert!(hirota_apply(&d1, &f, &f, 6).is_zero());
        let d1d2 = rpoly(&[(&[(1, 2), (2, 1)], 1)]);
        assert!(hirota_apply(&d1d2, &f, &f, 6).is_zero());
    }

    #[test]
    fn d1_on_exponentials() {
        let w = 6;
        let (a, b) = (rat(2), rat(-1));
        let e = |x: &Rational| {
            exponential_tau(x, w, &rat(1))
                .series
                .map_coeffs(|c| c.coeff(&Exponents::default()))
        };
        let d1 = rpoly(&[(&[(1, 1)], 1)]);
        let lhs = hirota_apply(&d1, &e(&a), &e(&b), (w - 1) as u64);
        let rhs = e(&(&a + &b))
            .scale(&(&a - &b))
            .truncate_weight((w - 1) as u64);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn d1_squared_classical() {
        let f = rpoly(&[
            (&[], 2),
            (&[(1, 1)], 1),
            (&[(1, 2)], 3),
            (&[(1, 3)], -1),
            (&[(2, 1)], 4),
        ]);
        let d11 = rpoly(&[(&[(1, 2)], 1)]);
        let lhs = hirota_apply(&d11, &f, &f, 4);
        let f1 = f.derivative(1);
        let expect = (f.mul_ref(&f1.derivative(1)) - f1.mul_ref(&f1))
            .scale_rational(&rat(2))
            .truncate_weight(4);
        assert_eq!(lhs, expect);
    }

    #[test]
    fn y3_and_y4_give_printed_equations() {
        let eps = ExactScalar::eps();
        let p = even_part(&kp_generating_coefficient(&Monomial::var(3), &eps));
        let q = printed_bilinear(1, &ExactScalar::hbar()).unwrap();
        assert_eq!(
            proportionality_factor(&p, &q).unwrap(),
            ExactScalar::monomial(ratio(-1, 36), 2, 0)
        );
        let p = even_part(&kp_generating_coefficient(&Monomial::var(4), &eps));
        let q = printed_bilinear(2, &ExactScalar::hbar()).unwrap();
        assert!(proportionality_factor(&p, &q).is_some());
    }

    #[test]
    fn y_order_zero_is_odd() {
        let p = kp_generating_coefficient(&Monomial::one(), &rat(1));
        assert_eq!(p, rpoly(&[(&[(1, 1)], 1)]));
    }

    #[test]
    fn vacuum_exponential_tau() {
        let tau = exponential_tau(&rat(1), 8, &rat(1));
        for which in [1, 2] {
            assert!(kp_bilinear_check(which, &tau).unwrap().residual_zero);
        }
        let kp = kp_equation_check(&tau).unwrap();
        assert!(kp.residual.is_zero());
    }

    #[test]
    fn tau_without_times_is_plane_wave() {
        let pot = disk_potential(5, 1);
        let tau = tau_from_disk(&pot, &BTreeSet::new(), &rat(0), &rat(1)).unwrap();
        let e = exponential_tau(&rat(1), 5, &rat(1));
        assert_eq!(tau.series, e.series);
    }

    #[test]
    fn t0_denominator_is_24() {
        let pot = disk_potential(3, 1);
        let tau = tau_from_disk(&pot, &BTreeSet::from([0]), &rat(0), &rat(1)).unwrap();
        assert_eq!(tau.active, vec![(0, BigInt::from(24))]);
        // λ = (1): v₀^{24(1 − 1/24)}
        let c = tau.series.coeff(&Monomial::var(1));
        assert_eq!(c, LaurentPoly::monomial(Exponents::new(vec![23]), rat(1)));
        let tau = tau_from_disk(&pot, &BTreeSet::from([0, 1]), &rat(0), &rat(1)).unwrap();
        // E₁/ħ at u₀ = 0, ε = 1 is the content sum
        assert_eq!(tau.active[1], (1, BigInt::from(1)));
    }

    #[test]
    fn symbolic_eps_refuses_t1() {
        let pot = disk_potential(3, 1);
        let err = tau_from_disk_symbolic(&pot, &BTreeSet::from([1]), &rat(0)).unwrap_err();
        assert!(matches!(err, Error::NonRationalExponent { k: 1, .. }));
        assert!(tau_from_disk_symbolic(&pot, &BTreeSet::from([0]), &rat(0)).is_ok());
    }

    #[test]
    fn disk_tau_small_weight() {
        let pot = disk_potential(6, 1);
        let tau = tau_from_disk(&pot, &BTreeSet::from([0, 1]), &rat(0), &rat(1)).unwrap();
        for which in [1, 2] {
            let r = kp_bilinear_check(which, &tau).unwrap();
            assert!(r.residual_zero, "{r:?}");
        }
        let kp = kp_equation_check(&tau).unwrap();
        assert!(kp.residual.is_zero());
    }

    #[test]
    fn log_inverts_exp() {
        let tau = exponential_tau(&ratio(3, 2), 6, &rat(1));
        let l = normalized_log(&tau.series, 6).unwrap();
        assert_eq!(
            l,
            Polynomial::term(Monomial::var(1), LaurentPoly::constant(ratio(3, 2)))
        );
    }
}
