//! Complete homogeneous polynomials, Jacobi–Trudi Schur polynomials and the
//! ε-scaled Schur polynomials s_λ(q/ε).

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};
use once_cell::sync::Lazy;

use crate::error::{Error, Result};
use crate::linalg::{inverse, mat_vec, rank, Matrix};
use crate::partition::{partitions_of, Partition};
use crate::poly::{Monomial, Polynomial};
use crate::ring::{rat, Ring};
use crate::scalar::ExactScalar;
use crate::series::Series;
use crate::Rational;

type RPoly = Polynomial<Rational>;

static H_CACHE: Lazy<RwLock<Vec<Arc<RPoly>>>> =
    Lazy::new(|| RwLock::new(vec![Arc::new(RPoly::one())]));
static SCHUR_CACHE: Lazy<RwLock<HashMap<Partition, Arc<RPoly>>>> = Lazy::new(Default::default);

/// h_k(q) in all variables, from k·h_k = Σ_{i=1}^k q_i h_{k−i}.
fn h_full(k: usize) -> Arc<RPoly> {
    if let Some(h) = H_CACHE.read().unwrap().get(k) {
        return h.clone();
    }
    let mut cache = H_CACHE.write().unwrap();
    while cache.len() <= k {
        let n = cache.len();
        let mut acc = RPoly::zero();
        for i in 1..=n {
            acc += &cache[n - i].mul_monomial(&Monomial::var(i as u32));
        }
        let h = acc.scale_rational(&Rational::new(One::one(), (n as i64).into()));
        cache.push(Arc::new(h));
    }
    cache[k].clone()
}

/// h_k(q₁, …, q_{num_vars}); zero for negative `k`.
pub fn complete_homogeneous(k: i64, num_vars: u32) -> RPoly {
    if k < 0 {
        return RPoly::zero();
    }
    let h = h_full(k as usize);
    RPoly::from_terms(
        h.terms()
            .filter(|(m, _)| m.pairs().iter().all(|&(i, _)| i <= num_vars))
            .map(|(m, c)| (m.clone(), c.clone())),
    )
}

/// Coefficients of h_k as a z-series: e^{Σ q_k z^k / k} over a generic ring,
/// with the q's supplied as ring elements.
pub fn complete_homogeneous_series<C: Ring>(q: &[C], order: usize) -> Result<Series<C>> {
    let mut exponent = Series::zero(order);
    for (i, qi) in q.iter().enumerate() {
        let k = i + 1;
        if k <= order {
            exponent = exponent
                + Series::monomial(
                    qi.scale(&Rational::new(One::one(), (k as i64).into())),
                    k,
                    order,
                );
        }
    }
    exponent.exp()
}

fn h_at(k: i64) -> Option<Arc<RPoly>> {
    (k >= 0).then(|| h_full(k as usize))
}

/// s_λ(q) = det(h_{λ_i − i + j}) by Laplace expansion with memoised minors.
pub fn schur(lambda: &Partition) -> Arc<RPoly> {
    if let Some(s) = SCHUR_CACHE.read().unwrap().get(lambda) {
        return s.clone();
    }
    let s = Arc::new(jacobi_trudi(lambda));
    SCHUR_CACHE
        .write()
        .unwrap()
        .insert(lambda.clone(), s.clone());
    s
}

fn jacobi_trudi(lambda: &Partition) -> RPoly {
    let l = lambda.len();
    if l == 0 {
        return RPoly::one();
    }
    let entry = |i: usize, j: usize| h_at(lambda.parts()[i] as i64 - i as i64 + j as i64);
    // minor(row, used) = determinant of rows row.. over the columns not in `used`
    let mut memo: HashMap<u32, RPoly> = HashMap::new();
    fn minor(
        row: usize,
        used: u32,
        l: usize,
        entry: &dyn Fn(usize, usize) -> Option<Arc<RPoly>>,
        memo: &mut HashMap<u32, RPoly>,
    ) -> RPoly {
        if row == l {
            return RPoly::one();
        }
        if let Some(m) = memo.get(&used) {
            return m.clone();
        }
        let mut acc = RPoly::zero();
        let mut sign_pos = 0;
        for col in 0..l {
            if used & (1 << col) != 0 {
                continue;
            }
            if let Some(h) = entry(row, col) {
                let sub = minor(row + 1, used | (1 << col), l, entry, memo);
                if !sub.is_zero() {
                    let term = h.mul_ref(&sub);
                    if sign_pos % 2 == 0 {
                        acc += &term;
                    } else {
                        acc -= &term;
                    }
                }
            }
            sign_pos += 1;
        }
        memo.insert(used, acc.clone());
        acc
    }
    minor(0, 0, l, &entry, &mut memo)
}

/// s_λ(q/ε): every variable divided by ε, so q^μ picks up ε^{−deg μ}.
pub fn scaled_schur(lambda: &Partition) -> Polynomial<ExactScalar> {
    scale_down_by_eps(&schur(lambda))
}

pub fn scale_down_by_eps(f: &RPoly) -> Polynomial<ExactScalar> {
    Polynomial::from_terms(f.terms().map(|(m, c)| {
        (
            m.clone(),
            ExactScalar::monomial(c.clone(), -(m.degree() as i32), 0),
        )
    }))
}

/// f(−q).
pub fn negate_variables<C: Ring>(f: &Polynomial<C>) -> Polynomial<C> {
    Polynomial::from_terms(f.terms().map(|(m, c)| {
        let c = if m.degree() % 2 == 0 {
            c.clone()
        } else {
            -c.clone()
        };
        (m.clone(), c)
    }))
}

/// s_{λ'}(q) = (−1)^{|λ|} s_λ(−q).
pub fn verify_transpose_sign(lambda: &Partition) -> bool {
    let lhs = schur(&lambda.transpose());
    let mut rhs = negate_variables(&schur(lambda));
    if lambda.size() % 2 == 1 {
        rhs = -rhs;
    }
    *lhs == rhs
}

/// Matrix whose column λ holds the coefficients of s_λ on the monomials q^μ, |λ| = |μ| = n.
/// Rows and columns follow `partitions_of(n)`.
pub fn schur_coefficient_matrix(n: usize) -> Matrix<Rational> {
    let parts = partitions_of(n);
    let schurs: Vec<_> = parts.iter().map(schur).collect();
    parts
        .iter()
        .map(|mu| {
            let m = Monomial::from_partition(mu);
            schurs.iter().map(|s| s.coeff(&m)).collect()
        })
        .collect()
}

/// Is {s_λ : |λ| = n} a basis of the weight-n piece?
pub fn schur_basis_spans(n: usize) -> bool {
    rank(&schur_coefficient_matrix(n)) == partitions_of(n).len()
}

/// Coordinates of a weight-`n` polynomial in the Schur basis.
pub fn expand_in_schur(f: &RPoly, n: usize) -> Result<BTreeMap<Partition, Rational>> {
    if !f.is_homogeneous(n as u64) {
        return Err(Error::InvalidArgument(format!(
            "polynomial is not homogeneous of weight {n}"
        )));
    }
    let parts = partitions_of(n);
    let inv = inverse(&schur_coefficient_matrix(n))?;
    let v: Vec<Rational> = parts
        .iter()
        .map(|mu| f.coeff(&Monomial::from_partition(mu)))
        .collect();
    Ok(parts
        .into_iter()
        .zip(mat_vec(&inv, &v))
        .filter(|(_, c)| !c.is_zero())
        .collect())
}

/// Coordinates of a weight-`n` polynomial in the basis s_λ(q/ε), in `partitions_of(n)` order.
pub fn expand_in_scaled_schur(
    f: &Polynomial<ExactScalar>,
    n: usize,
    inverse_matrix: &Matrix<Rational>,
) -> Result<Vec<ExactScalar>> {
    if !f.is_zero() && !f.is_homogeneous(n as u64) {
        return Err(Error::InvalidArgument(format!(
            "polynomial is not homogeneous of weight {n}"
        )));
    }
    let v: Vec<ExactScalar> = partitions_of(n)
        .iter()
        .map(|mu| {
            let m = Monomial::from_partition(mu);
            f.coeff(&m).shift_eps(m.degree() as i32)
        })
        .collect();
    Ok(mat_vec(inverse_matrix, &v))
}

/// Coefficients of q₁ⁿ in the Schur basis.
pub fn power_of_q1_expansion(n: usize) -> Result<BTreeMap<Partition, Rational>> {
    let q1n = RPoly::term(Monomial::var_pow(1, n as u32), rat(1));
    expand_in_schur(&q1n, n)
}
