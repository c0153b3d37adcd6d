//! Dense exact linear algebra over ℚ, sized for graded pieces of the Fock space.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ring::Ring;
use crate::Rational;

pub type Matrix<C> = Vec<Vec<C>>;

pub fn identity(n: usize) -> Matrix<Rational> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect()
}

/// Row-reduce a copy of `m` and return its rank.
pub fn rank(m: &Matrix<Rational>) -> usize {
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, pivot);
        let inv = a[r][c].recip();
        for j in c..cols {
            a[r][j] = &a[r][j] * &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..cols {
                    let delta = &f * &a[r][j];
                    a[i][j] -= delta;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Gauss–Jordan inverse of a square matrix.
pub fn inverse(m: &Matrix<Rational>) -> Result<Matrix<Rational>> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidArgument(
            "inverse needs a square matrix".into(),
        ));
    }
    let mut a = m.clone();
    let mut inv = identity(n);
    for c in 0..n {
        let pivot = (c..n)
            .find(|&i| !a[i][c].is_zero())
            .ok_or_else(|| Error::NotInvertible("singular matrix".into()))?;
        a.swap(c, pivot);
        inv.swap(c, pivot);
        let p = a[c][c].recip();
        for j in 0..n {
            a[c][j] = &a[c][j] * &p;
            inv[c][j] = &inv[c][j] * &p;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..n {
                    let da = &f * &a[c][j];
                    a[i][j] -= da;
                    let di = &f * &inv[c][j];
                    inv[i][j] -= di;
                }
            }
        }
    }
    Ok(inv)
}

/// `m · v` for a rational matrix and a vector over any ℚ-algebra.
pub fn mat_vec<C: Ring>(m: &Matrix<Rational>, v: &[C]) -> Vec<C> {
    m.iter()
        .map(|row| {
            let mut acc = C::zero();
            for (a, x) in row.iter().zip(v) {
                if !a.is_zero() {
                    acc += &x.scale(a);
                }
            }
            acc
        })
        .collect()
}

pub fn is_diagonal<C: Ring>(m: &Matrix<C>) -> bool {
    m.iter()
        .enumerate()
        .all(|(i, row)| row.iter().enumerate().all(|(j, x)| i == j || x.is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{rat, ratio};

    #[test]
    fn inverse_and_rank() {
        let m = vec![vec![rat(2), rat(1)], vec![rat(1), rat(1)]];
        let inv = inverse(&m).unwrap();
        assert_eq!(inv, vec![vec![rat(1), rat(-1)], vec![rat(-1), rat(2)]]);
        assert_eq!(rank(&m), 2);
        let singular = vec![vec![rat(1), rat(2)], vec![ratio(1, 2), rat(1)]];
        assert_eq!(rank(&singular), 1);
        assert!(inverse(&singular).is_err());
    }

    #[test]
    fn matrix_vector() {
        let m = vec![vec![rat(1), rat(2)], vec![rat(0), rat(3)]];
        assert_eq!(mat_vec(&m, &[rat(1), rat(1)]), vec![rat(3), rat(3)]);
        assert!(is_diagonal(&identity(3)));
    }
}
