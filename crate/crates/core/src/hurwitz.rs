//! Counting m-tuples of transpositions in S_n by the cycle type of their product.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::ring::factorial;
use crate::Rational;

pub const ORACLE_MAX_N: usize = 6;
pub const ORACLE_MAX_M: u32 = 7;

fn cycle_type(perm: &[u8]) -> Vec<u32> {
    let mut seen = vec![false; perm.len()];
    let mut parts = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i] as usize;
            len += 1;
        }
        parts.push(len);
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}

fn transpositions(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect()
}

/// Number of tuples (τ₁,…,τ_m) of transpositions with τ₁⋯τ_m of cycle type μ.
/// Every tuple is enumerated, with identical partial products merged.
pub fn transposition_tuples(mu: &Partition, m: u32) -> Result<BigInt> {
    let n = mu.size();
    if n > ORACLE_MAX_N {
        return Err(Error::BoundExceeded {
            what: "permutation degree n",
            value: n,
            limit: ORACLE_MAX_N,
        });
    }
    if m > ORACLE_MAX_M {
        return Err(Error::BoundExceeded {
            what: "transposition count m",
            value: m as usize,
            limit: ORACLE_MAX_M as usize,
        });
    }
    let taus = transpositions(n);
    let mut layer: HashMap<Vec<u8>, BigInt> = HashMap::new();
    layer.insert((0..n as u8).collect(), BigInt::from(1));
    for _ in 0..m {
        let mut next: HashMap<Vec<u8>, BigInt> = HashMap::new();
        for (perm, count) in &layer {
            for &(i, j) in &taus {
                let mut p = perm.clone();
                p.swap(i, j);
                *next.entry(p).or_default() += count;
            }
        }
        layer = next;
    }
    let target = mu.parts().to_vec();
    Ok(layer
        .into_iter()
        .filter(|(p, _)| cycle_type(p) == target)
        .map(|(_, c)| c)
        .sum())
}

/// The tuple count divided by n!.
pub fn hurwitz_oracle(n: usize, m: u32, mu: &Partition) -> Result<Rational> {
    if mu.size() != n {
        return Err(Error::InvalidArgument(format!(
            "{mu} is not a partition of {n}"
        )));
    }
    Ok(Rational::new(
        transposition_tuples(mu, m)?,
        factorial(n as u32),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::partitions_of;
    use crate::ring::{rat, ratio};

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    // every tuple written out, no merging
    fn naive(mu: &Partition, m: u32) -> u64 {
        let n = mu.size();
        let taus = transpositions(n);
        let total = taus.len().pow(m);
        let mut hits = 0;
        for mut code in 0..total {
            let mut perm: Vec<u8> = (0..n as u8).collect();
            for _ in 0..m {
                let (i, j) = taus[code % taus.len()];
                code /= taus.len();
                perm.swap(i, j);
            }
            if cycle_type(&perm) == mu.parts() {
                hits += 1;
            }
        }
        hits
    }

    #[test]
    fn examples() {
        assert_eq!(hurwitz_oracle(1, 0, &p(&[1])).unwrap(), rat(1));
        assert_eq!(hurwitz_oracle(2, 2, &p(&[1, 1])).unwrap(), ratio(1, 2));
        assert_eq!(hurwitz_oracle(3, 1, &p(&[3])).unwrap(), rat(0));
        assert_eq!(hurwitz_oracle(2, 1, &p(&[2])).unwrap(), ratio(1, 2));
    }

    #[test]
    fn merged_count_matches_naive() {
        for n in 1..=4 {
            for m in 0..=4 {
                for mu in partitions_of(n) {
                    assert_eq!(
                        transposition_tuples(&mu, m).unwrap(),
                        BigInt::from(naive(&mu, m)),
                        "{mu} m={m}"
                    );
                }
            }
        }
    }

    #[test]
    fn column_sums() {
        // every tuple lands somewhere: Σ_μ count = C(n,2)^m
        for mu_n in 2..=5 {
            let total: BigInt = partitions_of(mu_n)
                .iter()
                .map(|mu| transposition_tuples(mu, 3).unwrap())
                .sum();
            assert_eq!(total, BigInt::from((mu_n * (mu_n - 1) / 2).pow(3)));
        }
    }

    #[test]
    fn refuses_beyond_bounds() {
        assert!(matches!(
            hurwitz_oracle(7, 1, &p(&[7])),
            Err(Error::BoundExceeded { .. })
        ));
        assert!(matches!(
            hurwitz_oracle(2, 8, &p(&[2])),
            Err(Error::BoundExceeded { .. })
        ));
    }
}
