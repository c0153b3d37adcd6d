//! Integer partitions (Young diagrams) and the combinatorics built on them.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::factorial;

/// Default size limit for the brute-force tableau count.
pub const SYT_DEFAULT_BOUND: usize = 12;

/// A weakly decreasing sequence of positive parts; the empty sequence is ∅.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

/// Frobenius coordinates (α | β) with d = len(α) = len(β).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusCoordinates {
    pub alpha: Vec<u32>,
    pub beta: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidArgument(format!(
                "partition parts must be positive: {parts:?}"
            )));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!(
                "partition parts must be weakly decreasing: {parts:?}"
            )));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// |λ|
    pub fn size(&self) -> usize {
        self.0.iter().map(|&p| p as usize).sum()
    }

    /// l(λ)
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// λ_i with 1-based `i`, zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i.wrapping_sub(1)).copied().unwrap_or(0)
    }

    pub fn transpose(&self) -> Partition {
        let first = self.part(1);
        let parts = (1..=first)
            .map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32)
            .collect();
        Partition(parts)
    }

    /// d(λ) = max{i : λ_i ≥ i}.
    pub fn diagonal(&self) -> usize {
        self.0
            .iter()
            .enumerate()
            .take_while(|(i, &p)| p as usize > *i)
            .count()
    }

    pub fn frobenius(&self) -> FrobeniusCoordinates {
        let d = self.diagonal();
        let t = self.transpose();
        FrobeniusCoordinates {
            alpha: (1..=d).map(|i| self.part(i) - i as u32).collect(),
            beta: (1..=d).map(|i| t.part(i) - i as u32).collect(),
        }
    }

    /// Hook length at the 1-based cell (i, j).
    pub fn hook(&self, i: usize, j: usize) -> u32 {
        let arm = self.part(i) - j as u32;
        let leg = self.transpose().part(j) - i as u32;
        arm + leg + 1
    }

    /// dim λ = |λ|! / ∏ hooks.
    pub fn dim(&self) -> BigInt {
        let t = self.transpose();
        let mut prod = BigInt::one();
        for (i, &row) in self.0.iter().enumerate() {
            for j in 1..=row {
                let hook = row - j + t.part(j as usize) - (i as u32 + 1) + 1;
                prod *= BigInt::from(hook);
            }
        }
        factorial(self.size() as u32) / prod
    }

    /// b(λ) = Σ (β_i + 1).
    pub fn b_sign_exponent(&self) -> u32 {
        self.frobenius().beta.iter().map(|b| b + 1).sum()
    }

    /// Σ over cells of (column − row); the cut-and-join eigenvalue at ħ = 1.
    pub fn content_sum(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &row)| {
                let row = row as i64;
                let i = i as i64;
                row * (row - 1) / 2 - i * row
            })
            .sum()
    }
}

impl FrobeniusCoordinates {
    pub fn d(&self) -> usize {
        self.alpha.len()
    }

    pub fn to_partition(&self) -> Result<Partition> {
        let d = self.d();
        if self.beta.len() != d
            || self.alpha.windows(2).any(|w| w[0] <= w[1])
            || self.beta.windows(2).any(|w| w[0] <= w[1])
        {
            return Err(Error::InvalidArgument(format!(
                "invalid Frobenius coordinates {self:?}"
            )));
        }
        // Rows i ≤ d are α_i + i; rows below the diagonal are read off the
        // legs: row r > d has length #{i : β_i + i ≥ r}.
        let mut parts: Vec<u32> = (0..d).map(|i| self.alpha[i] + i as u32 + 1).collect();
        let depth = self.beta.first().map_or(0, |b| b + 1) as usize;
        for r in (d + 1)..=depth {
            let len = self
                .beta
                .iter()
                .enumerate()
                .filter(|(i, &b)| b as usize + i + 1 >= r)
                .count();
            parts.push(len as u32);
        }
        Partition::new(parts)
    }
}

/// Count standard Young tableaux of shape λ by exhaustive backtracking.
pub fn syt_count(lambda: &Partition, bound: usize) -> Result<u64> {
    if lambda.size() > bound {
        return Err(Error::BoundExceeded {
            what: "syt_count size",
            value: lambda.size(),
            limit: bound,
        });
    }
    fn fill(shape: &[u32], rows: &mut Vec<u32>, remaining: usize) -> u64 {
        if remaining == 0 {
            return 1;
        }
        let mut total = 0;
        for i in 0..shape.len() {
            let fits = rows[i] < shape[i] && (i == 0 || rows[i - 1] > rows[i]);
            if fits {
                rows[i] += 1;
                total += fill(shape, rows, remaining - 1);
                rows[i] -= 1;
            }
        }
        total
    }
    let mut rows = vec![0; lambda.len()];
    Ok(fill(lambda.parts(), &mut rows, lambda.size()))
}

/// All partitions of `n` in reverse-lexicographic order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn rec(rest: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for p in (1..=max.min(rest)).rev() {
            prefix.push(p);
            rec(rest - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n as u32, n as u32, &mut Vec::new(), &mut out);
    out
}

/// All partitions of size ≤ `n`, by increasing size.
pub fn partitions_up_to(n: usize) -> Vec<Partition> {
    (0..=n).flat_map(partitions_of).collect()
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .trim_start_matches('[')
            .trim_end_matches(']')
            .trim();
        if inner.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad partition {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.0
    }
}
