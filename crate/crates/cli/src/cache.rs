//! On-disk cache of generated Hamiltonians.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use schurhopf::hamiltonian::{hamiltonian_generating_coefficients, term_coefficients};
use schurhopf::operator::balanced_pairs;
use schurhopf::NormalOrderedOperator as Op;

const SAMPLE: usize = 16;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Header {
    pub n: i32,
    #[serde(rename = "W")]
    pub weight: usize,
    pub code_version: String,
}

pub struct OperatorCache {
    dir: Option<PathBuf>,
    seed: u64,
}

impl OperatorCache {
    pub fn new(dir: Option<PathBuf>, seed: u64) -> Self {
        OperatorCache { dir, seed }
    }

    fn path(dir: &Path, n: i32, weight: usize) -> PathBuf {
        dir.join(format!("H{n}_W{weight}.json"))
    }

    fn load(&self, n: i32, weight: usize) -> Option<Op> {
        let dir = self.dir.as_ref()?;
        let text = fs::read_to_string(Self::path(dir, n, weight)).ok()?;
        let v: Value = serde_json::from_str(&text).ok()?;
        let header: Header = serde_json::from_value(v.get("header")?.clone()).ok()?;
        let expected = Header {
            n,
            weight,
            code_version: schurhopf::VERSION.to_string(),
        };
        if header != expected {
            return None;
        }
        let op = Op::from_json(v.get("operator")?).ok()?;
        self.spot_check(&op, n, weight).then_some(op)
    }

    /// Compare sampled coefficients with a fresh single-term evaluation.
    fn spot_check(&self, op: &Op, n: i32, weight: usize) -> bool {
        let mut keys = balanced_pairs(weight, (n + 2).max(0) as u32);
        let mut rng = StdRng::seed_from_u64(self.seed ^ ((n as u64) << 32) ^ weight as u64);
        keys.shuffle(&mut rng);
        keys.iter().take(SAMPLE).all(|k| {
            let fresh = &term_coefficients(k, n)[(n + 1) as usize];
            op.coeff(k) == *fresh
        }) && op.terms().all(|(k, _)| k.is_weight_preserving())
    }

    fn store(&self, n: i32, weight: usize, op: &Op) -> Result<()> {
        let Some(dir) = &self.dir else { return Ok(()) };
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let doc = json!({
            "header": Header { n, weight, code_version: schurhopf::VERSION.to_string() },
            "operator": op.to_json(),
        });
        let path = Self::path(dir, n, weight);
        fs::write(&path, serde_json::to_string(&doc)?)
            .with_context(|| format!("writing {}", path.display()))
    }

    /// Ĥ_{−1}, …, Ĥ_K at weight W; cached entries are reused after a spot check.
    pub fn hamiltonians(&self, k_max: i32, weight: usize) -> Result<Vec<Op>> {
        let cached: Vec<Option<Op>> = (-1..=k_max).map(|n| self.load(n, weight)).collect();
        if cached.iter().all(Option::is_some) {
            return Ok(cached.into_iter().flatten().collect());
        }
        let fresh = hamiltonian_generating_coefficients(k_max, weight)?;
        for (i, (op, hit)) in fresh.iter().zip(&cached).enumerate() {
            if hit.is_none() {
                self.store(i as i32 - 1, weight, op)?;
            }
        }
        Ok(fresh)
    }

    pub fn hamiltonian(&self, n: i32, weight: usize) -> Result<Op> {
        if let Some(op) = self.load(n, weight) {
            return Ok(op);
        }
        let op = hamiltonian_generating_coefficients(n, weight)?
            .pop()
            .expect("nonempty");
        self.store(n, weight, &op)?;
        Ok(op)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_tamper() {
        let dir = tempfile::tempdir().unwrap();
        let cache = OperatorCache::new(Some(dir.path().to_path_buf()), 7);
        let op = cache.hamiltonian(2, 4).unwrap();
        assert_eq!(cache.load(2, 4).unwrap(), op);

        // a corrupted coefficient on a sampled key is caught
        let path = OperatorCache::path(dir.path(), 2, 4);
        let mut doc: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        for t in doc["operator"].as_array_mut().unwrap() {
            t["coeff"] = json!([[0, 0, 99, 1]]);
        }
        fs::write(&path, doc.to_string()).unwrap();
        assert!(cache.load(2, 4).is_none());
        assert_eq!(cache.hamiltonian(2, 4).unwrap(), op);
    }

    #[test]
    fn stale_version_ignored() {
        let dir = tempfile::tempdir().unwrap();
        let cache = OperatorCache::new(Some(dir.path().to_path_buf()), 0);
        cache.hamiltonian(0, 3).unwrap();
        let path = OperatorCache::path(dir.path(), 0, 3);
        let mut doc: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        doc["header"]["code_version"] = json!("0.0.0-old");
        fs::write(&path, doc.to_string()).unwrap();
        assert!(cache.load(0, 3).is_none());
    }
}
