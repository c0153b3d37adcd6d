use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use num_bigint::BigInt;
use num_traits::Signed;
use schurhopf::Rational;

pub const MAX_WEIGHT: usize = 12;
pub const MAX_INDEX: i32 = 8;
pub const MAX_DEGREE: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Latex,
}

/// A rational value or a symbol kept exact.
#[derive(Clone, Debug, PartialEq)]
pub enum ScalarArg {
    Value(Rational),
    Symbolic,
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    Rational::from_str(s.trim()).with_context(|| format!("not a rational number: {s:?}"))
}

pub fn parse_scalar(s: &str) -> Result<ScalarArg> {
    if s.eq_ignore_ascii_case("symbolic") {
        Ok(ScalarArg::Symbolic)
    } else {
        Ok(ScalarArg::Value(parse_rational(s)?))
    }
}

/// ε from --eps, or from --hbar when ħ is the square of a rational.
pub fn resolve_eps(eps: Option<&str>, hbar: Option<&str>) -> Result<Option<ScalarArg>> {
    match (eps, hbar) {
        (Some(_), Some(_)) => bail!("give --eps or --hbar, not both"),
        (Some(e), None) => {
            let e = parse_scalar(e)?;
            if e == ScalarArg::Value(Rational::from_integer(0.into())) {
                bail!("eps must be nonzero");
            }
            Ok(Some(e))
        }
        (None, Some(h)) => match parse_scalar(h)? {
            ScalarArg::Symbolic => Ok(Some(ScalarArg::Symbolic)),
            ScalarArg::Value(h) => Ok(Some(ScalarArg::Value(rational_sqrt(&h)?))),
        },
        (None, None) => Ok(None),
    }
}

fn rational_sqrt(h: &Rational) -> Result<Rational> {
    if !h.is_positive() {
        bail!("hbar must be positive, got {h}");
    }
    let root = |n: &BigInt| -> Option<BigInt> {
        let r = n.sqrt();
        (&r * &r == *n).then_some(r)
    };
    match (root(h.numer()), root(h.denom())) {
        (Some(a), Some(b)) => Ok(Rational::new(a, b)),
        _ => bail!("hbar = {h} is not the square of a rational; pass --eps instead"),
    }
}

/// Where cached operators live: --cache-dir / SCHURHOPF_CACHE_DIR, else the user cache.
pub fn default_cache_dir() -> Option<PathBuf> {
    if let Some(x) = std::env::var_os("XDG_CACHE_HOME") {
        return Some(PathBuf::from(x).join("schurhopf"));
    }
    std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("schurhopf"))
}

pub fn check_bound(what: &str, value: usize, limit: usize) -> Result<()> {
    if value > limit {
        bail!("{what} = {value} exceeds the limit {limit}");
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hbar_to_eps() {
        let e = resolve_eps(None, Some("1/4")).unwrap().unwrap();
        assert_eq!(e, ScalarArg::Value(parse_rational("1/2").unwrap()));
        assert!(resolve_eps(None, Some("2")).is_err());
        assert!(resolve_eps(Some("0"), None).is_err());
        assert_eq!(
            resolve_eps(Some("symbolic"), None).unwrap(),
            Some(ScalarArg::Symbolic)
        );
    }
}
