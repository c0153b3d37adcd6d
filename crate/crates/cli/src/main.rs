mod cache;
mod config;
mod render;
mod suites;
mod tables;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use schurhopf::{naive_hamiltonian, NormalOrderedOperator as Op, Rational};

use cache::OperatorCache;
use config::{check_bound, default_cache_dir, parse_rational, resolve_eps, Format, ScalarArg};
use render::{latex_scalar, latex_variables};

#[derive(Parser)]
#[command(
    name = "schurhopf",
    version,
    about = "Exact checks for the quantized Hopf hierarchy"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Operator cache directory
    #[arg(long, global = true, env = "SCHURHOPF_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    /// Regenerate operators instead of reading the cache
    #[arg(long, global = true)]
    no_cache: bool,
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Seed for sampled cache re-verification
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Clone)]
struct Bounds {
    #[arg(long, default_value_t = 8)]
    weight: usize,
    #[arg(long = "N", default_value_t = 5)]
    n_max: i32,
    #[arg(long = "K", default_value_t = 3)]
    k_max: i32,
    /// Hurwitz: largest n
    #[arg(long)]
    n: Option<usize>,
    /// Hurwitz: largest number of transpositions
    #[arg(long)]
    m: Option<u32>,
    /// P¹: degree
    #[arg(long)]
    degree: Option<usize>,
    #[arg(long)]
    u0: Option<String>,
    /// ε as a rational or `symbolic`
    #[arg(long)]
    eps: Option<String>,
    /// ħ = ε², must be a rational square
    #[arg(long)]
    hbar: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Print Ĥₙ (or the naive Ĥₙ⁰) restricted to weight ≤ W
    #[command(allow_negative_numbers = true)]
    Hamiltonian {
        #[arg(long)]
        n: i32,
        #[arg(long, default_value_t = 8)]
        weight: usize,
        #[arg(long)]
        naive: bool,
        #[arg(long)]
        u0: Option<String>,
        #[arg(long)]
        eps: Option<String>,
        #[arg(long)]
        hbar: Option<String>,
    },
    /// Run a verification suite; exit status 0 iff everything passes
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Emit a table
    Tables {
        #[arg(value_enum)]
        what: TableKind,
        #[command(flatten)]
        bounds: Bounds,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Commute,
    Eigen,
    Disk,
    Hirota,
    Fermion,
    Hurwitz,
    P1,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableKind {
    Disk,
    P1,
    Hurwitz,
}

enum Failure {
    Verification,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(Failure::Verification)) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn cache_of(cli: &Cli) -> OperatorCache {
    let dir = if cli.no_cache {
        None
    } else {
        cli.cache_dir.clone().or_else(default_cache_dir)
    };
    OperatorCache::new(dir, cli.seed)
}

fn run(cli: &Cli) -> Result<std::result::Result<(), Failure>> {
    match &cli.command {
        Command::Hamiltonian {
            n,
            weight,
            naive,
            u0,
            eps,
            hbar,
        } => {
            check_bound("weight", *weight, config::MAX_WEIGHT)?;
            if *n < -1 {
                bail!("Hamiltonians are indexed by n >= -1, got {n}");
            }
            check_bound("n", (*n + 1) as usize, config::MAX_INDEX as usize + 1)?;
            let mut op = if *naive {
                naive_hamiltonian(*n, *weight)?
            } else {
                cache_of(cli).hamiltonian(*n, *weight)?
            };
            if let Some(u) = u0 {
                op = op.subs_u0(&parse_rational(u)?);
            }
            if let Some(ScalarArg::Value(e)) = resolve_eps(eps.as_deref(), hbar.as_deref())? {
                op = op.at_eps(&e)?;
            }
            print!("{}", render_operator(&op, *n, *weight, cli.format));
            Ok(Ok(()))
        }
        Command::Verify { suite, bounds } => verify(cli, *suite, bounds),
        Command::Tables { what, bounds } => {
            let table = match what {
                TableKind::Disk => {
                    check_bound("weight", bounds.weight, config::MAX_WEIGHT)?;
                    tables::disk(bounds.weight, k_of(bounds)?, &specialization(bounds)?)?
                }
                TableKind::P1 => {
                    let d = bounds.degree.unwrap_or(2);
                    check_bound("degree", d, config::MAX_DEGREE)?;
                    tables::p1(d, k_of(bounds)?, &specialization(bounds)?)?
                }
                TableKind::Hurwitz => {
                    tables::hurwitz(bounds.n.unwrap_or(4), bounds.m.unwrap_or(5))?
                }
            };
            print!("{}", table.render(cli.format));
            Ok(Ok(()))
        }
    }
}

fn k_of(b: &Bounds) -> Result<usize> {
    if b.k_max < 0 || b.k_max > config::MAX_INDEX {
        bail!("--K must lie in 0..={}, got {}", config::MAX_INDEX, b.k_max);
    }
    Ok(b.k_max as usize)
}

fn specialization(b: &Bounds) -> Result<tables::Specialize> {
    Ok(tables::Specialize {
        u0: b.u0.as_deref().map(parse_rational).transpose()?,
        eps: resolve_eps(b.eps.as_deref(), b.hbar.as_deref())?,
    })
}

fn verify(cli: &Cli, suite: Suite, b: &Bounds) -> Result<std::result::Result<(), Failure>> {
    if !matches!(cli.format, Format::Text | Format::Json) {
        bail!("verify reports are text or json");
    }
    check_bound("weight", b.weight, config::MAX_WEIGHT)?;
    if b.n_max < -1 || b.n_max > config::MAX_INDEX {
        bail!("--N must lie in -1..={}", config::MAX_INDEX);
    }
    let k = k_of(b)? as i32;
    let cache = cache_of(cli);
    let u0 = match &b.u0 {
        Some(u) => parse_rational(u)?,
        None => Rational::from_integer(0.into()),
    };
    let eps = resolve_eps(b.eps.as_deref(), b.hbar.as_deref())?
        .unwrap_or(ScalarArg::Value(Rational::from_integer(1.into())));
    let degree = b.degree.unwrap_or(4);
    check_bound("degree", degree, config::MAX_DEGREE)?;
    let (hn, hm) = (b.n.unwrap_or(5), b.m.unwrap_or(6));
    let run_one = |s: Suite| -> Result<suites::Outcome> {
        match s {
            Suite::Commute => suites::commute(&cache, b.n_max, b.weight),
            Suite::Eigen => suites::eigen(&cache, k, b.weight),
            Suite::Disk => suites::disk(k, b.weight),
            Suite::Hirota => suites::hirota(b.weight, &u0, &eps),
            Suite::Fermion => suites::fermion(k, b.weight),
            Suite::Hurwitz => suites::hurwitz(hn, hm),
            Suite::P1 => suites::p1(degree, k),
            Suite::All => unreachable!(),
        }
    };
    let list = if suite == Suite::All {
        vec![
            Suite::Commute,
            Suite::Eigen,
            Suite::Disk,
            Suite::Hirota,
            Suite::Fermion,
            Suite::Hurwitz,
            Suite::P1,
        ]
    } else {
        vec![suite]
    };
    let outcomes = list.into_iter().map(run_one).collect::<Result<Vec<_>>>()?;
    let passed = outcomes.iter().all(|o| o.passed);
    match cli.format {
        Format::Json => {
            let doc = json!({
                "passed": passed,
                "suites": outcomes.iter().map(|o| json!({
                    "suite": o.suite,
                    "passed": o.passed,
                    "report": o.report,
                })).collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string_pretty(&doc)?);
        }
        _ => {
            for o in &outcomes {
                println!("== {}: {}", o.suite, if o.passed { "PASS" } else { "FAIL" });
                for l in &o.lines {
                    println!("{l}");
                }
            }
        }
    }
    Ok(if passed {
        Ok(())
    } else {
        Err(Failure::Verification)
    })
}

fn render_operator(op: &Op, n: i32, weight: usize, format: Format) -> String {
    match format {
        Format::Text => op.render() + "\n",
        Format::Json => {
            let doc = json!({"n": n, "W": weight, "operator": op.to_json()});
            serde_json::to_string_pretty(&doc).expect("json") + "\n"
        }
        Format::Csv => {
            let mut out = String::from("alpha,beta,coeff\n");
            for (k, c) in op.terms() {
                out.push_str(&format!(
                    "{},{},{}\n",
                    k.alpha.render("q"),
                    k.beta.render("p"),
                    c
                ));
            }
            out
        }
        Format::Latex => {
            let terms: Vec<String> = op
                .terms()
                .map(|(k, c)| {
                    let key = k.render();
                    let key = if key == "Id" {
                        String::new()
                    } else {
                        format!(" {}", latex_variables(&key))
                    };
                    format!("\\left({}\\right){key}", latex_scalar(&c.to_string()))
                })
                .collect();
            format!("\\hat H_{{{n}}} = {}\n", terms.join(" + "))
        }
    }
}
