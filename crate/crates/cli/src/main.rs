mod cache;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use sumsq_core::arith::EffortBudget;
use sumsq_core::aurifeuillian::aurifeuillian_pair;
use sumsq_core::classifier::{chart, poly_family, render_text, witness_nonsots, Classifier};
use sumsq_core::selftest::selftest;
use sumsq_core::two_squares::{classify_detailed, density_ratio_with, Status, TwoSquaresVerdict};
use sumsq_core::{Error as CoreError, ExecMode};

use cache::{Cache, CacheError};

const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;
const EXIT_SOFTWARE: u8 = 70;

#[derive(Parser)]
#[command(name = "sumsq", version, about = "Decide whether a^n + 1 is a sum of two squares, with certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Structured output with decimal-string integers.
    #[arg(long, global = true)]
    json: bool,
    /// Cache file (JSON lines).
    #[arg(long, global = true, env = "SUMSQ_CACHE", value_name = "PATH")]
    cache: Option<PathBuf>,
    #[arg(long, global = true, conflicts_with = "cache")]
    no_cache: bool,
    /// Wall-clock cap per factorization, in milliseconds; 0 for none.
    #[arg(long, global = true, value_name = "MS")]
    budget_ms: Option<u64>,
    /// Pollard rho iterations per cofactor.
    #[arg(long, global = true, value_name = "N")]
    rho_cap: Option<u64>,
    /// Trial division bound.
    #[arg(long, global = true, value_name = "N")]
    trial_bound: Option<u64>,
    /// Seed for rho offsets and probabilistic primality witnesses.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads; 1 runs sequentially.
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a^n + 1.
    Decide { a: BigUint, n: u64 },
    /// Decide an arbitrary N.
    Represent { n: BigUint },
    /// Odd n <= n-max with a^n + 1 a sum of two squares, for a <= a-max.
    Chart {
        #[arg(long, default_value_t = 50)]
        a_max: u64,
        #[arg(long, default_value_t = 19)]
        n_max: u64,
    },
    /// An odd n with a^n + 1 not a sum of two squares.
    Witness { a: BigUint },
    /// Phi_n(x) = F(x)^2 - k x^q G(x)^2.
    Aurifeuille {
        #[arg(allow_hyphen_values = true)]
        k: i64,
        n: u64,
    },
    /// Polynomials with f(X)^p + 1 = g(X)^2 + h(X)^2.
    Poly { p: u64 },
    /// Count of sums of two squares up to x, scaled by sqrt(ln x) / x.
    Density { x: u64 },
    /// Run the built-in invariant suites.
    Selftest,
}

#[derive(Serialize, Deserialize)]
struct RepresentReport {
    #[serde(with = "dec")]
    n: BigUint,
    verdict: TwoSquaresVerdict,
}

mod dec {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

enum Failure {
    Core(CoreError),
    Cache(CacheError),
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        Failure::Core(e)
    }
}

impl From<CacheError> for Failure {
    fn from(e: CacheError) -> Self {
        Failure::Cache(e)
    }
}

impl Failure {
    fn exit(&self) -> u8 {
        match self {
            Failure::Core(CoreError::Internal(_) | CoreError::IncompleteFactorization(_)) => EXIT_SOFTWARE,
            Failure::Core(_) => EXIT_USAGE,
            Failure::Cache(_) => EXIT_DATA,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Cache(e) => write!(f, "{e}"),
        }
    }
}

fn status_exit(s: Status) -> u8 {
    match s {
        Status::Yes => 0,
        Status::No => 1,
        Status::Unknown => 2,
    }
}

fn emit<T: Serialize>(json: bool, value: &T, text: impl FnOnce() -> String) {
    if json {
        println!("{}", serde_json::to_string_pretty(value).expect("reports serialize"));
    } else {
        print!("{}", text());
    }
}

fn budget(cli: &Cli) -> Result<EffortBudget, Failure> {
    let mut b = EffortBudget::default();
    if let Some(v) = cli.budget_ms {
        b.total_time_cap_ms = v;
    }
    if let Some(v) = cli.rho_cap {
        b.rho_iteration_cap = v;
    }
    if let Some(v) = cli.trial_bound {
        b.trial_division_bound = v;
    }
    if let Some(v) = cli.seed {
        b.seed = v;
    }
    b.validate()?;
    Ok(b)
}

fn mode(cli: &Cli) -> Result<ExecMode, Failure> {
    match cli.threads {
        Some(0) => Err(Failure::Core(CoreError::OutOfRange {
            what: "threads",
            value: "0".into(),
            expected: ">= 1",
        })),
        Some(1) => Ok(ExecMode::Sequential),
        Some(_n) => {
            #[cfg(feature = "parallel")]
            rayon::ThreadPoolBuilder::new()
                .num_threads(_n)
                .build_global()
                .map_err(|e| Failure::Core(CoreError::Internal(e.to_string())))?;
            Ok(ExecMode::Parallel)
        }
        None => Ok(ExecMode::Parallel),
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let classifier = Classifier::with_mode(budget(cli)?, mode(cli)?);
    let path = if cli.no_cache { None } else { cli.cache.clone().or_else(cache::default_path) };
    let mut cache = path.map(|p| Cache::load(&p, &classifier)).transpose()?;
    let json = cli.json;
    let code = match &cli.command {
        Command::Decide { a, n } => {
            let r = classifier.decide(a, *n)?;
            emit(json, &r, || report::record(&r));
            status_exit(r.status)
        }
        Command::Represent { n } => {
            let (verdict, f) = classify_detailed(n, classifier.budget())?;
            classifier.insert_factorization(f)?;
            let rep = RepresentReport { n: n.clone(), verdict };
            emit(json, &rep, || report::verdict(&rep.n, &rep.verdict));
            status_exit(rep.verdict.status())
        }
        Command::Chart { a_max, n_max } => {
            let rows = chart(&classifier, *a_max, *n_max)?;
            emit(json, &rows, || render_text(&rows));
            0
        }
        Command::Witness { a } => {
            let w = witness_nonsots(&classifier, a)?;
            emit(json, &w, || report::witness(&w));
            0
        }
        Command::Aurifeuille { k, n } => {
            let pair = aurifeuillian_pair(*k, *n)?;
            emit(json, &*pair, || report::aurifeuille(&pair));
            0
        }
        Command::Poly { p } => {
            let fam = poly_family(*p)?;
            emit(json, &fam, || report::family(&fam));
            0
        }
        Command::Density { x } => {
            let d = density_ratio_with(*x, classifier.mode())?;
            emit(json, &d, || report::density(&d));
            0
        }
        Command::Selftest => {
            let r = selftest(&classifier);
            emit(json, &r, || report::selftest(&r));
            u8::from(r.failed > 0)
        }
    };
    if let Some(c) = cache.as_mut() {
        c.persist(&classifier)?;
    }
    Ok(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit())
        }
    }
}
