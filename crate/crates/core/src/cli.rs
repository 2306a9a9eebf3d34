//! Command-line front end. Every command writes one JSON document to stdout
//! (JSON lines for `search`); diagnostics go to stderr.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::equivalence::{classify, ExponentRule};
use crate::error::Error;
use crate::fixtures::{self, FixtureSet};
use crate::moduli::{difference_decomposed, moduli_dimension, monotonic_scan};
use crate::multidegree::Multidegree;
use crate::search::{enumeration_size, find_pairs, verify_pair, SearchParams, DEFAULT_BUDGET};
use crate::selftest;

#[derive(Debug, Parser)]
#[command(name = "ci-invariants", version, about = "Exact invariants of complete intersections")]
pub struct Cli {
    /// Worker threads (default: all available).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Emit JSON (the only output format; accepted for scripts).
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Default)]
pub struct InputArgs {
    /// Comma-separated degrees.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub degrees: Option<Vec<i64>>,
    /// First multidegree of a pair.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub a: Option<Vec<i64>>,
    /// Second multidegree of a pair.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub b: Option<Vec<i64>>,
    /// Built-in fixture: ci6 or ci7, with :A or :B to pick one side.
    #[arg(long)]
    pub fixture: Option<String>,
    /// JSON file: an array of degrees, or {"a": [...], "b": [...]}.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    /// Complex dimension n.
    #[arg(long)]
    pub n: Option<u32>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Total degree and power sums s_1..s_n.
    Invariants(InputArgs),
    /// Moduli-space dimension.
    Moduli {
        #[command(flatten)]
        input: InputArgs,
        /// Include the leading sum and per-subset-size corrections.
        #[arg(long)]
        breakdown: bool,
    },
    /// One consecutive difference of a composed pair, split into M0 + M1.
    Difference {
        #[command(flatten)]
        input: InputArgs,
        /// Compare lambda+1 against lambda; must be below s.
        #[arg(long)]
        lambda: u32,
        /// Total weight: each side is composed s times.
        #[arg(long)]
        s: u32,
    },
    /// Moduli dimensions of d_{lambda, s-lambda} for lambda = 0..s.
    Scan {
        #[command(flatten)]
        input: InputArgs,
        /// Total weight: each side is composed s times.
        #[arg(long)]
        s: u32,
    },
    /// Compare a pair on invariant data and prime-power divisibility.
    Classify {
        #[command(flatten)]
        input: InputArgs,
        /// Exponent rule: floor or ceiling.
        #[arg(long, default_value = "ceiling")]
        rule: String,
    },
    /// Check equal product and equal s_1..s_k for a pair.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        /// Number of power sums that must agree.
        #[arg(long)]
        k: u32,
    },
    /// Enumerate pairs with equal product and equal s_1..s_k.
    Search {
        /// Number of degrees per tuple; at least k+2.
        #[arg(long)]
        r: usize,
        /// Number of power sums that must agree.
        #[arg(long)]
        k: u32,
        /// Smallest degree (at least 2).
        #[arg(long)]
        lo: u64,
        /// Largest degree.
        #[arg(long)]
        hi: u64,
        /// Refuse enumerations with more tuples than this.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Recompute every built-in fixture value.
    Selftest,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("selftest failed: {0} mismatches")]
    SelftestFailed(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => e.exit_code(),
            CliError::Usage(_) => 2,
            CliError::Io(_) | CliError::SelftestFailed(_) => 1,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Deserialize)]
#[serde(untagged)]
enum FileInput {
    Single(Vec<i64>),
    Pair {
        #[serde(alias = "A")]
        a: Vec<i64>,
        #[serde(alias = "B")]
        b: Vec<i64>,
    },
}

fn read_file(path: &PathBuf) -> CliResult<FileInput> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("{}: expected degree array or {{\"a\",\"b\"}}: {e}", path.display())))
}

fn parse_fixture(spec: &str) -> CliResult<(FixtureSet, Option<char>)> {
    let (name, side) = match spec.split_once(':') {
        Some((name, "A" | "a")) => (name, Some('A')),
        Some((name, "B" | "b")) => (name, Some('B')),
        Some((_, other)) => return Err(CliError::Usage(format!("fixture side must be A or B, got {other:?}"))),
        None => (spec, None),
    };
    Ok((fixtures::by_name(name)?, side))
}

impl InputArgs {
    fn single(&self) -> CliResult<(Multidegree, Option<u32>)> {
        if let Some(raw) = &self.degrees {
            return Ok((Multidegree::new(raw.iter().copied())?, None));
        }
        if let Some(spec) = &self.fixture {
            let (fx, side) = parse_fixture(spec)?;
            let md = match side {
                Some('B') => fx.b,
                Some(_) => fx.a,
                None => return Err(CliError::Usage(format!("use --fixture {spec}:A or {spec}:B"))),
            };
            return Ok((md, Some(fx.n)));
        }
        if let Some(path) = &self.input {
            return match read_file(path)? {
                FileInput::Single(raw) => Ok((Multidegree::new(raw)?, None)),
                FileInput::Pair { .. } => Err(CliError::Usage("expected a single degree array".into())),
            };
        }
        Err(CliError::Usage("one of --degrees, --fixture or --in is required".into()))
    }

    fn pair(&self) -> CliResult<(Multidegree, Multidegree, Option<u32>)> {
        if let (Some(a), Some(b)) = (&self.a, &self.b) {
            return Ok((Multidegree::new(a.iter().copied())?, Multidegree::new(b.iter().copied())?, None));
        }
        if let Some(spec) = &self.fixture {
            let (fx, side) = parse_fixture(spec)?;
            if side.is_some() {
                return Err(CliError::Usage("pair commands take --fixture ci6 or ci7 without a side".into()));
            }
            return Ok((fx.a, fx.b, Some(fx.n)));
        }
        if let Some(path) = &self.input {
            return match read_file(path)? {
                FileInput::Pair { a, b } => Ok((Multidegree::new(a)?, Multidegree::new(b)?, None)),
                FileInput::Single(_) => Err(CliError::Usage("expected {\"a\": [...], \"b\": [...]}".into())),
            };
        }
        Err(CliError::Usage("one of --a/--b, --fixture or --in is required".into()))
    }

    fn dimension(&self, fallback: Option<u32>) -> CliResult<u32> {
        self.n
            .or(fallback)
            .ok_or_else(|| CliError::Usage("--n is required".into()))
    }
}

fn emit(out: &mut dyn Write, value: &Value) -> CliResult<()> {
    writeln!(out, "{value}")?;
    Ok(())
}

fn bound_for(fixture: Option<&String>) -> Option<FixtureSet> {
    fixture
        .and_then(|f| parse_fixture(f).ok())
        .filter(|(_, side)| side.is_none())
        .map(|(fx, _)| fx)
}

/// Runs one parsed command; the caller maps errors to exit codes.
pub fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    match &cli.command {
        Command::Invariants(input) => {
            let (md, n) = input.single()?;
            let n = input.dimension(n)?;
            let tuple = md.invariant_tuple(n)?;
            emit(out, &serde_json::to_value(tuple).expect("serializable"))
        }
        Command::Moduli { input, breakdown } => {
            let (md, n) = input.single()?;
            let n = input.dimension(n)?;
            let report = moduli_dimension(&md, n)?;
            let mut v = report.to_json(*breakdown);
            v["degrees"] = serde_json::to_value(&md).expect("serializable");
            v["n"] = json!(n);
            emit(out, &v)
        }
        Command::Difference { input, lambda, s } => {
            let (a, b, n) = input.pair()?;
            let n = input.dimension(n)?;
            let rep = difference_decomposed(&a, &b, n, *lambda, *s)?;
            let mut v = serde_json::to_value(&rep).expect("serializable");
            v["consistent"] = json!(rep.consistent());
            emit(out, &v)
        }
        Command::Scan { input, s } => {
            let (a, b, n) = input.pair()?;
            let n = input.dimension(n)?;
            let scan = monotonic_scan(&a, &b, n, *s)?;
            let mut v = serde_json::to_value(&scan).expect("serializable");
            v["A"] = serde_json::to_value(&a).expect("serializable");
            v["B"] = serde_json::to_value(&b).expect("serializable");
            let mut verdict = if scan.strictly_increasing {
                "strictly increasing".to_string()
            } else {
                "not strictly increasing".to_string()
            };
            if let Some(fx) = bound_for(input.fixture.as_ref()) {
                let (label, bound) = &fx.difference_bound;
                let exceeds = scan.all_differences_exceed(bound);
                v["bound"] = json!({
                    "value": label,
                    "claimed_from_s": FixtureSet::BOUND_FROM_S,
                    "all_differences_exceed": exceeds,
                });
                verdict.push_str(&format!(
                    "; {} differences > {label}",
                    if exceeds { "all" } else { "not all" }
                ));
            }
            v["verdict"] = json!(verdict);
            emit(out, &v)
        }
        Command::Classify { input, rule } => {
            let (a, b, n) = input.pair()?;
            let n = input.dimension(n)?;
            let rule: ExponentRule = rule.parse()?;
            let verdict = classify(&a, &b, n, rule)?;
            emit(out, &serde_json::to_value(verdict).expect("serializable"))
        }
        Command::Verify { input, k } => {
            let (a, b, _) = input.pair()?;
            let report = verify_pair(&a, &b, *k)?;
            emit(out, &serde_json::to_value(report).expect("serializable"))
        }
        Command::Search { r, k, lo, hi, budget } => {
            let params = SearchParams { r: *r, k: *k, lo: *lo, hi: *hi, budget: *budget };
            if *lo >= 2 && lo <= hi {
                writeln!(err, "enumerating {} tuples", enumeration_size(*r, *lo, *hi))?;
            }
            let pairs = find_pairs(&params)?;
            for p in &pairs {
                emit(out, &serde_json::to_value(p).expect("serializable"))?;
            }
            writeln!(err, "found {} pairs", pairs.len())?;
            Ok(())
        }
        Command::Selftest => {
            let checks = selftest::run_checks();
            for c in &checks {
                writeln!(err, "{} {} {}", if c.ok { "ok  " } else { "FAIL" }, c.fixture, c.name)?;
            }
            let failed = checks.iter().filter(|c| !c.ok).count();
            emit(
                out,
                &json!({
                    "passed": checks.len() - failed,
                    "failed": failed,
                    "checks": checks,
                }),
            )?;
            if failed > 0 {
                return Err(CliError::SelftestFailed(failed));
            }
            Ok(())
        }
    }
}

/// Parses `args`, configures threads and runs; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return 2;
            }
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    let mut obuf = Vec::new();
    let mut ebuf = Vec::new();
    let result = match cli.threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| execute(&cli, &mut obuf, &mut ebuf)),
            Err(e) => Err(CliError::Usage(format!("cannot build thread pool: {e}"))),
        },
        None => execute(&cli, &mut obuf, &mut ebuf),
    };
    let _ = out.write_all(&obuf);
    let _ = err.write_all(&ebuf);
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
