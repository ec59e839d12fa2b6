//! Command-line front end. The binary is a thin wrapper around [`run`].

mod commands;
pub mod output;
mod selftest;

pub use commands::{count_row, CountRow, Engine};
pub use output::{Field, Format, Record, Report};
pub use selftest::{selftest, SelftestItem, GOLDEN_COUNTS};

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

/// Environment variable consulted when `--threads` is absent.
pub const THREADS_ENV: &str = "DELPEZZO_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "delpezzo",
    version,
    about = "Point counts and leading-constant pieces for a quartic del Pezzo surface"
)]
pub struct RunConfig {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true, env = THREADS_ENV, value_parser = clap::value_parser!(u16).range(1..))]
    pub threads: Option<u16>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, short = 'o', global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count points of height at most B on the open subset U.
    Count(CountArgs),
    /// Compare N_U(B) / (B (log B)^4) with the predicted leading constant.
    Compare(CompareArgs),
    /// Assemble the leading constant along both routes.
    Predict(ConstantArgs),
    /// Local density at p: direct count against the truncated series.
    Local(LocalArgs),
    /// The conic density D*_{mu,nu}(p^n) and its closed form.
    Dstar(DstarArgs),
    /// Nef-cone volume alpha for a Galois action on the lines.
    Alpha(AlphaArgs),
    /// Main-term sums, or h(a, b; Y) for a single fiber.
    MainTerm(MainTermArgs),
    /// Run the built-in checks.
    Selftest(SelftestArgs),
}

#[derive(Debug, Args)]
pub struct CountArgs {
    /// One or more bounds, comma separated.
    #[arg(long, required = true, value_delimiter = ',', value_parser = clap::value_parser!(i64).range(1..))]
    pub bound: Vec<i64>,
    #[arg(long, value_enum, default_value_t = Engine::Fast)]
    pub engine: Engine,
    /// Fill the `seconds` column with wall-clock times.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Args, Clone)]
pub struct ConstantArgs {
    /// Primes up to this bound enter the Euler products.
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(4..))]
    pub pmax: u64,
    /// Each exponent of the local series runs over 0..=nucap.
    #[arg(long, default_value_t = 6)]
    pub nucap: u32,
    /// Monte-Carlo samples (Leray integral, and sigma when --sigma-method mc).
    #[arg(long, default_value_t = 1 << 22, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = SigmaMethod::Grid)]
    pub sigma_method: SigmaMethod,
    /// Target accuracy of the adaptive grid for sigma.
    #[arg(long, default_value_t = 1e-7)]
    pub tolerance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SigmaMethod {
    Grid,
    Mc,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(long, value_delimiter = ',', default_values_t = vec![1_000i64, 10_000, 100_000], value_parser = clap::value_parser!(i64).range(16..=10_000_000))]
    pub bound: Vec<i64>,
    #[arg(long, default_value_t = 0.1)]
    pub theta1: f64,
    #[arg(long, default_value_t = 0.1)]
    pub theta2: f64,
    /// Record wall-clock seconds per bound in the report.
    #[arg(long)]
    pub timing: bool,
    #[command(flatten)]
    pub constants: ConstantArgs,
}

#[derive(Debug, Args)]
pub struct LocalArgs {
    #[arg(long)]
    pub prime: u64,
    #[arg(long, default_value_t = 8)]
    pub n: u32,
    /// Truncation of the series.
    #[arg(long, default_value_t = 6)]
    pub cap: u32,
    #[arg(long, value_enum, default_value_t = LocalEngineArg::Fibered)]
    pub engine: LocalEngineArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LocalEngineArg {
    Fibered,
    Raw,
}

#[derive(Debug, Args)]
pub struct DstarArgs {
    #[arg(long)]
    pub prime: u64,
    #[arg(long)]
    pub n: u32,
    #[arg(long, default_value_t = 0)]
    pub mu: u32,
    #[arg(long, default_value_t = 0)]
    pub nu: u32,
    #[arg(long, allow_hyphen_values = true)]
    pub c: i128,
    #[arg(long, allow_hyphen_values = true)]
    pub d: i128,
}

#[derive(Debug, Args)]
pub struct AlphaArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(3..=4))]
    pub degree: u32,
    /// trivial, full, conj-q-i, or file:<path> with one generator per line
    /// in cycle notation over 0-based line indices.
    #[arg(long, default_value = "trivial")]
    pub action: String,
}

#[derive(Debug, Args)]
pub struct MainTermArgs {
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(16..=10_000_000))]
    pub bound: u64,
    #[arg(long, default_value_t = 0.1)]
    pub theta1: f64,
    #[arg(long, default_value_t = 0.1)]
    pub theta2: f64,
    /// The constant K in Y = B / K.
    #[arg(long, default_value_t = 1.0)]
    pub k: f64,
    /// Evaluate h(a, b; Y) for this fiber instead, given as `a,b`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub fiber: Option<Vec<i64>>,
    /// Y for --fiber, an integer or a fraction `p/q`.
    #[arg(long, default_value = "1000000000")]
    pub y: String,
    #[command(flatten)]
    pub constants: ConstantArgs,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    /// A subset that finishes within a minute.
    #[arg(long)]
    pub quick: bool,
    /// Golden counts to check against (default: the built-in copy).
    #[arg(long)]
    pub golden: Option<PathBuf>,
}

/// Failures, mapped to exit statuses by [`run`].
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Compute(crate::Error),
    Io(std::io::Error),
    /// Checks ran and at least one failed.
    Failed(String),
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        CliError::Compute(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Compute(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
            CliError::Failed(m) => write!(f, "{m}"),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

/// Parse, run and write the report. Returns the process exit status:
/// 0 on success, 1 when a computation or check fails, 2 on usage errors.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cfg) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Run a parsed configuration inside a thread pool of the requested size.
pub fn execute(cfg: &RunConfig) -> Result<(), CliError> {
    let threads =
        cfg.threads.map(usize::from).unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {threads} threads: {e}")))?;
    let (report, outcome) = pool.install(|| commands::dispatch(&cfg.command))?;
    let text = report.render(cfg.format);
    match &cfg.output {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    outcome
}
