//! `etafloor` command-line front end.
//!
//! Every command builds a [`documents::Document`] and a flat [`output::Table`];
//! `--format` picks which one is written. Exit codes follow [`exit`].

pub mod commands;
pub mod documents;
pub mod output;
pub mod parse;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use etafloor_core::{ComplexPoint, Engine, Real};
use output::Format;
use parse::Range;

pub mod exit {
    pub const OK: i32 = 0;
    pub const VIOLATION: i32 = 2;
    pub const NUMERICAL: i32 = 3;
    pub const USAGE: i32 = 64;
    pub const IO: i32 = 74;
}

/// Caps `--workers` (and the default worker count) when set.
pub const MAX_WORKERS_ENV: &str = "ETAFLOOR_MAX_WORKERS";

#[derive(Debug, Parser)]
#[command(
    name = "etafloor",
    version,
    about = "Dirichlet eta evaluation and lower-bound scans"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate η(s) (and optionally ζ(s)) at one point.
    Eval(EvalArgs),
    /// Run the seeded proposition suites.
    Props(PropsArgs),
    /// Tail decomposition at a point or along a vertical line.
    Pca(PcaArgs),
    /// Scan |η| against the floor on a line or an α-β grid.
    Scan(ScanArgs),
    /// Refine zeros of η(1/2 + it) on a t-range.
    Zeros(ZerosArgs),
    /// Merge and compare earlier JSON outputs.
    Report(ReportArgs),
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write here (atomically) instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct EngineArgs {
    #[arg(long, default_value = "checked", value_parser = parse_engine)]
    pub engine: Engine,
}

fn parse_engine(text: &str) -> Result<Engine, String> {
    text.parse::<Engine>().map_err(|e| e.to_string())
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    pub s: ComplexPoint,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: Real,
    /// Also report ζ(s) recovered from η(s).
    #[arg(long)]
    pub zeta: bool,
    #[command(flatten)]
    pub engine: EngineArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct PropsArgs {
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Random cases per suite.
    #[arg(long, default_value_t = 10_000)]
    pub cases: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct PcaArgs {
    /// A single point; otherwise `--alpha` with `--beta lo:hi` and `--step`.
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true, conflicts_with_all = ["alpha", "beta"])]
    pub s: Option<ComplexPoint>,
    #[arg(long)]
    pub alpha: Option<Real>,
    #[arg(long, value_parser = parse::range, allow_hyphen_values = true)]
    pub beta: Option<Range>,
    #[arg(long, default_value_t = 0.1)]
    pub step: Real,
    /// Rotation angle; the maximising rotation when omitted.
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<Real>,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: Real,
    #[command(flatten)]
    pub engine: EngineArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// A value or a `lo:hi` range stepped by `--alpha-step`.
    #[arg(long, value_parser = parse::range)]
    pub alpha: Range,
    #[arg(long, default_value_t = etafloor_core::scanner::DEFAULT_ALPHA_STEP)]
    pub alpha_step: Real,
    #[arg(long, value_parser = parse::range, allow_hyphen_values = true)]
    pub beta: Range,
    #[arg(long, default_value_t = etafloor_core::scanner::DEFAULT_BETA_STEP)]
    pub step: Real,
    #[arg(long, default_value_t = etafloor_core::scanner::DEFAULT_SCAN_TOL)]
    pub tol: Real,
    /// Skip golden-section refinement of grid minima.
    #[arg(long)]
    pub no_refine: bool,
    #[arg(long)]
    pub workers: Option<usize>,
    /// Exit 2 when any margin is below `-tol`.
    #[arg(long)]
    pub strict: bool,
    #[command(flatten)]
    pub engine: EngineArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ZerosArgs {
    #[arg(long, value_parser = parse::range)]
    pub t: Range,
    /// Largest accepted residual |η(1/2 + it)|.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: Real,
    #[arg(long)]
    pub workers: Option<usize>,
    #[command(flatten)]
    pub engine: EngineArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// JSON files written by earlier runs.
    #[arg(required = true)]
    pub inputs: Vec<PathBuf>,
    /// Largest difference at which two inputs still agree.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: Real,
    #[arg(long)]
    pub strict: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    Numerical(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            Self::Usage(_) => exit::USAGE,
            Self::Io(_) => exit::IO,
            Self::Numerical(_) => exit::NUMERICAL,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Usage(m) => write!(f, "usage error: {m}"),
            Self::Io(m) => write!(f, "i/o error: {m}"),
            Self::Numerical(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

impl From<etafloor_core::Error> for CliError {
    fn from(e: etafloor_core::Error) -> Self {
        use etafloor_core::Error as E;
        match e {
            E::Domain(_) | E::InvalidInput(_) | E::Contract { .. } => Self::Usage(e.to_string()),
            _ => Self::Numerical(e.to_string()),
        }
    }
}

/// Parse arguments, run, and return the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                exit::USAGE
            } else {
                exit::OK
            };
        }
    };
    match commands::run(&cli.command) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(std::io::stderr(), "etafloor: {e}");
            e.code()
        }
    }
}
