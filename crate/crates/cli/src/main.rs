//! `pruwalk`: enumeration, series, verification, phase diagrams and height
//! profiles for adsorbing prudent walks, as reproducible CSV/JSON runs.
//!
//! Exit status: 0 on success, 1 on invalid input, 2 when a computed check
//! fails (for instance a nonzero functional-equation residual).

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use output::Format;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("cannot write {0}: {1}")]
    Io(String, std::io::Error),
    #[error("check failed: {0}")]
    Check(String),
    #[error("computation failed: {0}")]
    Compute(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Validation(_) | CliError::Io(..) => 1,
            CliError::Check(_) | CliError::Compute(_) => 2,
        }
    }
}

#[derive(Parser)]
#[command(name = "pruwalk", version, about = "Adsorbing prudent walks: exact series and phase analysis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Weighted counts Z_n(a) by exhaustive enumeration or transfer counting.
    Enumerate(EnumerateArgs),
    /// Coefficients of R, T and W from the kernel-method solution.
    Series(SeriesArgs),
    /// Functional-equation residuals.
    Verify(VerifyArgs),
    /// Real roots of the critical polynomials.
    Roots(RootsArgs),
    /// Free energy and surface density over an alpha grid.
    Phase(PhaseArgs),
    /// Ratio-method estimates of the dominant singularity at fixed a.
    Estimate(EstimateArgs),
    /// Mean endpoint and maximum heights at a = 1.
    Heights(HeightsArgs),
    /// Height exponent against transition order, one row per model.
    Report(ReportArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
pub enum Family {
    #[value(name = "1sided")]
    #[serde(rename = "1sided")]
    OneSided,
    #[value(name = "2sided")]
    #[serde(rename = "2sided")]
    TwoSided,
    #[value(name = "3sided")]
    #[serde(rename = "3sided")]
    ThreeSided,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EndpointArg {
    Tail,
    Loop,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CountMethod {
    /// Depth-first enumeration of every walk.
    Dfs,
    /// Transfer counting over box states (two-sided only).
    Dp,
}

#[derive(Args, Serialize)]
pub struct OutputArgs {
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Output format; inferred from the --out extension when absent.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Args, Serialize)]
pub struct EnumerateArgs {
    #[arg(long, value_enum, default_value = "2sided")]
    pub family: Family,
    #[arg(long)]
    pub max_n: usize,
    #[arg(long, value_enum, default_value = "tail")]
    pub endpoint: EndpointArg,
    #[arg(long, value_enum, default_value = "dfs")]
    pub method: CountMethod,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Serialize)]
pub struct SeriesArgs {
    #[arg(long)]
    pub order: usize,
    /// Fugacity as an exact rational (`3/2`, `1.5`); symbolic when absent.
    #[arg(long)]
    pub a: Option<String>,
    /// Value of u; symbolic when absent.
    #[arg(long)]
    pub u: Option<String>,
    /// Value of v; symbolic when absent.
    #[arg(long)]
    pub v: Option<String>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Serialize)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "2sided")]
    pub family: Family,
    /// Highest order checked; defaults to the order of --input.
    #[arg(long)]
    pub order: Option<usize>,
    /// A document written by `series` (symbolic u, v, a) to check instead
    /// of recomputing.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Add 1 to the z^K coefficient of T before checking (fault injection).
    #[arg(long, value_name = "K")]
    pub inject: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RootPoly {
    /// 1 - 2z - 2z^2 + 2z^3
    Tails,
    /// The degree-10 loop polynomial in z.
    Loops,
    /// The degree-10 polynomial for the loop critical fugacity.
    LoopsA,
    /// The adsorbed cubic in z at the fugacity given by --a.
    Adsorbed,
}

#[derive(Args, Serialize)]
pub struct RootsArgs {
    /// Polynomial to solve; all three fixed ones when absent.
    #[arg(long, value_enum)]
    pub poly: Option<RootPoly>,
    /// Fugacity for --poly adsorbed.
    #[arg(long)]
    pub a: Option<String>,
    /// Open search interval; defaults to (0, 1) in z and (1, 2) in a.
    #[arg(long)]
    pub lo: Option<f64>,
    #[arg(long)]
    pub hi: Option<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Serialize)]
pub struct PhaseArgs {
    /// `tails`, `loops`, or a baseline such as `dyck`, `motzkin_loops_vertex`.
    #[arg(long, default_value = "tails")]
    pub model: String,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub alpha_min: f64,
    #[arg(long, default_value_t = 1.6, allow_negative_numbers = true)]
    pub alpha_max: f64,
    /// Grid intervals; the sweep has steps + 1 points.
    #[arg(long, default_value_t = 200)]
    pub steps: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Serialize)]
pub struct EstimateArgs {
    #[arg(long, default_value = "tails")]
    pub model: String,
    /// Comma-separated fugacities.
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub a: Vec<String>,
    #[arg(long, default_value_t = 50)]
    pub order: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Serialize)]
pub struct HeightsArgs {
    #[arg(long, default_value = "tails")]
    pub model: String,
    #[arg(long)]
    pub max_n: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Serialize)]
pub struct ReportArgs {
    #[arg(long, default_value_t = 1000)]
    pub baseline_n: usize,
    #[arg(long, default_value_t = 200)]
    pub prudent_n: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(s) = std::env::var("PRUWALK_THREADS") else {
        return Ok(());
    };
    let n: usize = s
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Validation(format!("PRUWALK_THREADS must be a positive integer, got {s:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Compute(e.to_string()))
}

fn run(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    match cli.command {
        Command::Enumerate(a) => commands::enumerate(&a),
        Command::Series(a) => commands::series(&a),
        Command::Verify(a) => commands::verify(&a),
        Command::Roots(a) => commands::roots(&a),
        Command::Phase(a) => commands::phase(&a),
        Command::Estimate(a) => commands::estimate(&a),
        Command::Heights(a) => commands::heights(&a),
        Command::Report(a) => commands::report(&a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let informational = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = e.print();
            return if informational { ExitCode::SUCCESS } else { ExitCode::from(1) };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
