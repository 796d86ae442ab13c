//! `entvar`: entropy estimates, population quantities, maximum-variance
//! tables and Monte Carlo experiments from the command line.
//!
//! Data goes to standard output (or `--output`), messages to standard error.
//! Exit status is 0 on success, 2 for invalid input or arguments, 3 when a
//! simulation would exceed its budget, 1 when output cannot be written.

mod commands;
mod grid;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use grid::NGrid;

#[derive(Debug, Parser)]
#[command(
    name = "entvar",
    version,
    about = "Plug-in entropy estimates and their uncertainty"
)]
struct Cli {
    /// Write data to this file instead of standard output.
    #[arg(long, short, global = true, value_name = "PATH")]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Entropy estimate and error bars for a count histogram.
    Analyze(AnalyzeArgs),
    /// Exact functionals of a known distribution and first-order predictions.
    Population(PopulationArgs),
    /// Stationary points and the maximum of the variance parameter.
    Maxvar(MaxvarArgs),
    /// Monte Carlo convergence experiment, one CSV row per sample size.
    Simulate(SimulateArgs),
    /// Variance parameter and entropy on a barycentric grid of the 3-simplex.
    SimplexGrid(SimplexGridArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// `s_i` proportional to `i`.
    Arithmetic,
    /// The maximum-variance distribution.
    Maxvar,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Histogram file: one count per line, single-column CSV, or JSON array.
    pub file: PathBuf,
    /// Known support size for the Miller-Madow term and the worst-case bound
    /// (default: number of bins in the file).
    #[arg(long, value_name = "M")]
    pub support: Option<usize>,
    /// Use the number of occupied bins as the support size.
    #[arg(long, conflicts_with = "support")]
    pub observed_support: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct PopulationArgs {
    /// Distribution file: one probability per line, single-column CSV, or JSON array.
    pub file: PathBuf,
    /// Divide the entries by their sum.
    #[arg(long)]
    pub normalize: bool,
    /// Sample sizes for the predicted mean and variance of the plug-in estimator.
    #[arg(long = "n", value_delimiter = ',', value_parser = parse_n,
          default_value = "1e2,1e3,1e4,1e5,1e6")]
    pub n: Vec<u64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct MaxvarArgs {
    /// Support size.
    #[arg(long, required_unless_present = "m_range", conflicts_with = "m_range")]
    pub m: Option<usize>,
    /// Inclusive range of support sizes.
    #[arg(long, num_args = 2, value_names = ["A", "B"])]
    pub m_range: Option<Vec<usize>>,
    /// Number of bins at the larger value.
    #[arg(long, default_value_t = 1)]
    pub k: usize,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Distribution file to sample from.
    #[arg(
        long,
        value_name = "FILE",
        required_unless_present = "preset",
        conflicts_with = "preset"
    )]
    pub dist: Option<PathBuf>,
    /// Divide the entries of `--dist` by their sum.
    #[arg(long, requires = "dist")]
    pub normalize: bool,
    /// Built-in distribution instead of a file.
    #[arg(long, value_enum, requires = "m")]
    pub preset: Option<Preset>,
    /// Support size of the preset.
    #[arg(long, requires = "preset")]
    pub m: Option<usize>,
    /// Sample sizes as start:stop[:points_per_decade].
    #[arg(long, default_value = "1e2:1e6:9")]
    pub n_grid: NGrid,
    /// Simulated histograms per sample size.
    #[arg(long, default_value_t = 10_000)]
    pub trials: usize,
    /// Random seed; the same seed reproduces the output byte for byte.
    #[arg(long, env = "ENTROPY_SEED", default_value_t = 42)]
    pub seed: u64,
    /// Largest allowed trials x max(n).
    #[arg(long, value_parser = grid::parse_count,
          default_value_t = entvar_core::montecarlo::DEFAULT_BUDGET)]
    pub budget: u128,
    /// Report each finished sample size on standard error.
    #[arg(long)]
    pub progress: bool,
}

#[derive(Debug, Args)]
pub struct SimplexGridArgs {
    /// Number of states; only 3 is supported.
    #[arg(long, default_value_t = 3)]
    pub m: usize,
    /// Grid divisions per edge.
    #[arg(long, value_name = "R")]
    pub resolution: usize,
}

fn parse_n(s: &str) -> Result<u64, String> {
    let v = grid::parse_count(s)?;
    match u64::try_from(v) {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err(format!("`{s}` is not a sample size")),
    }
}

/// A failed run: exit status and message.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<entvar_core::Error> for Failure {
    fn from(e: entvar_core::Error) -> Self {
        let code = match e {
            entvar_core::Error::BudgetExceeded { .. } => 3,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: 1,
            message: format!("cannot write output: {e}"),
        }
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure {
            code: 1,
            message: format!("cannot write output: {e}"),
        }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure {
            code: 1,
            message: format!("cannot write output: {e}"),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.output.as_deref();
    let result = match &cli.command {
        Command::Analyze(a) => commands::analyze(a, out),
        Command::Population(a) => commands::population(a, out),
        Command::Maxvar(a) => commands::maxvar(a, out),
        Command::Simulate(a) => commands::simulate(a, out),
        Command::SimplexGrid(a) => commands::simplex_grid(a, out),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("entvar: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
