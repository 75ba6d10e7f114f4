use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "qsd-sr",
    version,
    about = "Quasi-stationary distribution of the Shiryaev-Roberts diffusion"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dominant eigenvalue and its three approximations, checked against the published table.
    Table1(Table1Args),
    /// Quasi-stationary density on a grid.
    Pdf(GridArgs),
    /// Quasi-stationary distribution function on a grid.
    Cdf(GridArgs),
    /// Exact density, its large-threshold approximations and their errors on a grid.
    Approx(ApproxArgs),
    /// Run the validation suites and emit a JSON report.
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Suite {
    Eigenvalues,
    Normalization,
    Identities,
    Oracle,
    Mc,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Eigenvalues => "eigenvalues",
            Suite::Normalization => "normalization",
            Suite::Identities => "identities",
            Suite::Oracle => "oracle",
            Suite::Mc => "mc",
        }
    }
}

#[derive(Debug, Args)]
pub struct Output {
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct Table1Args {
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub mu: f64,
    /// Threshold; repeat for several rows. Defaults to the eight published thresholds.
    #[arg(long = "A", value_name = "A")]
    pub thresholds: Vec<f64>,
    /// Largest accepted |λ − published λ|.
    #[arg(long, default_value_t = 1e-10, allow_negative_numbers = true)]
    pub tol: f64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub mu: f64,
    #[arg(long = "A", value_name = "A", default_value_t = 20.0)]
    pub threshold: f64,
    /// Number of grid points, endpoints included.
    #[arg(long, default_value_t = 1000)]
    pub grid: usize,
    /// Left end of the grid [default: 0].
    #[arg(long, allow_negative_numbers = true)]
    pub xmin: Option<f64>,
    /// Right end of the grid [default: A].
    #[arg(long, allow_negative_numbers = true)]
    pub xmax: Option<f64>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct ApproxArgs {
    #[command(flatten)]
    pub grid: GridArgs,
    /// Emit only this approximation order [default: all three].
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    pub order: Option<u8>,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Drift used by the oracle and Monte-Carlo suites.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub mu: f64,
    /// Threshold used by the oracle and Monte-Carlo suites.
    #[arg(long = "A", value_name = "A", default_value_t = 20.0)]
    pub threshold: f64,
    /// Largest accepted |λ − published λ| in the eigenvalue suite.
    #[arg(long, default_value_t = 1e-10, allow_negative_numbers = true)]
    pub tol: f64,
    /// Grid size of the finite-volume eigensolver.
    #[arg(long, default_value_t = 20_000)]
    pub grid: usize,
    #[arg(long, default_value_t = 20)]
    pub seed: u64,
    /// Monte-Carlo paths per headstart.
    #[arg(long, default_value_t = 200_000)]
    pub paths: usize,
    #[arg(long, default_value_t = 1e-3)]
    pub dt: f64,
    #[arg(long, default_value_t = 20.0)]
    pub horizon: f64,
    /// Suites to skip; repeatable.
    #[arg(long, value_enum)]
    pub skip: Vec<Suite>,
    /// Write the report to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}
