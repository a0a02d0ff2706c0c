use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "lochs", version, about = "Entropies of continued-fraction expansions and Lochs-type digit comparisons")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Entropy of each family by adaptive quadrature.
    EntropyTable(EntropyTableArgs),
    /// Monte Carlo estimate of m(n, x)/n for a source and target expansion.
    Lochs(LochsArgs),
    /// Entropy as the average of -ln μ(C_n(x))/n over sampled points.
    Smb(SmbArgs),
    /// Distortion bound of the composed inverse branches on random blocks.
    RenyiCheck(RenyiArgs),
    /// Compares h(theta, s = N) with h(ncf, N).
    Conjecture(ConjectureArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EntropyTableArgs {
    /// Restrict the table to one family.
    #[arg(long)]
    pub family: Option<String>,
    /// Parameter values, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub param: Vec<u64>,
    /// Absolute quadrature tolerance.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct LochsArgs {
    /// Source family, e.g. `decimal` or `ncf(3)`.
    #[arg(long)]
    pub source: String,
    /// Target family, e.g. `gauss` or `chan:2`.
    #[arg(long)]
    pub target: String,
    #[arg(long, default_value_t = 1000)]
    pub n: usize,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct SmbArgs {
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub param: Option<u64>,
    #[arg(long, default_value_t = 10_000)]
    pub n: usize,
    #[arg(long, default_value_t = 50)]
    pub samples: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct RenyiArgs {
    /// Restrict the check to one family.
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long, value_delimiter = ',')]
    pub param: Vec<u64>,
    /// Block length.
    #[arg(long, default_value_t = 8)]
    pub n: usize,
    /// Number of random blocks per family.
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct ConjectureArgs {
    /// Values of N (and s = N), comma separated.
    #[arg(long, value_delimiter = ',')]
    pub param: Vec<u64>,
    /// Largest accepted |h(theta) - h(ncf)|.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[command(flatten)]
    pub output: Output,
}
