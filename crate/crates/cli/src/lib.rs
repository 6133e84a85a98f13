//! Command-line front end: detection, evaluation, DCC profiling and
//! benchmarking over edge-list files.

mod commands;
mod partition_file;
pub mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

pub use partition_file::{labelled_groups, parse_partition, partition_json};

/// Exit status for bad input files or flag combinations.
pub const EXIT_INPUT: i32 = 2;
/// Exit status when an unvalidated metric configuration is refused.
pub const EXIT_UNVALIDATED: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Usage(String),
    #[error("kernel {kernel} with phi {phi} is not a certified metric; rerun with --allow-unvalidated-metric to validate it on a sample and proceed")]
    Unvalidated { kernel: String, phi: String },
    #[error(transparent)]
    Internal(#[from] anyhow::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Usage(_) => EXIT_INPUT,
            CliError::Unvalidated { .. } => EXIT_UNVALIDATED,
            CliError::Internal(_) => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "nmc", version, about = "Community detection on the metric space induced by D(λ) + A")]
pub struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "NMC_THREADS")]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Partition a graph into communities and score the result.
    Detect(DetectArgs),
    /// Score an existing partition.
    Evaluate(EvaluateArgs),
    /// Structural profile and detectability score.
    Dcc(DccArgs),
    /// Compare the metric method with baselines and imported partitions.
    Benchmark(BenchmarkArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PolicyArg {
    Constant,
    Degree,
    MeanDegree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KernelArg {
    Cosine,
    Pearson,
    Spearman,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PhiArg {
    Arccos,
    Identity,
    Sqrt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CriterionArg {
    Modularity,
    Conductance,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MedianArg {
    Community,
    Network,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BaselineArg {
    LabelProp,
}

#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    /// Edge list: one `u v` pair per line, `#` comments.
    #[arg(long)]
    pub input: PathBuf,
    /// Reject arcs that lack their reverse instead of symmetrizing.
    #[arg(long)]
    pub strict_undirected: bool,
}

#[derive(Debug, Clone, Args)]
pub struct MetricArgs {
    /// Diagonal value for the constant policy [default: 2].
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long, value_enum, default_value = "constant")]
    pub lambda_policy: PolicyArg,
    #[arg(long, value_enum, default_value = "cosine")]
    pub kernel: KernelArg,
    #[arg(long, value_enum, default_value = "arccos")]
    pub phi: PhiArg,
    /// Accept a kernel/phi pair without a metric guarantee after sampling the axioms.
    #[arg(long)]
    pub allow_unvalidated_metric: bool,
}

#[derive(Debug, Clone, Args)]
pub struct DetectArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub metric: MetricArgs,
    /// Number of communities.
    #[arg(long, conflicts_with = "k_range", required_unless_present = "k_range")]
    pub k: Option<usize>,
    /// Sweep `A:B` and keep the best k by --criterion.
    #[arg(long)]
    pub k_range: Option<String>,
    #[arg(long, value_enum, default_value = "modularity")]
    pub criterion: CriterionArg,
    /// Restarts per k; the best by --criterion is kept.
    #[arg(long, default_value_t = 5)]
    pub seeds: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub max_iter: usize,
    #[arg(long, value_enum, default_value = "community")]
    pub median: MedianArg,
    /// RunReport JSON destination.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Also write the partition as a partition file.
    #[arg(long)]
    pub partition_out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct EvaluateArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Partition file `{"communities": [[label, ...], ...]}`.
    #[arg(long)]
    pub partition: PathBuf,
    /// `all` or a comma-separated list of measure names.
    #[arg(long, default_value = "all")]
    pub measures: String,
    #[arg(long, value_enum, default_value = "community")]
    pub median: MedianArg,
    /// RunReport JSON destination.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct DccArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Seed for source sampling on large graphs.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct BenchmarkArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub metric: MetricArgs,
    /// k sweep `A:B` for the metric method.
    #[arg(long)]
    pub k_range: String,
    #[arg(long, value_enum, default_value = "modularity")]
    pub criterion: CriterionArg,
    /// Restarts per k.
    #[arg(long, default_value_t = 5)]
    pub seeds: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub max_iter: usize,
    #[arg(long, value_enum, value_delimiter = ',')]
    pub baselines: Vec<BaselineArg>,
    /// Partition files produced elsewhere, scored as-is.
    #[arg(long = "import", num_args = 1..)]
    pub imports: Vec<PathBuf>,
    /// BenchmarkReport JSON destination.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Comparison table CSV destination (also printed).
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

/// Runs a parsed command line and returns the text for standard output.
pub fn run(cli: Cli) -> Result<String, CliError> {
    let work = move || match cli.command {
        Command::Detect(a) => commands::detect(&a),
        Command::Evaluate(a) => commands::evaluate(&a),
        Command::Dcc(a) => commands::dcc(&a),
        Command::Benchmark(a) => commands::benchmark(&a),
    };
    match cli.threads {
        Some(0) => Err(CliError::Usage("--threads must be at least 1".into())),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| CliError::Internal(e.into()))?
            .install(work),
        None => work(),
    }
}
