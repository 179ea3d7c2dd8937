use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use prsreduct_core::{GranularityKind, Target};

#[derive(Debug, Parser)]
#[command(
    name = "prsreduct",
    version,
    about = "Distribution reducts in the probabilistic rough set model"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute one reduct per (alpha, beta) point.
    Reduce(ReduceArgs),
    /// Compute the attribute core per (alpha, beta) point.
    Core(CommonArgs),
    /// Evaluate every fitness function along a nested attribute chain.
    Monotonicity(MonotonicityArgs),
    /// Single-attribute significance under every fitness function.
    Significance(CommonArgs),
    /// Compare a reduct with the same number of top-ranked attributes.
    Rbar(RbarArgs),
    /// List every reduct by exhaustive search.
    Oracle(OracleArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Reduce(_) => "reduce",
            Command::Core(_) => "core",
            Command::Monotonicity(_) => "monotonicity",
            Command::Significance(_) => "significance",
            Command::Rbar(_) => "rbar",
            Command::Oracle(_) => "oracle",
        }
    }

    pub fn common(&self) -> &CommonArgs {
        match self {
            Command::Reduce(a) => &a.common,
            Command::Core(a) | Command::Significance(a) => a,
            Command::Monotonicity(a) => &a.common,
            Command::Rbar(a) => &a.common,
            Command::Oracle(a) => &a.common,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// CSV file with a header row.
    #[arg(long)]
    pub data: PathBuf,
    /// Decision column by header name or 0-based index (default: last).
    #[arg(long)]
    pub decision: Option<String>,
    /// Dataset config file with `key = value` lines.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Equal-frequency bins for numeric columns (overrides the config).
    #[arg(long)]
    pub bins: Option<usize>,
    /// Alpha values: a comma list and/or `lo:hi:step` ranges.
    #[arg(long, default_value = "0.6")]
    pub alpha: String,
    /// Beta values: one for all alphas, or one per alpha.
    /// Default: max(0, alpha - 0.2).
    #[arg(long)]
    pub beta: Option<String>,
    #[arg(long, value_enum, default_value_t = TargetArg::Lower)]
    pub target: TargetArg,
    #[arg(long, value_enum, default_value_t = KindArg::Ce)]
    pub kind: KindArg,
    /// Output file (default: stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct ReduceArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, value_enum, default_value_t = Algo::AddDel)]
    pub algo: Algo,
    /// Add a wall-time column (makes output run-dependent).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Clone, Args)]
pub struct MonotonicityArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Order in which attributes join the chain.
    #[arg(long, value_enum, default_value_t = Chain::Dataset)]
    pub chain: Chain,
}

#[derive(Debug, Clone, Args)]
pub struct RbarArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, value_enum, default_value_t = Algo::AddDel)]
    pub algo: Algo,
    /// Number of ranked attributes (default: size of the reduct).
    #[arg(long)]
    pub k: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Largest number of condition attributes to search.
    #[arg(long, default_value_t = prsreduct_core::reduce::DEFAULT_ORACLE_LIMIT)]
    pub limit: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TargetArg {
    Lower,
    Upper,
}

impl From<TargetArg> for Target {
    fn from(t: TargetArg) -> Self {
        match t {
            TargetArg::Lower => Target::Lower,
            TargetArg::Upper => Target::Upper,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Ce,
    Kg,
    Cg,
}

impl From<KindArg> for GranularityKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Ce => GranularityKind::Ce,
            KindArg::Kg => GranularityKind::Kg,
            KindArg::Cg => GranularityKind::Cg,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    AddDel,
    Del,
}

impl Algo {
    pub fn as_str(self) -> &'static str {
        match self {
            Algo::AddDel => "add-del",
            Algo::Del => "del",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Chain {
    Dataset,
    Greedy,
}
