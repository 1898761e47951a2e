use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tricount::ReadMode;

#[derive(Debug, Parser)]
#[command(
    name = "tricount",
    version,
    about = "Parallel triangle counting with the forward algorithm"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count triangles and report transitivity and phase timings.
    Count(CountArgs),
    /// Repeat timed runs and report mean, relative deviation and phase split.
    Bench(BenchArgs),
    /// Write a synthetic graph.
    Generate(GenerateArgs),
    /// Convert between edge-list text and the binary format.
    Convert(ConvertArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    /// Binary if the file starts with the TRI1 magic, METIS for `.graph`
    /// and `.metis` files, text otherwise.
    Auto,
    Text,
    Binary,
    Metis,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Binary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Strict,
    Symmetrize,
    Normalize,
}

impl From<Mode> for ReadMode {
    fn from(mode: Mode) -> Self {
        match mode {
            Mode::Strict => ReadMode::Strict,
            Mode::Symmetrize => ReadMode::Symmetrize,
            Mode::Normalize => ReadMode::Normalize,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    /// Graph file.
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = InputFormat::Auto)]
    pub format: InputFormat,
    /// How edge-list text is interpreted.
    #[arg(long, value_enum, default_value_t = Mode::Symmetrize)]
    pub mode: Mode,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Counting workers per pool [default: available parallelism].
    #[arg(long, env = "TRICOUNT_WORKERS", value_parser = clap::value_parser!(u32).range(1..))]
    pub workers: Option<u32>,
    /// Contiguous edge ranges counted by independent pools.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub pools: u32,
}

impl RunArgs {
    pub fn workers(&self) -> usize {
        self.workers
            .map(|w| w as usize)
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
    }

    pub fn pools(&self) -> usize {
        self.pools as usize
    }
}

#[derive(Debug, Clone, Args)]
pub struct CountArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub run: RunArgs,
    /// Timed runs, after one untimed warm-up.
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(1..))]
    pub runs: u32,
    /// Append one JSON object per timed run to this file.
    #[arg(long)]
    pub log: Option<PathBuf>,
    /// Name used in the report [default: input file name].
    #[arg(long)]
    pub name: Option<String>,
    /// Pool count for the Amdahl projection.
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
    pub project_pools: u32,
}

#[derive(Debug, Clone, Args)]
pub struct GenerateArgs {
    /// rmat, ba (barabasi_albert), ws (watts_strogatz), complete, cycle,
    /// path, star or gnp. May be omitted when --config names the family.
    pub family: Option<String>,
    /// key=value file with `family` and parameters; flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub m_attach: Option<u32>,
    #[arg(long)]
    pub leaves: Option<u32>,
    #[arg(long)]
    pub scale: Option<u32>,
    #[arg(long)]
    pub edge_factor: Option<u32>,
    #[arg(long)]
    pub a: Option<f64>,
    #[arg(long)]
    pub b: Option<f64>,
    #[arg(long)]
    pub c: Option<f64>,
    #[arg(long)]
    pub d: Option<f64>,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
}

#[derive(Debug, Clone, Args)]
pub struct ConvertArgs {
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = InputFormat::Auto)]
    pub from: InputFormat,
    #[arg(long, value_enum)]
    pub to: OutputFormat,
    #[arg(long, value_enum, default_value_t = Mode::Symmetrize)]
    pub mode: Mode,
    #[arg(long)]
    pub out: PathBuf,
}
