//! `swplace`: generate canonical networks, place them on hierarchical
//! hardware, validate placements, run perturbation sweeps and compare
//! routing-memory models.

mod commands;
mod error;
mod files;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "swplace", version, about, long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a canonical small-world network.
    Generate(GenerateArgs),
    /// Place a network and write the placement.
    Place(PlaceArgs),
    /// Check a placement against the hardware constraints.
    Validate(ValidateArgs),
    /// Place many node-removal perturbations of a network.
    PerturbSweep(PerturbArgs),
    /// Compare routing memory of the hierarchical and fixed fan-in schemes.
    Cost(CostArgs),
    /// Print small-world statistics of a network.
    Stats(StatsArgs),
}

/// Hardware description shared by the placement commands.
#[derive(Args, Serialize, Clone, Debug)]
pub struct HardwareArgs {
    /// Neurons per core.
    #[arg(long)]
    pub n: Option<u32>,
    /// Router branching factor.
    #[arg(long)]
    pub b: Option<u32>,
    /// Router levels; the smallest fitting tree when omitted.
    #[arg(long)]
    pub levels: Option<u32>,
    /// TOML or JSON file with keys `n`, `b`, `L`. Flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    Tree,
    Line,
}

#[derive(Args, Serialize, Debug)]
pub struct GenerateArgs {
    /// Neurons per population.
    #[arg(long, default_value_t = 16)]
    pub n: u32,
    /// Number of populations; 0 writes an empty network.
    #[arg(long, default_value_t = 7)]
    pub cores: u32,
    #[arg(long, default_value_t = 4)]
    pub b: u32,
    #[arg(long, value_enum, default_value_t = ModeArg::Tree)]
    pub mode: ModeArg,
    /// Populations farther apart than this stay unconnected.
    #[arg(long)]
    pub max_level: Option<u32>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// `.json` for JSON, anything else for an edge list.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Copy, Clone, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpareArg {
    Off,
    ExtraCores,
}

#[derive(Copy, Clone, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CountArg {
    Distinct,
    Synapses,
}

#[derive(Args, Serialize, Debug)]
pub struct PlaceArgs {
    #[arg(long)]
    pub net: PathBuf,
    #[command(flatten)]
    pub hw: HardwareArgs,
    #[arg(long, value_enum, default_value_t = SpareArg::Off)]
    pub spare: SpareArg,
    /// How inter-core connections are counted for slot assignment.
    #[arg(long, value_enum, default_value_t = CountArg::Distinct)]
    pub count_mode: CountArg,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Serialize, Debug)]
pub struct ValidateArgs {
    #[arg(long)]
    pub net: PathBuf,
    #[arg(long)]
    pub placement: PathBuf,
    #[command(flatten)]
    pub hw: HardwareArgs,
    /// Also write the report as JSON.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Serialize, Debug)]
pub struct PerturbArgs {
    #[arg(long)]
    pub net: PathBuf,
    #[command(flatten)]
    pub hw: HardwareArgs,
    /// Comma-separated removal fractions; count mode when omitted.
    #[arg(long, value_delimiter = ',')]
    pub fractions: Option<Vec<f64>>,
    /// First removal count in count mode.
    #[arg(long, default_value_t = 1)]
    pub from: usize,
    /// Last removal count in count mode; all neurons when omitted.
    #[arg(long)]
    pub to: Option<usize>,
    #[arg(long, default_value_t = 5)]
    pub trials: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Serialize, Debug)]
pub struct CostArgs {
    /// Comma-separated network sizes; powers of two from `--min-exp` to `--max-exp` when omitted.
    #[arg(long, value_delimiter = ',')]
    pub sizes: Option<Vec<u64>>,
    #[arg(long, default_value_t = 10)]
    pub min_exp: u32,
    #[arg(long, default_value_t = 20)]
    pub max_exp: u32,
    /// Comma-separated schemes: hierarchical, crossbar_fixed, cam_mixed.
    #[arg(long, value_delimiter = ',')]
    pub schemes: Option<Vec<String>>,
    /// TOML file with `[[model]]` parameter tables.
    #[arg(long)]
    pub params: Option<PathBuf>,
    /// Population size of the canonical workload.
    #[arg(long, default_value_t = 256)]
    pub workload_n: u32,
    /// Branching factor of the canonical workload.
    #[arg(long, default_value_t = 4)]
    pub workload_b: u32,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Serialize, Debug)]
pub struct StatsArgs {
    #[arg(long)]
    pub net: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Generate(a) => commands::generate(a),
        Command::Place(a) => commands::place(a),
        Command::Validate(a) => commands::validate(a),
        Command::PerturbSweep(a) => commands::perturb_sweep(a),
        Command::Cost(a) => commands::cost(a),
        Command::Stats(a) => commands::stats(a),
    };
    match result {
        Ok(()) => ExitCode::from(error::exit::OK),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
