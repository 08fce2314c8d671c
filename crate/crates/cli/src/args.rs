use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use swarmnav_core::sim::TiePolicy;

#[derive(Debug, Parser)]
#[command(
    name = "swarmnav",
    version,
    about = "Majority-vote swarm navigation analytics and simulation"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Optimal fractional gain for every swarm size from 2 to M_MAX.
    GainTable {
        #[arg(long, default_value_t = 7, value_parser = clap::value_parser!(u32).range(2..))]
        m_max: u32,
        /// Emit CSV instead of an aligned table.
        #[arg(long)]
        csv: bool,
    },
    /// Fractional gain and majority error on a grid of p, as CSV.
    Curves {
        #[arg(long, default_value_t = 0.01)]
        p_step: f64,
        #[arg(long, default_value_t = 0.5)]
        p_max: f64,
        /// Swarm sizes, comma separated.
        #[arg(long, value_delimiter = ',', default_values_t = [2, 3, 4, 5, 6, 7])]
        m: Vec<u32>,
    },
    /// Build a scenario file.
    #[command(subcommand)]
    Gen(Gen),
    /// Run a Monte Carlo sweep over swarm sizes and write the result CSV.
    Run(RunArgs),
    /// Load a scenario file and report whether it is usable.
    Validate { scenario: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum Gen {
    /// Square lattice flown corner to corner.
    Grid {
        #[arg(long)]
        rows: u32,
        #[arg(long)]
        cols: u32,
        /// Distance between neighbouring landmarks, metres.
        #[arg(long, default_value_t = 50.0)]
        spacing: f64,
        #[arg(long)]
        name: Option<String>,
        /// Scenario file to write; standard output if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Landmarks from the node/way subset of an OpenStreetMap XML file,
    /// flown between the two furthest connected landmarks.
    Osm {
        file: PathBuf,
        #[arg(long)]
        name: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum TieArg {
    Success,
    Fragmentation,
}

impl From<TieArg> for TiePolicy {
    fn from(t: TieArg) -> Self {
        match t {
            TieArg::Success => TiePolicy::TieIsSuccess,
            TieArg::Fragmentation => TiePolicy::TieIsFragmentation,
        }
    }
}

#[derive(Debug, Args, Default)]
pub struct RunArgs {
    /// Experiment config JSON. Flags below override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub scenario: Option<PathBuf>,
    /// Recognition error rate.
    #[arg(long)]
    pub p: Option<f64>,
    /// Advice error rate.
    #[arg(long)]
    pub q: Option<f64>,
    /// Success ratio; sets p = q = 1 - ratio.
    #[arg(long, conflicts_with_all = ["p", "q"])]
    pub ratio: Option<f64>,
    /// Swarm sizes, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub m: Option<Vec<u32>>,
    #[arg(long)]
    pub trials: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub retry_cap: Option<u32>,
    /// Cruise speed, m/s.
    #[arg(long)]
    pub speed: Option<f64>,
    /// Worker threads; 0 uses every core. Never changes the output.
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long, value_enum)]
    pub tie_policy: Option<TieArg>,
    /// Result CSV; standard output if omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}
