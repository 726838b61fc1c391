//! Command-line argument definitions.

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(
    name = "gadsim",
    version,
    about = "Simulate a tunable-temperature heat bath acting on a photonic polarization qubit"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Apply the damping channel to a state and print the result.
    Apply(ApplyArgs),
    /// Emit the analytic temperature sweep (no sampling).
    Sweep(SweepArgs),
    /// Run the Monte Carlo heralded-photon experiment.
    Simulate(SweepArgs),
    /// Check trace preservation, complete positivity and the
    /// interferometer-channel equivalence.
    Verify(VerifyArgs),
}

#[derive(Debug, Parser)]
pub struct ApplyArgs {
    /// Input state: `H`, `V`, `mixed:<beta>`, or a path to a state JSON file.
    #[arg(long)]
    pub state: String,
    /// Bath excited-state population, in [0, 1].
    #[arg(long)]
    pub xi: f64,
    /// Decay probability, in [0, 1].
    #[arg(long = "p")]
    pub p: f64,
    /// Qubit energy gap used in the temperature summary.
    #[arg(long, default_value_t = 1.0)]
    pub eps: f64,
}

/// Flags shared by `sweep` and `simulate`. Every value is optional here:
/// defaults < config file < flags.
#[derive(Debug, Parser)]
pub struct SweepArgs {
    /// Plain-text key=value configuration file.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Qubit energy gap.
    #[arg(long)]
    pub eps: Option<f64>,
    /// First V-arm angle of the sweep, radians.
    #[arg(long)]
    pub theta_start: Option<f64>,
    /// Last V-arm angle of the sweep, radians.
    #[arg(long)]
    pub theta_stop: Option<f64>,
    /// Number of points in the theta grid.
    #[arg(long)]
    pub theta_count: Option<usize>,
    /// H-arm angles, comma separated, radians.
    #[arg(long, value_delimiter = ',')]
    pub phi: Option<Vec<f64>>,
    /// Input states: `H`, `V`, `mixed:<beta>`, or a pump angle in radians.
    #[arg(long, value_delimiter = ',')]
    pub inputs: Option<Vec<String>>,
    /// Heralded events per sweep point.
    #[arg(long)]
    pub n_per_point: Option<u64>,
    /// Seed of the portable random generator.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Output format.
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
}

#[derive(Debug, Parser)]
pub struct VerifyArgs {
    /// Bath population grid, comma separated; defaults to 0, 0.1, …, 1.
    #[arg(long, value_delimiter = ',')]
    pub xi: Option<Vec<f64>>,
    /// Decay probability grid, comma separated; defaults to 0, 0.1, …, 1.
    #[arg(long = "p", value_delimiter = ',')]
    pub p: Option<Vec<f64>>,
    /// Fault injection: scale the first Kraus operator by (1 + this value).
    #[arg(long)]
    pub perturb: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format `{other}` (expected csv or json)")),
        }
    }
}
