use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Debug, Parser)]
#[command(
    name = "spinframe",
    version,
    about = "Singlet spin correlations: exact values, Monte Carlo, and local-model comparisons"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Trials per estimate
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub trials: u64,

    /// Master seed; drawn from system entropy and printed when omitted
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Output format [default: csv for sweep, table otherwise]
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,

    /// Write output to this file instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Read angle arguments as degrees
    #[arg(long, global = true)]
    pub degrees: bool,

    /// Worker threads; results do not depend on this
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Report duration_ms as 0 so JSON output is byte-reproducible
    #[arg(long, global = true)]
    pub no_timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BellModel {
    Quantum,
    LhvVector,
    LhvEnumerate,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the exact-value check suite
    Verify,

    /// Estimate E(θ) for analyzers separated by THETA
    Correlate {
        #[arg(long, allow_negative_numbers = true)]
        theta: f64,
    },

    /// Evaluate Bell's and Wigner's inequalities at three analyzer angles
    Bell {
        #[arg(allow_negative_numbers = true)]
        a: f64,
        #[arg(allow_negative_numbers = true)]
        b: f64,
        #[arg(allow_negative_numbers = true)]
        c: f64,
        #[arg(long, value_enum, default_value_t = BellModel::Quantum)]
        model: BellModel,
    },

    /// Tabulate analytic, singlet and hidden-vector E(θ) over a grid
    Sweep {
        #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
        theta_min: f64,
        /// Upper end of the grid [default: π, or 180 with --degrees]
        #[arg(long, allow_negative_numbers = true)]
        theta_max: Option<f64>,
        #[arg(long, default_value_t = 13)]
        steps: usize,
    },

    /// Sealed-envelope conditional probability demonstration
    Envelope {
        #[arg(long, default_value_t = 1)]
        runs: u64,
    },

    /// Spin-up state along ALPHA decomposed in the BASIS eigenbasis
    Rotate {
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, allow_negative_numbers = true)]
        basis: f64,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Verify => "verify",
            Command::Correlate { .. } => "correlate",
            Command::Bell { .. } => "bell",
            Command::Sweep { .. } => "sweep",
            Command::Envelope { .. } => "envelope",
            Command::Rotate { .. } => "rotate",
        }
    }

    /// Whether results depend on the seed.
    pub fn samples(&self) -> bool {
        match self {
            Command::Correlate { .. } | Command::Sweep { .. } | Command::Envelope { .. } => true,
            Command::Bell { model, .. } => *model != BellModel::LhvEnumerate,
            Command::Verify | Command::Rotate { .. } => false,
        }
    }

    pub fn default_format(&self) -> OutputFormat {
        match self {
            Command::Sweep { .. } => OutputFormat::Csv,
            _ => OutputFormat::Table,
        }
    }
}
