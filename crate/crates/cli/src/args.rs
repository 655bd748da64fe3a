use std::path::PathBuf;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};
use mmresp_core::respiration::Method;
use mmresp_core::RunConfig;

/// Respiratory-interval estimation from simulated FMCW MIMO radar.
#[derive(Debug, Parser)]
#[command(name = "mmresp", version, about)]
pub struct Cli {
    /// Worker threads; outputs do not depend on this.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Synthesize one data cube per radar unit.
    Simulate(SimulateArgs),
    /// Image a cube and estimate respiratory intervals.
    Process(ProcessArgs),
    /// Compare interval series from two radar units and against truth.
    Evaluate(EvaluateArgs),
    /// Evaluate both methods over a grid of thresholds, tau0 values and seeds.
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
pub struct ConfigArg {
    /// TOML run configuration; built-in defaults when omitted.
    #[arg(long, short)]
    pub config: Option<PathBuf>,
}

impl ConfigArg {
    pub fn load(&self) -> Result<RunConfig> {
        Ok(match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        })
    }
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub config: ConfigArg,
    /// Output directory.
    #[arg(long, short)]
    pub out: PathBuf,
    /// Overrides the scene seed.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct ProcessArgs {
    /// Cube file written by `simulate`.
    pub cube: PathBuf,
    #[command(flatten)]
    pub config: ConfigArg,
    /// Output directory.
    #[arg(long, short)]
    pub out: PathBuf,
    /// Only this method; both when omitted.
    #[arg(long)]
    pub method: Option<Method>,
    /// Residual thresholds for the proposed method (repeatable).
    #[arg(long = "eps-th")]
    pub eps_th: Vec<f64>,
    /// Also write the clutter-suppressed complex image.
    #[arg(long)]
    pub image: bool,
    /// Also write the mean intensity map with region membership.
    #[arg(long)]
    pub intensity: bool,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    /// One or two manifests written by `process`, or one or two interval CSVs.
    #[arg(required = true, num_args = 1..=2)]
    pub inputs: Vec<PathBuf>,
    /// Metrics CSV to write.
    #[arg(long, short)]
    pub out: PathBuf,
    /// With manifests, keep only this method; with CSVs, the method that produced them.
    #[arg(long)]
    pub method: Option<Method>,
    /// With manifests, keep only this threshold; with CSVs, the threshold used.
    #[arg(long = "eps-th")]
    pub eps_th: Option<f64>,
    /// Truth CSVs matching CSV inputs.
    #[arg(long)]
    pub truth: Vec<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub config: ConfigArg,
    /// Output directory.
    #[arg(long, short)]
    pub out: PathBuf,
    /// Runs this seed only instead of the configured list.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Overrides the configured threshold grid (repeatable).
    #[arg(long = "eps-th")]
    pub eps_th: Vec<f64>,
}
