mod args;
mod commands;
mod manifest;

use anyhow::{Context, Result};
use clap::Parser;

use args::{Cli, Command};

fn main() -> Result<()> {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("configuring the worker pool")?;
    }
    match cli.command {
        Command::Simulate(a) => commands::simulate::run(a),
        Command::Process(a) => commands::process::run(a),
        Command::Evaluate(a) => commands::evaluate::run(a),
        Command::Sweep(a) => commands::sweep::run(a),
    }
}
