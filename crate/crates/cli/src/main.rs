mod commands;
mod output;

use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use crate::commands::{CltArgs, FairnessArgs, MomentsArgs, OracleArgs};

/// Fair and random maximal division of a disk.
#[derive(Debug, Parser)]
#[command(name = "maxdiv", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fairness objectives over the symmetric three-cut family and their optima
    Fairness(FairnessArgs),
    /// Mean and variance of the random region count
    Moments(MomentsArgs),
    /// Normal-approximation terms and a Monte Carlo Kolmogorov-Smirnov check
    Clt(CltArgs),
    /// Compare geometric region counts of random chord sets with the formula
    Oracle(OracleArgs),
}

fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var("MAXDIV_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .with_context(|| format!("MAXDIV_THREADS={raw:?} is not an integer"))?;
    if threads == 0 {
        bail!("MAXDIV_THREADS must be at least 1");
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .context("configuring the thread pool")
}

fn run(cli: Cli) -> Result<bool> {
    configure_threads()?;
    match cli.command {
        Command::Fairness(args) => commands::fairness(&args),
        Command::Moments(args) => commands::moments(&args),
        Command::Clt(args) => commands::clt(&args),
        Command::Oracle(args) => commands::oracle(&args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
