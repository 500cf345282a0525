//! `loiter`: periodic loiter paths, extent curves, safe-set verification and
//! terrain validity maps from the command line.
//!
//! Exit codes: 0 success, 2 no feasible path, 3 invalid input, 4 containment
//! check failed. Numbers are printed with 9 significant digits.

mod commands;
mod config;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{Flags, RunConfig};

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Infeasible(String),
    Invariant(String),
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Infeasible(_) => 2,
            CliError::Input(_) | CliError::Io(_) => 3,
            CliError::Invariant(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m)
            | CliError::Infeasible(m)
            | CliError::Invariant(m)
            | CliError::Io(m) => m,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "loiter",
    version,
    about = "Wind-invariant loiter paths and terrain validity"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sample one periodic path as CSV
    Path,
    /// Extent of both path families over the wind-ratio range, as CSV
    ExtentSweep,
    /// Switching wind ratio and minimum safe-set radius
    Switch,
    /// Loiter validity raster and coverage over a DEM
    Terrain,
    /// Check that the safe set holds a periodic path for a grid of winds
    Verify,
}

fn run(cli: Cli) -> Result<(), CliError> {
    let cfg = RunConfig::resolve(cli.flags)?;
    match cli.command {
        Command::Path => commands::cmd_path(&cfg),
        Command::ExtentSweep => commands::cmd_extent_sweep(&cfg),
        Command::Switch => commands::cmd_switch(&cfg),
        Command::Terrain => commands::cmd_terrain(&cfg),
        Command::Verify => commands::cmd_verify(&cfg),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
