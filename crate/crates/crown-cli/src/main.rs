//! `crown`: evaluate kernels, sweep parameters, run the verification suites and export data.
//!
//! Exit codes: 0 success, 1 failed verification, 2 bad input, 3 numerical failure.

mod commands;
mod output;
mod parse;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{EvalArgs, GeometryArgs, Globals, OracleCommand, PlanewaveArgs, SweepArgs, VerifyArgs};
use output::Format;

#[derive(Parser, Debug)]
#[command(name = "crown", version, about = "Reflection-positive kernels on the sphere and its crown domain")]
struct Cli {
    /// Seed for every randomized step
    #[arg(long, global = true, default_value_t = 20_240_611)]
    seed: u64,
    /// Tolerance for adaptive routines (command-specific default)
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Write to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format; sweeps and oracles default to csv, everything else to json
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate one kernel value
    Eval(EvalArgs),
    /// Ψ_m on the meridian over a grid of masses
    Sweep(SweepArgs),
    /// Run verification suites; exits 1 if any check fails
    Verify(VerifyArgs),
    /// Φ^c_m from the plane-wave integral, with the closed form alongside
    Planewave(PlanewaveArgs),
    /// Independent oracles
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Classify points of the complex sphere
    Geometry(GeometryArgs),
}

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Numeric(String),
}

impl From<parse::ParseError> for CliError {
    fn from(e: parse::ParseError) -> Self {
        CliError::Parse(e.0)
    }
}

impl From<crown_kernels::Error> for CliError {
    fn from(e: crown_kernels::Error) -> Self {
        CliError::Numeric(e.to_string())
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    if let Some(tol) = cli.tol {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(CliError::Parse("--tol must be positive".into()));
        }
    }
    // open the sink first so an unwritable path fails before any computation
    let sink: Box<dyn Write> = match &cli.out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).map_err(|e| CliError::Parse(format!("cannot write {}: {e}", path.display())))?,
        )),
        None => Box::new(io::stdout().lock()),
    };
    let g = Globals { seed: cli.seed, tol: cli.tol };
    let (outcome, default_format) = match &cli.command {
        Command::Eval(a) => (commands::eval(a)?, Format::Json),
        Command::Sweep(a) => (commands::sweep(a)?, Format::Csv),
        Command::Verify(a) => (commands::verify(a, &g)?, Format::Json),
        Command::Planewave(a) => (commands::planewave(a, &g)?, Format::Json),
        Command::Oracle(c) => (commands::oracle(c, &g)?, Format::Csv),
        Command::Geometry(a) => (commands::geometry(a, &g)?, Format::Json),
    };
    outcome
        .table
        .write(cli.format.unwrap_or(default_format), sink)
        .map_err(|e| CliError::Numeric(format!("writing output: {e}")))?;
    Ok(!outcome.failed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Parse(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Numeric(msg)) => {
            eprintln!("numerical failure: {msg}");
            ExitCode::from(3)
        }
    }
}
