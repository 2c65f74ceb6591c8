//! `wellsim` command-line front end.

mod commands;
mod config;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use crate::config::{RunArgs, RunConfig};

#[derive(Debug, Parser)]
#[command(
    name = "wellsim",
    version,
    about = "Square-well energy spectroscopy on a simulated quantum register"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Bound states of the square well from the matching conditions
    SolveExact,
    /// Multi-qubit phase estimation of the Trotterized evolution
    SimulateQpe {
        /// Also write the outcome distribution as CSV
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Two-circuit iterative phase estimation
    SimulateIpe {
        /// Estimate this phase written onto a single qubit instead of the evolution
        #[arg(long)]
        theta: Option<f64>,
        /// Applications of the evolution per circuit
        #[arg(long, default_value_t = 1)]
        repetitions: u64,
    },
    /// Write the Trotter gate list in the text dump format
    DumpCircuit {
        /// Dump the evolution controlled by work qubit q0
        #[arg(long)]
        controlled: bool,
        /// Repetitions of the controlled evolution
        #[arg(long, default_value_t = 1)]
        repetitions: u64,
        /// Re-simulate the dump and compare with the in-memory circuit
        #[arg(long)]
        verify: bool,
    },
    /// Compare the assembled circuit with the dense reference propagator
    CompareOracle,
}

fn emit(cfg: &RunConfig, text: &str) -> Result<()> {
    match &cfg.output {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            let mut out = std::io::stdout().lock();
            match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                other => Ok(other?),
            }
        }
    }
}

fn emit_json(cfg: &RunConfig, value: &serde_json::Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    emit(cfg, &text)
}

fn run(cli: Cli, cfg: &RunConfig) -> Result<bool> {
    match cli.command {
        Command::SolveExact => emit_json(cfg, &commands::solve_exact(cfg)?)?,
        Command::SimulateQpe { csv } => {
            emit_json(cfg, &commands::simulate_qpe(cfg, csv.as_deref())?)?
        }
        Command::SimulateIpe { theta, repetitions } => {
            emit_json(cfg, &commands::simulate_ipe(cfg, theta, repetitions)?)?
        }
        Command::DumpCircuit {
            controlled,
            repetitions,
            verify,
        } => {
            let dump = commands::dump_circuit(cfg, controlled, repetitions, verify)?;
            emit(cfg, &dump.text)?;
            if let Some(report) = dump.verification {
                eprintln!("{}", serde_json::to_string(&report)?);
                return Ok(report["verified"].as_bool().unwrap_or(false));
            }
        }
        Command::CompareOracle => emit_json(cfg, &commands::compare_oracle(cfg)?)?,
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match RunConfig::resolve(&cli.run) {
        Ok(cfg) => cfg,
        Err(err) => {
            eprintln!("error: {err:#}");
            return ExitCode::from(2);
        }
    };
    match run(cli, &cfg) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("error: circuit dump did not reproduce the direct simulation");
            ExitCode::FAILURE
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            match err.downcast_ref::<wellsim::Error>() {
                Some(wellsim::Error::Config(_)) => ExitCode::from(2),
                _ => ExitCode::FAILURE,
            }
        }
    }
}
