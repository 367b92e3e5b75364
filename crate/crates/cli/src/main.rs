//! `fwkit`: symbolic and numeric verification suites for the exact
//! Foldy–Wouthuysen transformation.
//!
//! Exit codes: 0 all cases pass, 1 a verification failed, 2 bad flags,
//! 3 the model could not be constructed.

mod numeric;
mod symbolic;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use fwkit::report::{emit_report, Format, VerificationReport};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(name = "fwkit", version, about = "Verify Foldy-Wouthuysen transformation operators")]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,

    /// Residual bound for every numeric diagnostic (default: per-diagnostic bounds).
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact series computations.
    #[command(subcommand)]
    Symbolic(symbolic::SymbolicCmd),
    /// Matrix computations on model Hamiltonians.
    #[command(subcommand)]
    Numeric(numeric::NumericCmd),
}

/// Outcome of a subcommand before serialization.
pub enum Outcome {
    Report(VerificationReport),
    /// Bad flag values caught after parsing.
    Usage(String),
    /// Model construction failed.
    Model(String),
}

/// `FW_SEED` takes precedence over `--seed`.
pub fn effective_seed(flag: u64) -> Result<u64, String> {
    match std::env::var("FW_SEED") {
        Ok(v) => v.trim().parse().map_err(|_| format!("FW_SEED must be an unsigned integer, got `{v}`")),
        Err(_) => Ok(flag),
    }
}

fn write_report(report: &VerificationReport, cli: &Cli) -> anyhow::Result<()> {
    let format = match cli.format {
        OutputFormat::Text => Format::Text,
        OutputFormat::Json => Format::Json,
    };
    let bytes = emit_report(report, format);
    match &cli.out {
        Some(path) => std::fs::write(path, &bytes).with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().write_all(&bytes)?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.tol {
        if !(t.is_finite() && t > 0.0) {
            eprintln!("error: --tol must be a positive number");
            return ExitCode::from(2);
        }
    }
    let outcome = match &cli.command {
        Command::Symbolic(cmd) => symbolic::run(cmd),
        Command::Numeric(cmd) => numeric::run(cmd, cli.tol),
    };
    match outcome {
        Outcome::Usage(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Outcome::Model(msg) => {
            eprintln!("error: model construction failed: {msg}");
            ExitCode::from(3)
        }
        Outcome::Report(report) => {
            if let Err(e) = write_report(&report, &cli) {
                eprintln!("error: {e:#}");
                return ExitCode::from(1);
            }
            if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
