//! The `lochs` command-line tool as a library, so that it can be driven
//! in-process by tests.

pub mod args;
pub mod commands;
pub mod output;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};

use clap::Parser;
use serde::Serialize;

use args::{Cli, Command, Output};
use commands::Report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_NUMERIC: i32 = 2;
pub const EXIT_GATE: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] lochs_core::Error),
    #[error("check failed: {0}")]
    Gate(String),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use lochs_core::Error as E;
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Core(
                E::InvalidParameter(_)
                | E::OutOfDomain { .. }
                | E::InadmissibleDigit { .. }
                | E::IncompatibleRadicands(..)
                | E::Unsupported(_)
                | E::EmptyInterval,
            ) => EXIT_CONFIG,
            CliError::Core(E::BoundViolation { .. }) | CliError::Gate(_) => EXIT_GATE,
            CliError::Core(_) | CliError::Io(_) | CliError::Csv(_) | CliError::Json(_) => EXIT_NUMERIC,
        }
    }
}

fn emit<T: Serialize>(report: Report<T>, out: &Output, stdout: &mut dyn Write) -> Result<(), CliError> {
    match &out.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            output::write_rows(&report.rows, out.format, &mut w)?;
            w.flush()?;
        }
        None => output::write_rows(&report.rows, out.format, &mut *stdout)?,
    }
    match report.failure {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

/// Runs one command and returns its exit status. Tables go to `--out` or
/// `stdout`; diagnostics go to `stderr`.
pub fn run<I, S>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    let result = match &cli.command {
        Command::EntropyTable(a) => commands::entropy_table(a).and_then(|r| emit(r, &a.output, stdout)),
        Command::Lochs(a) => commands::lochs(a).and_then(|r| emit(r, &a.output, stdout)),
        Command::Smb(a) => commands::smb(a).and_then(|r| emit(r, &a.output, stdout)),
        Command::RenyiCheck(a) => commands::renyi_check(a).and_then(|r| emit(r, &a.output, stdout)),
        Command::Conjecture(a) => commands::conjecture(a).and_then(|r| emit(r, &a.output, stdout)),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
