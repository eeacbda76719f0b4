//! `systole`: batch driver for the bounds, searches, verification suites and
//! group-order tables of `systole-core`.
//!
//! Exit status: 0 success, 1 failed invariant or counterexample, 2 work cap
//! exhausted (partial output written), 3 input error.

mod commands;
mod config;
mod error;
mod render;

use std::process::ExitCode;

use clap::Parser;

use crate::config::Cli;
use crate::error::{CliError, Status};

fn execute(cli: Cli) -> Result<Status, CliError> {
    let resolved = config::resolve(cli)?;
    let outcome = commands::run(&resolved)?;
    let bytes = render::render(&resolved.config, outcome.results, &outcome.table)?;
    match &resolved.out {
        Some(path) => std::fs::write(path, bytes)?,
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(&bytes)?;
            stdout.flush()?;
        }
    }
    Ok(outcome.status)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(Status::Input as u8) } else { ExitCode::SUCCESS };
        }
    };
    match execute(cli) {
        Ok(status) => ExitCode::from(status as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.status() as u8)
        }
    }
}
