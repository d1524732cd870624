//! Command-line front end: spectra, pseudo-norm tables, inner-product
//! matrices, closed-form verification, PT-breaking sweeps and identity
//! proofs, written as CSV or JSON.
//!
//! Exit codes: 0 pass, 1 verification failure, 2 usage or I/O error.

pub mod args;
pub mod commands;
pub mod parse;
pub mod table;

use std::fs::File;
use std::io::{self, BufWriter, Write};

use serde_json::json;

pub use args::{Cli, Command, Common, Format};
pub use commands::Outcome;
pub use table::{Cell, Table};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] scarf2_core::Error),
    #[error("I/O error: {0}")]
    Io(#[from] io::Error),
    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Runs one parsed command line and returns its outcome without writing it.
pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let common = &cli.common;
    if !(common.quad_tol > 0.0) {
        return Err(CliError::Usage("quadrature tolerance must be positive".into()));
    }
    let controls = scarf2_core::QuadratureControls::with_tol(common.quad_tol);
    match &cli.command {
        Command::Spectrum(a) => commands::spectrum(a),
        Command::Pseudonorm(a) => commands::pseudonorm(a, &controls),
        Command::Matrix(a) => commands::matrix(a, &controls, common.seed),
        Command::Verify(a) => commands::verify(a, &controls),
        Command::Sweep(a) => commands::sweep(a, &controls),
        Command::Identities(a) => commands::identities(a),
    }
}

fn params_json(cli: &Cli) -> Result<serde_json::Value, CliError> {
    let mut v = match &cli.command {
        Command::Spectrum(a) => serde_json::to_value(a)?,
        Command::Pseudonorm(a) => serde_json::to_value(a)?,
        Command::Matrix(a) => serde_json::to_value(a)?,
        Command::Verify(a) => serde_json::to_value(a)?,
        Command::Sweep(a) => serde_json::to_value(a)?,
        Command::Identities(a) => serde_json::to_value(a)?,
    };
    if let Some(obj) = v.as_object_mut() {
        obj.insert("quad_tol".into(), json!(cli.common.quad_tol));
    }
    Ok(v)
}

/// Encodes `outcome.table` in the requested format.
pub fn render(cli: &Cli, outcome: &Outcome, out: impl Write) -> Result<(), CliError> {
    match cli.common.format {
        Format::Csv => outcome.table.write_csv(out),
        Format::Json => {
            let meta = table::Meta {
                version: env!("CARGO_PKG_VERSION"),
                command: cli.command.name(),
                params: params_json(cli)?,
                seed: cli.common.seed,
            };
            outcome.table.write_json(out, &meta)
        }
    }
}

/// Executes, writes the table and notes, and maps the result to an exit code.
pub fn run(cli: &Cli) -> i32 {
    let result = execute(cli).and_then(|outcome| {
        match &cli.common.output {
            Some(path) => {
                let mut w = BufWriter::new(File::create(path)?);
                render(cli, &outcome, &mut w)?;
                w.flush()?;
            }
            None => render(cli, &outcome, io::stdout().lock())?,
        }
        Ok(outcome)
    });
    match result {
        Ok(outcome) => {
            for note in &outcome.notes {
                eprintln!("{note}");
            }
            if outcome.pass {
                EXIT_PASS
            } else {
                EXIT_FAIL
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}
