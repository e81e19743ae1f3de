//! Batch front end for `vr-lattice`: builds complexes, runs verification
//! suites over parameter ranges and renders JSON run reports.

use std::path::Path;

use serde::Serialize;
use thiserror::Error;

use vr_lattice::{gamma_complex, grid_complex, Caps, FlagComplex, GammaSpec, GridSpec};

pub mod range;
pub mod report;
pub mod suites;

pub use range::ParamRange;
pub use report::{load_report, render, RunReport, Timings};
pub use suites::{run_suite, Suite, SuiteParams};

/// Process exit codes.
pub mod exit {
    pub const PASS: u8 = 0;
    pub const FAILED: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const CAP: u8 = 3;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Library(#[from] vr_lattice::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Library(e) if e.is_cap() => exit::CAP,
            _ => exit::USAGE,
        }
    }
}

/// The box complex, or with `alpha` the link complex after `alpha` removals.
pub fn input_complex(
    n: usize,
    m: usize,
    r: u32,
    alpha: Option<usize>,
    caps: &Caps,
) -> Result<FlagComplex, CliError> {
    let grid = GridSpec::new(n, m, r)?;
    Ok(match alpha {
        Some(a) => gamma_complex(&GammaSpec::new(grid, a)?, caps)?,
        None => grid_complex(&grid, caps)?,
    })
}

/// Pretty JSON to `path`, or to standard output when no path is given.
pub fn emit_json<T: Serialize>(value: &T, path: Option<&Path>) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value)?;
    match path {
        Some(p) => std::fs::write(p, text + "\n").map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        }),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}
