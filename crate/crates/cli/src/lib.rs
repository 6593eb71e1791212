// Copyright 2026 The qnoise Authors
// SPDX-License-Identifier: Apache-2.0

//! Batch experiment runner behind the `qnoise` binary.

pub mod config;
pub mod error;
pub mod scenarios;
pub mod table;

use std::io::Write;

pub use config::{ExperimentConfig, Format, Parameters, Scenario};
pub use error::CliError;
pub use table::{Cell, Table};

/// Environment variable that caps the worker thread count.
pub const THREADS_VAR: &str = "QNOISE_THREADS";

/// Runs the scenario and writes the rendered table to the output path.
pub fn execute(cfg: &ExperimentConfig) -> Result<Table, CliError> {
    let table = scenarios::run(cfg)?;
    let mut file = std::fs::File::create(&cfg.output_path)?;
    file.write_all(table.render(cfg.format).as_bytes())?;
    file.flush()?;
    Ok(table)
}

/// Configures the global thread pool from [`THREADS_VAR`].
pub fn init_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().ok().filter(|n| *n > 0).ok_or_else(|| {
        CliError::Config(format!(
            "{THREADS_VAR} must be a positive integer, got '{raw}'"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Config(e.to_string()))
}
