// Copyright 2026 The qnoise Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use qnoise_cli::config::ConfigFile;
use qnoise_cli::{CliError, ExperimentConfig, Format, Parameters, Scenario};

/// Runs a named noise experiment and writes its table as CSV or JSON.
#[derive(Debug, Parser)]
#[command(name = "qnoise", version)]
struct Args {
    /// decay, symmetrize, zeno, qec-benefit, bounds or verify-code
    scenario: String,
    /// JSON config file; flags override its values
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// csv or json
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Decay rate at resonance
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    t_max: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
    /// flat, gaussian or lorentzian
    #[arg(long)]
    shape: Option<String>,
    #[arg(long)]
    omega0: Option<f64>,
    /// Spectral width of the coupling profile
    #[arg(long)]
    width: Option<f64>,
    /// Half width of the discretised frequency window
    #[arg(long)]
    window: Option<f64>,
    #[arg(long)]
    modes: Option<usize>,
    /// Largest tolerated norm drift of the integrator
    #[arg(long)]
    norm_limit: Option<f64>,
    /// Largest copy number R
    #[arg(long)]
    copies: Option<usize>,
    /// Dephasing probability per copy
    #[arg(long)]
    p: Option<f64>,
    /// Zeno constant
    #[arg(long)]
    k: Option<f64>,
    #[arg(long)]
    l: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    n_max: Option<usize>,
    /// Built-in code id
    #[arg(long)]
    code: Option<String>,
    /// Codeword file
    #[arg(long)]
    codewords: Option<PathBuf>,
}

impl Args {
    fn into_config(self) -> Result<ExperimentConfig, CliError> {
        let scenario: Scenario = self.scenario.parse()?;
        let file = match &self.config {
            Some(path) => ConfigFile::load(path)?,
            None => ConfigFile::default(),
        };
        let format = self
            .format
            .as_deref()
            .map(str::parse::<Format>)
            .transpose()?;
        let flags = Parameters {
            seed: self.seed,
            gamma: self.gamma,
            t_max: self.t_max,
            steps: self.steps,
            shape: self.shape,
            omega0: self.omega0,
            width: self.width,
            window: self.window,
            modes: self.modes,
            norm_limit: self.norm_limit,
            copies: self.copies,
            p: self.p,
            k: self.k,
            l: self.l,
            t: self.t,
            n_max: self.n_max,
            code: self.code,
            codewords: self.codewords,
        };
        ExperimentConfig::resolve(scenario, file, flags, self.out, format)
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let result = qnoise_cli::init_threads()
        .and_then(|()| args.into_config())
        .and_then(|cfg| qnoise_cli::execute(&cfg));
    match result {
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qnoise: {e}");
            e.exit_code()
        }
    }
}
