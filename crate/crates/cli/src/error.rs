// Copyright 2026 The qnoise Authors
// SPDX-License-Identifier: Apache-2.0

use std::process::ExitCode;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("numeric diagnostic: {0}")]
    Numeric(qnoise_core::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl From<qnoise_core::Error> for CliError {
    fn from(e: qnoise_core::Error) -> Self {
        if e.is_numeric_diagnostic() {
            Self::Numeric(e)
        } else {
            Self::Config(e.to_string())
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            Self::Io(_) => 1,
            Self::Config(_) => 2,
            Self::Numeric(_) => 3,
        })
    }
}
