// Copyright 2026 The qnoise Authors
// SPDX-License-Identifier: Apache-2.0

//! Experiment configuration: JSON files merged with command-line flags.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use qnoise_core::SpectrumShape;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scenario {
    Decay,
    Symmetrize,
    Zeno,
    QecBenefit,
    Bounds,
    VerifyCode,
}

impl Scenario {
    pub const ALL: [Scenario; 6] = [
        Self::Decay,
        Self::Symmetrize,
        Self::Zeno,
        Self::QecBenefit,
        Self::Bounds,
        Self::VerifyCode,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Decay => "decay",
            Self::Symmetrize => "symmetrize",
            Self::Zeno => "zeno",
            Self::QecBenefit => "qec-benefit",
            Self::Bounds => "bounds",
            Self::VerifyCode => "verify-code",
        }
    }

    /// Parameter keys this scenario reads. `seed` is accepted everywhere.
    pub fn keys(self) -> &'static [&'static str] {
        match self {
            Self::Decay => &[
                "gamma",
                "t_max",
                "steps",
                "shape",
                "omega0",
                "width",
                "window",
                "modes",
                "norm_limit",
            ],
            Self::Symmetrize => &["copies", "p"],
            Self::Zeno => &["k"],
            Self::QecBenefit => &["gamma", "t_max", "steps"],
            Self::Bounds => &["l", "t", "n_max"],
            Self::VerifyCode => &["code", "codewords"],
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scenario {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|sc| sc.name() == s)
            .ok_or_else(|| CliError::Config(format!("unknown scenario '{s}'")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            _ => Err(CliError::Config(format!(
                "unknown format '{s}' (expected csv or json)"
            ))),
        }
    }
}

/// Scenario parameters. Unset values fall back to scenario defaults.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Parameters {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_max: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shape: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub width: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modes: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub norm_limit: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub copies: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_max: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub code: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub codewords: Option<PathBuf>,
}

macro_rules! each_param {
    ($m:ident) => {
        $m!(
            seed, gamma, t_max, steps, shape, omega0, width, window, modes, norm_limit, copies, p,
            k, l, t, n_max, code, codewords
        )
    };
}

impl Parameters {
    /// Values set in `other` replace those in `self`.
    pub fn merge(mut self, other: Parameters) -> Self {
        macro_rules! take {
            ($($f:ident),*) => { $( if other.$f.is_some() { self.$f = other.$f; } )* };
        }
        each_param!(take);
        self
    }

    /// Names of the keys that are set.
    pub fn set_keys(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        macro_rules! collect {
            ($($f:ident),*) => { $( if self.$f.is_some() { out.push(stringify!($f)); } )* };
        }
        each_param!(collect);
        out
    }
}

/// Fully resolved run description.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub scenario: Scenario,
    #[serde(default)]
    pub parameters: Parameters,
    pub output_path: PathBuf,
    #[serde(default)]
    pub format: Format,
}

/// Contents of a `--config` file; every field is optional.
#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub scenario: Option<Scenario>,
    #[serde(default)]
    pub parameters: Parameters,
    pub output_path: Option<PathBuf>,
    pub format: Option<Format>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }
}

impl ExperimentConfig {
    /// Combines a config file with command-line values; the latter win.
    pub fn resolve(
        scenario: Scenario,
        file: ConfigFile,
        flags: Parameters,
        out: Option<PathBuf>,
        format: Option<Format>,
    ) -> Result<Self, CliError> {
        if let Some(s) = file.scenario {
            if s != scenario {
                return Err(CliError::Config(format!(
                    "config file is for scenario '{s}', not '{scenario}'"
                )));
            }
        }
        let output_path = out
            .or(file.output_path)
            .ok_or_else(|| CliError::Config("no output path (use --out or output_path)".into()))?;
        let cfg = Self {
            scenario,
            parameters: file.parameters.merge(flags),
            output_path,
            format: format.or(file.format).unwrap_or_default(),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let allowed = self.scenario.keys();
        for key in self.parameters.set_keys() {
            if key != "seed" && !allowed.contains(&key) {
                return Err(CliError::Config(format!(
                    "parameter '{key}' does not apply to scenario '{}'",
                    self.scenario
                )));
            }
        }
        let p = &self.parameters;
        for (name, value) in [
            ("gamma", p.gamma),
            ("t_max", p.t_max),
            ("omega0", p.omega0),
            ("width", p.width),
            ("window", p.window),
            ("norm_limit", p.norm_limit),
        ] {
            if let Some(v) = value {
                if !(v > 0.0 && v.is_finite()) {
                    return Err(CliError::Config(format!(
                        "{name} must be positive, got {v}"
                    )));
                }
            }
        }
        if let Some(k) = p.k {
            if !(k >= 0.0 && k.is_finite()) {
                return Err(CliError::Config(format!("k must be non-negative, got {k}")));
            }
        }
        if let Some(prob) = p.p {
            if !(0.0..=1.0).contains(&prob) {
                return Err(CliError::Config(format!(
                    "p must lie in [0, 1], got {prob}"
                )));
            }
        }
        for (name, value) in [
            ("steps", p.steps),
            ("modes", p.modes),
            ("copies", p.copies),
            ("l", p.l),
            ("n_max", p.n_max),
        ] {
            if value == Some(0) {
                return Err(CliError::Config(format!("{name} must be at least 1")));
            }
        }
        if let Some(shape) = &p.shape {
            shape
                .parse::<SpectrumShape>()
                .map_err(|e| CliError::Config(e.to_string()))?;
        }
        if p.code.is_some() && p.codewords.is_some() {
            return Err(CliError::Config(
                "give either code or codewords, not both".into(),
            ));
        }
        Ok(())
    }

    pub fn render(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serialises")
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn seed(&self) -> u64 {
        self.parameters.seed.unwrap_or(0)
    }
}
