// Copyright 2026 The qnoise Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors raised by the simulation library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("state is not normalised (squared norm {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },

    #[error("zero vector cannot be normalised")]
    ZeroNorm,

    #[error("invalid density operator: {0}")]
    InvalidDensity(String),

    #[error("invalid qubit index set {indices:?} for a {n_qubits}-qubit register")]
    InvalidQubitSet {
        indices: Vec<usize>,
        n_qubits: usize,
    },

    #[error("invalid Pauli label '{0}'")]
    InvalidPauli(char),

    #[error("probability {0} outside [0, 1]")]
    InvalidProbability(f64),

    #[error("invalid environment: {0}")]
    InvalidEnvironment(String),

    #[error("resonance frequency {omega0} outside mode grid [{omega_min}, {omega_max}]")]
    ResonanceOutsideGrid {
        omega0: f64,
        omega_min: f64,
        omega_max: f64,
    },

    #[error("integration norm drift {drift:e} exceeds {limit:e}; use more steps")]
    NormDrift { drift: f64, limit: f64 },

    #[error("time index {index} out of range for trajectory of length {len}")]
    TimeIndex { index: usize, len: usize },

    #[error("|c_i| = {0} exceeds 1")]
    AmplitudeAboveOne(f64),

    #[error("copy count {0} outside supported range 1..=8")]
    CopyCount(usize),

    #[error("symmetric projection fails almost surely (success probability {0:e})")]
    ProjectionFailed(f64),

    #[error("perturbation norm {norm} exceeds first-order limit {limit}")]
    PerturbationTooLarge { norm: f64, limit: f64 },

    #[error("invalid perturbation: {0}")]
    InvalidPerturbation(String),

    #[error("Zeno factor 1 - k/n^2 is negative (k = {k}, n = {n})")]
    ZenoNegative { k: f64, n: u64 },

    #[error("invalid code: {0}")]
    InvalidCode(String),

    #[error("code conditions not satisfied for the declared error set")]
    ConditionsNotSatisfied,

    #[error("errors {0} and {1} overlap partially on the code space; no Pauli recovery exists")]
    PartialOverlap(String, String),

    #[error("uncorrectable component of weight {residual:e} outside all syndrome subspaces")]
    Uncorrectable { residual: f64 },

    #[error("fidelity {fidelity} below guaranteed bound {bound} at t = {t}")]
    BoundViolated { t: f64, fidelity: f64, bound: f64 },

    #[error("unknown code identifier '{0}'")]
    UnknownCode(String),

    #[error("codeword file line {line}: {msg}")]
    CodewordFile { line: usize, msg: String },

    #[error("argument {value} outside domain [{lo}, {hi}]")]
    Domain { value: f64, lo: f64, hi: f64 },

    #[error("invalid bound query: {0}")]
    InvalidQuery(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// True for failures of a numerical check, as opposed to bad input.
    pub fn is_numeric_diagnostic(&self) -> bool {
        matches!(
            self,
            Error::NormDrift { .. }
                | Error::ProjectionFailed(_)
                | Error::Uncorrectable { .. }
                | Error::BoundViolated { .. }
                | Error::AmplitudeAboveOne(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
