// Copyright 2026 The qnoise Authors
// SPDX-License-Identifier: Apache-2.0

//! Dense simulation of qubit noise, symmetrisation and error correction.
//!
//! Everything numeric is generic over [`scalar::Real`] (`f32` or `f64`).
//! The aliases at the crate root fix the scalar to `f64`; the `*32`
//! variants fix it to `f32`.
//!
//! ```
//! use qnoise_core::{codes, StateVector};
//! use qnoise_core::state::{Pauli, PauliString};
//!
//! let code = codes::five::<f64>();
//! let logical = StateVector::from_raw(1, vec![(0.6).into(), (0.8).into()]).unwrap();
//! let encoded = code.encode_state(&logical).unwrap();
//! let hit = encoded.apply_pauli(&PauliString::single(5, 3, Pauli::Y)).unwrap();
//! let fixed = codes::correct_density(&code, &hit.to_density()).unwrap();
//! assert!((fixed.state.fidelity(&encoded).unwrap() - 1.0).abs() < 1e-10);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod codes;
pub mod error;
pub mod fit;
mod linalg;
pub mod noise;
pub mod scalar;
pub mod state;
pub mod symmetrize;

pub use error::{Error, Result};
pub use linalg::{CMatrix, CVector, Mat2};
pub use noise::SpectrumShape;
pub use state::{Pauli, PauliString};

pub type StateVector = state::StateVector<f64>;
pub type DensityOperator = state::DensityOperator<f64>;
pub type EnvironmentSpec = noise::EnvironmentSpec<f64>;
pub type EnvironmentModel = noise::EnvironmentModel<f64>;
pub type AmplitudeTrajectory = noise::AmplitudeTrajectory<f64>;
pub type QubitChannel = noise::QubitChannel<f64>;
pub type SymmetricProjector = symmetrize::SymmetricProjector<f64>;
pub type QuantumCode = codes::QuantumCode<f64>;
pub type CodeConditionReport = codes::CodeConditionReport<f64>;

pub type StateVector32 = state::StateVector<f32>;
pub type DensityOperator32 = state::DensityOperator<f32>;
pub type EnvironmentSpec32 = noise::EnvironmentSpec<f32>;
pub type EnvironmentModel32 = noise::EnvironmentModel<f32>;
pub type AmplitudeTrajectory32 = noise::AmplitudeTrajectory<f32>;
pub type QubitChannel32 = noise::QubitChannel<f32>;
pub type SymmetricProjector32 = symmetrize::SymmetricProjector<f32>;
pub type QuantumCode32 = codes::QuantumCode<f32>;
pub type CodeConditionReport32 = codes::CodeConditionReport<f32>;
