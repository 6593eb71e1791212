// Copyright 2026 The qnoise Authors
// SPDX-License-Identifier: Apache-2.0

use num_complex::Complex64;
use qnoise_core::noise::{self, EnvironmentSpec, IntegratorOptions, QubitChannel, SpectrumShape};
use qnoise_core::{Error, StateVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small_bath() -> qnoise_core::EnvironmentModel {
    noise::discretize(&EnvironmentSpec::flat_band(50.0, 1.0, 20.0, 200)).unwrap()
}

#[test]
fn halving_the_internal_step_changes_little() {
    let env = small_bath();
    let coarse = noise::integrate(&env, 2.0, 40).unwrap();
    let opts = IntegratorOptions {
        max_phase_step: 0.05,
        ..IntegratorOptions::default()
    };
    let fine = noise::integrate_with(&env, 2.0, 40, &opts).unwrap();
    assert!(fine.substeps >= 2 * coarse.substeps - 1);
    let worst = coarse
        .c_i
        .iter()
        .zip(&fine.c_i)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    assert!(worst <= 1e-6, "step-halving difference {worst:e}");
}

#[test]
fn norm_is_conserved() {
    let env = small_bath();
    let traj = noise::integrate(&env, 3.0, 60).unwrap();
    assert!(traj.max_norm_drift() <= 1e-8);
    assert_eq!(traj.c_f.nrows(), env.n_modes());
    assert_eq!(traj.c_f.ncols(), traj.len());
}

#[test]
fn coarse_step_trips_the_drift_guard() {
    let env = small_bath();
    let opts = IntegratorOptions {
        max_phase_step: 3.0,
        norm_limit: 1e-12,
    };
    assert!(matches!(
        noise::integrate_with(&env, 3.0, 3, &opts),
        Err(Error::NormDrift { .. })
    ));
}

#[test]
fn shapes_and_parsing() {
    for s in ["flat", "gaussian", "lorentzian"] {
        let shape: SpectrumShape = s.parse().unwrap();
        assert_eq!(shape.to_string(), s);
    }
    assert!("cauchy".parse::<SpectrumShape>().is_err());
    let spec =
        EnvironmentSpec::with_decay_rate(SpectrumShape::Lorentzian, 50.0, 1.0, 5.0, 20.0, 400);
    let env = noise::discretize(&spec).unwrap();
    assert!((env.gamma - 1.0f64).abs() < 1e-12);
}

#[test]
fn resonance_outside_window_is_rejected() {
    let mut spec = EnvironmentSpec::<f64>::desk_default();
    spec.omega0 = 500.0;
    assert!(noise::discretize(&spec).is_err());
}

fn random_qubits(count: usize, seed: u64) -> Vec<StateVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| StateVector::random(1, &mut rng).unwrap())
        .collect()
}

/// The joint state built from the relative states agrees with direct
/// evolution: `|0⟩|vac⟩` is stationary and `|1⟩|vac⟩` evolves into
/// `c_i e^{-iω₀t}|1⟩|vac⟩ + Σ_f c_f e^{-iω_f t}|0⟩|1_f⟩`.
#[test]
fn relative_states_reproduce_direct_evolution() {
    let env = small_bath();
    let traj = noise::integrate(&env, 1.5, 30).unwrap();
    for idx in [0, 7, 30] {
        let t = traj.times[idx];
        let rel = noise::relative_states(&traj, idx).unwrap();
        for psi in random_qubits(20, 11 + idx as u64) {
            let (a, b) = (psi.amplitude(0), psi.amplitude(1));
            let [e0, e1] = rel.joint_state(&psi).unwrap();
            assert!((e0.vacuum - a).norm() < 1e-12);
            for (f, w) in traj.mode_omegas.iter().enumerate() {
                let expect = b * traj.c_f[(f, idx)] * Complex64::from_polar(1.0, -w * t);
                assert!((e0.modes[f] - expect).norm() < 1e-12);
                assert!(e1.modes[f].norm() < 1e-12);
            }
            let expect = b * traj.c_i[idx] * Complex64::from_polar(1.0, -traj.omega0 * t);
            assert!((e1.vacuum - expect).norm() < 1e-12);
        }
    }
}

#[test]
fn reduced_state_matches_damping_channel() {
    let env = small_bath();
    let traj = noise::integrate(&env, 2.0, 20).unwrap();
    for idx in [5, 20] {
        let rel = noise::relative_states(&traj, idx).unwrap();
        let ch = noise::damping_channel(&traj, idx).unwrap();
        assert!(ch.trace_preservation_error() < 1e-8);
        for psi in random_qubits(20, 3) {
            let reduced = rel.reduced_qubit(&psi).unwrap();
            let via_channel = ch.apply(&psi.to_density()).unwrap();
            assert!(reduced.distance(&via_channel) <= 1e-8);
            let f = rel.fidelity_for(&psi).unwrap();
            assert!((f - reduced.fidelity(&psi).unwrap()).abs() <= 1e-8);
        }
        let excited = StateVector::basis(1, 1).unwrap();
        assert!((rel.excited_fidelity() - rel.fidelity_for(&excited).unwrap()).abs() < 1e-12);
        assert!((rel.excited_fidelity() - traj.survival(idx)).abs() < 1e-12);
    }
}

#[test]
fn channel_constructors() {
    assert!(matches!(
        QubitChannel::amplitude_damping(Complex64::new(1.1, 0.0), 0.0),
        Err(Error::AmplitudeAboveOne(..))
    ));
    let ch = QubitChannel::exponential_decay(1.0, 0.5);
    assert!(ch.trace_preservation_error() < 1e-14);
    let excited = StateVector::basis(1, 1).unwrap();
    let out = ch.apply(&excited.to_density()).unwrap();
    assert!((out.fidelity(&excited).unwrap() - (-0.5f64).exp()).abs() < 1e-14);
    assert!(noise::dephasing_channel(1.5).is_err());
    assert!(QubitChannel::<f64>::identity().trace_preservation_error() == 0.0);
}

#[test]
fn single_precision_run() {
    let env = noise::discretize(&EnvironmentSpec::<f32>::flat_band(50.0, 1.0, 20.0, 100)).unwrap();
    let opts = IntegratorOptions {
        norm_limit: 1e-3,
        ..IntegratorOptions::default()
    };
    let traj = noise::integrate_with(&env, 1.0, 10, &opts).unwrap();
    assert!((traj.survival(10) - (-1.0f32).exp()).abs() < 0.05);
}
