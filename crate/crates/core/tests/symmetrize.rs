// Copyright 2026 The qnoise Authors
// SPDX-License-Identifier: Apache-2.0

use itertools::Itertools;
use num_complex::Complex64;
use qnoise_core::noise;
use qnoise_core::symmetrize::{self, MAX_COPIES};
use qnoise_core::{DensityOperator, Error, StateVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn projector_rank_is_symmetric_subspace_dimension() {
    for r in 1..=5 {
        let s = symmetrize::build_projector::<f64>(r).unwrap();
        assert_eq!(s.rank(), binom(r + 1, r));
        assert!(s.idempotence_error() < 1e-12);
        assert!(s.hermiticity_error() < 1e-12);
    }
    assert!(matches!(
        symmetrize::build_projector::<f64>(MAX_COPIES + 1),
        Err(Error::CopyCount { .. })
    ));
}

/// Brute-force oracle: the symmetric projector fixes every basis state
/// whose bit string is a permutation of another's by averaging.
#[test]
fn projector_matches_permutation_average() {
    let r = 3;
    let s = symmetrize::build_projector::<f64>(r).unwrap();
    let dim = 1 << r;
    for i in 0..dim {
        for j in 0..dim {
            let perms = (0..r).permutations(r).collect::<Vec<_>>();
            let hits = perms
                .iter()
                .filter(|p| {
                    let permuted = p.iter().enumerate().fold(0, |acc, (dst, &src)| {
                        acc | (((j >> (r - 1 - src)) & 1) << (r - 1 - dst))
                    });
                    permuted == i
                })
                .count();
            let expect = hits as f64 / perms.len() as f64;
            assert!((s.matrix()[(i, j)] - Complex64::new(expect, 0.0)).norm() < 1e-14);
        }
    }
}

#[test]
fn two_copy_reduction_and_success() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let s = symmetrize::build_projector::<f64>(2).unwrap();
    for _ in 0..20 {
        let rho = StateVector::random(2, &mut rng)
            .unwrap()
            .to_density()
            .partial_trace(&[1])
            .unwrap();
        let out = symmetrize::project(&rho.tensor(&rho), &s).unwrap();
        assert!(
            out.single_copy
                .distance(&symmetrize::two_copy_reduction(&rho))
                < 1e-12
        );
        assert!((out.success_prob - (1.0 + rho.purity()) / 2.0).abs() < 1e-12);
    }
}

#[test]
fn antisymmetric_input_fails_projection() {
    let singlet = StateVector::new(
        2,
        vec![0.0, 1.0, -1.0, 0.0]
            .into_iter()
            .map(|x| Complex64::new(x / 2f64.sqrt(), 0.0))
            .collect(),
    )
    .unwrap();
    let s = symmetrize::build_projector::<f64>(2).unwrap();
    assert!(matches!(
        symmetrize::project(&singlet.to_density(), &s),
        Err(Error::ProjectionFailed { .. })
    ));
}

#[test]
fn first_order_prediction_for_small_noise() {
    let psi =
        StateVector::from_raw(1, vec![Complex64::new(1.0, 0.0), Complex64::new(0.3, 0.2)]).unwrap();
    let ch = noise::dephasing_channel(0.002).unwrap();
    let pert = symmetrize::perturbation_from_channel(&ch, &psi).unwrap();
    let report = symmetrize::first_order_report(&psi, &[pert.clone(), pert.clone(), pert]).unwrap();
    assert_eq!(report.r_copies, 3);
    assert!(report.fidelity_after_exact > report.fidelity_before);
    assert!(report.fidelity_residual() < 1e-5);
    assert!(report.purity_residual() < 1e-5);
}

#[test]
fn zeno_limits() {
    assert_eq!(symmetrize::zeno_success(0.0, 10).unwrap(), 1.0);
    assert!(symmetrize::zeno_success(1.0, 0).is_err());
    assert!(matches!(
        symmetrize::zeno_success(-1.0, 5),
        Err(Error::ZenoNegative { .. })
    ));
    let s = symmetrize::zeno_success(0.5, 1_000_000).unwrap();
    assert!((s - (-0.5e-6f64).exp()).abs() < 1e-12);
}

#[test]
fn fitted_zeno_constant_for_two_copies() {
    let plus =
        StateVector::from_raw(1, vec![Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)]).unwrap();
    let k = symmetrize::fit_zeno_constant(&plus, 2, 0.1, &symmetrize::ZENO_GRID).unwrap();
    assert!((k - 0.125 * 0.01).abs() / (0.125 * 0.01) < 0.05, "k = {k}");
}

#[test]
fn mixed_and_pure_are_fixed_points() {
    let mixed = DensityOperator::maximally_mixed(1).unwrap();
    let g = symmetrize::purity_gain(&mixed).unwrap();
    assert!((g.after - g.before).abs() < 1e-15);
}
