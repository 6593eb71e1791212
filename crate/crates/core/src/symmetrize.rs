// Copyright 2026 The qnoise Authors
// SPDX-License-Identifier: Apache-2.0

//! Stabilisation of R identical qubit copies by projection onto the
//! symmetric subspace.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::fit::{self, InverseFit, PowerFit};
use crate::linalg::{self, CMatrix, Mat2};
use crate::noise::QubitChannel;
use crate::scalar::{cr, Real, C};
use crate::state::{DensityOperator, Pauli, StateVector};

pub const MAX_COPIES: usize = 8;
/// Success probability below which a projection counts as failed.
pub const SUCCESS_FLOOR: f64 = 1e-14;
/// Largest perturbation operator norm accepted by [`first_order_report`].
pub const FIRST_ORDER_NORM_LIMIT: f64 = 0.05;

/// `S = (1/R!) Σ_π P_π` on R qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricProjector<T: Real> {
    r_copies: usize,
    matrix: CMatrix<T>,
}

impl<T: Real> SymmetricProjector<T> {
    pub fn r_copies(&self) -> usize {
        self.r_copies
    }

    pub fn dim_per_copy(&self) -> usize {
        2
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.matrix
    }

    /// Number of unit eigenvalues.
    pub fn rank(&self) -> usize {
        linalg::hermitian_eigenvalues(&self.matrix)
            .iter()
            .filter(|&&e| e > 0.5)
            .count()
    }

    /// Largest entry of `S² − S`.
    pub fn idempotence_error(&self) -> T {
        linalg::max_abs_diff(&(&self.matrix * &self.matrix), &self.matrix)
    }

    pub fn hermiticity_error(&self) -> T {
        linalg::hermiticity_error(&self.matrix)
    }
}

/// Averages the R! copy-permutation operators.
pub fn build_projector<T: Real>(r: usize) -> Result<SymmetricProjector<T>> {
    if !(1..=MAX_COPIES).contains(&r) {
        return Err(Error::CopyCount(r));
    }
    let dim = 1usize << r;
    let mut counts = vec![0u32; dim * dim];
    let mut n_perms = 0u32;
    for perm in (0..r).permutations(r) {
        n_perms += 1;
        for x in 0..dim {
            let y = perm.iter().enumerate().fold(0usize, |acc, (src, &dst)| {
                let bit = (x >> (r - 1 - src)) & 1;
                acc | bit << (r - 1 - dst)
            });
            counts[y * dim + x] += 1;
        }
    }
    let scale = T::one() / T::lit(f64::from(n_perms));
    let matrix = CMatrix::from_fn(dim, dim, |y, x| {
        cr(T::lit(f64::from(counts[y * dim + x])) * scale)
    });
    Ok(SymmetricProjector {
        r_copies: r,
        matrix,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SymmetrizationOutcome<T: Real> {
    /// `SρS / Tr(SρS)`
    pub post_state: DensityOperator<T>,
    /// `Tr(SρS)`
    pub success_prob: T,
    /// Reduced state of copy 0 after projection.
    pub single_copy: DensityOperator<T>,
}

/// Success branch of the two-outcome measurement `{S, I − S}`.
pub fn project<T: Real>(
    joint: &DensityOperator<T>,
    s: &SymmetricProjector<T>,
) -> Result<SymmetrizationOutcome<T>> {
    if joint.n_qubits() != s.r_copies {
        return Err(Error::DimensionMismatch {
            expected: s.matrix.nrows(),
            found: joint.dim(),
        });
    }
    let projected = &s.matrix * joint.matrix() * &s.matrix;
    let success_prob = linalg::trace(&projected).re;
    if !(success_prob.as_f64() >= SUCCESS_FLOOR) {
        return Err(Error::ProjectionFailed(success_prob.as_f64()));
    }
    let post = projected / cr(success_prob);
    let post = CMatrix::from_fn(post.nrows(), post.ncols(), |i, j| {
        (post[(i, j)] + post[(j, i)].conj()) * cr(T::lit(0.5))
    });
    let post_state = DensityOperator::from_matrix_unchecked(s.r_copies, post);
    let single_copy = post_state.partial_trace(&[0])?;
    Ok(SymmetrizationOutcome {
        post_state,
        success_prob,
        single_copy,
    })
}

/// `(ρ + ρ²) / Tr(ρ + ρ²)`, the copy state after projecting `ρ ⊗ ρ`.
pub fn two_copy_reduction<T: Real>(rho: &DensityOperator<T>) -> DensityOperator<T> {
    let m = rho.matrix() + rho.matrix() * rho.matrix();
    let tr = linalg::trace(&m).re;
    DensityOperator::from_matrix_unchecked(rho.n_qubits(), m / cr(tr))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PurityGain<T: Real> {
    pub before: T,
    pub after: T,
}

/// Purity of a qubit before and after two-copy symmetrisation.
pub fn purity_gain<T: Real>(rho: &DensityOperator<T>) -> Result<PurityGain<T>> {
    if rho.n_qubits() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: rho.dim(),
        });
    }
    Ok(PurityGain {
        before: rho.purity(),
        after: two_copy_reduction(rho).purity(),
    })
}

/// First-order predictions for `ρ_i = ρ₀ + ϱ_i` next to the exact
/// projection.
#[derive(Clone, Debug, PartialEq)]
pub struct FirstOrderReport<T: Real> {
    pub r_copies: usize,
    /// `1 + ⟨Ψ|ϱ̃|Ψ⟩`, the mean copy fidelity before projection.
    pub fidelity_before: T,
    /// `1 + ⟨Ψ|ϱ̃|Ψ⟩ / R`
    pub fidelity_after_predicted: T,
    pub fidelity_after_exact: T,
    /// `1 + 2⟨Ψ|ϱ̃|Ψ⟩ / R`
    pub purity_after_predicted: T,
    pub purity_after_exact: T,
    pub success_prob: T,
}

impl<T: Real> FirstOrderReport<T> {
    pub fn fidelity_residual(&self) -> T {
        (self.fidelity_after_exact - self.fidelity_after_predicted).abs()
    }

    pub fn purity_residual(&self) -> T {
        (self.purity_after_exact - self.purity_after_predicted).abs()
    }
}

fn check_perturbation<T: Real>(p: &CMatrix<T>, limit: f64) -> Result<()> {
    if p.shape() != (2, 2) {
        return Err(Error::InvalidPerturbation(format!(
            "expected 2x2, got {}x{}",
            p.nrows(),
            p.ncols()
        )));
    }
    let tol = T::tol(1e-12);
    let tr = linalg::trace(p);
    if tr.norm() > tol {
        return Err(Error::InvalidPerturbation(format!(
            "trace {} is not zero",
            tr.norm()
        )));
    }
    if linalg::hermiticity_error(p) > tol {
        return Err(Error::InvalidPerturbation("not Hermitian".into()));
    }
    let norm = linalg::hermitian_operator_norm(p);
    if norm > limit {
        return Err(Error::PerturbationTooLarge { norm, limit });
    }
    Ok(())
}

/// Compares the first-order formulas with an exact R-copy projection, one
/// copy per perturbation.
pub fn first_order_report<T: Real>(
    psi: &StateVector<T>,
    perturbations: &[CMatrix<T>],
) -> Result<FirstOrderReport<T>> {
    if psi.n_qubits() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: psi.dim(),
        });
    }
    let r = perturbations.len();
    if !(1..=MAX_COPIES).contains(&r) {
        return Err(Error::CopyCount(r));
    }
    for p in perturbations {
        check_perturbation(p, FIRST_ORDER_NORM_LIMIT)?;
    }
    let rho0 = psi.to_density();
    let rf = T::lit(r as f64);
    let mean = perturbations
        .iter()
        .fold(CMatrix::zeros(2, 2), |acc, p| acc + p)
        / cr(rf);
    let shift = linalg::inner(psi.amplitudes(), (&mean * psi.vector()).as_slice()).re;

    let copies: Vec<DensityOperator<T>> = perturbations
        .iter()
        .map(|p| DensityOperator::from_matrix_unchecked(1, rho0.matrix() + p))
        .collect();
    let joint = product_state(&copies)?;
    let outcome = project(&joint, &build_projector(r)?)?;
    let two = T::lit(2.0);
    Ok(FirstOrderReport {
        r_copies: r,
        fidelity_before: T::one() + shift,
        fidelity_after_predicted: T::one() + shift / rf,
        fidelity_after_exact: outcome.single_copy.fidelity(psi)?,
        purity_after_predicted: T::one() + two * shift / rf,
        purity_after_exact: outcome.single_copy.purity(),
        success_prob: outcome.success_prob,
    })
}

/// `ρ₁ ⊗ ρ₂ ⊗ …`
pub fn product_state<T: Real>(copies: &[DensityOperator<T>]) -> Result<DensityOperator<T>> {
    let (first, rest) = copies
        .split_first()
        .ok_or_else(|| Error::InvalidArgument("product of zero copies".into()))?;
    Ok(rest.iter().fold(first.clone(), |acc, c| acc.tensor(c)))
}

/// `⊗_i E_i(|ψ⟩⟨ψ|)`, one independent channel per copy.
pub fn noisy_copies<T: Real>(
    psi: &StateVector<T>,
    channels: &[QubitChannel<T>],
) -> Result<DensityOperator<T>> {
    let rho0 = psi.to_density();
    let copies = channels
        .iter()
        .map(|ch| ch.apply(&rho0))
        .collect::<Result<Vec<_>>>()?;
    product_state(&copies)
}

/// `E(ρ₀) − ρ₀`
pub fn perturbation_from_channel<T: Real>(
    channel: &QubitChannel<T>,
    psi: &StateVector<T>,
) -> Result<CMatrix<T>> {
    let rho0 = psi.to_density();
    Ok(channel.apply(&rho0)?.matrix() - rho0.matrix())
}

/// `(1 − k/n²)^n`
pub fn zeno_success<T: Real>(k: T, n_projections: u64) -> Result<T> {
    if n_projections == 0 {
        return Err(Error::InvalidArgument(
            "need at least one projection".into(),
        ));
    }
    let n = T::lit(n_projections as f64);
    let x = k / (n * n);
    if !(k >= T::zero()) || x > T::one() {
        return Err(Error::ZenoNegative {
            k: k.as_f64(),
            n: n_projections,
        });
    }
    Ok((n * (-x).ln_1p()).exp())
}

/// Projection counts reported by default for a Zeno schedule.
pub const ZENO_GRID: [u64; 10] = [1, 2, 5, 10, 20, 50, 100, 200, 500, 1000];

/// `(n, zeno_success(k, n))` for each `n`.
pub fn zeno_schedule<T: Real>(k: T, ns: &[u64]) -> Result<Vec<(u64, T)>> {
    ns.iter()
        .map(|&n| zeno_success(k, n).map(|s| (n, s)))
        .collect()
}

pub fn fit_inverse_r(rs: &[usize], infidelities: &[f64]) -> Result<InverseFit> {
    let rs: Vec<f64> = rs.iter().map(|&r| r as f64).collect();
    fit::inverse_r(&rs, infidelities)
}

/// Copies of `ψ`, copy `i` rotated about the y axis by `i·ε`.
pub fn drifted_copies<T: Real>(
    psi: &StateVector<T>,
    r: usize,
    epsilon: T,
) -> Result<StateVector<T>> {
    if psi.n_qubits() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: psi.dim(),
        });
    }
    if !(1..=MAX_COPIES).contains(&r) {
        return Err(Error::CopyCount(r));
    }
    let y = Pauli::Y.matrix::<T>();
    let copies = (0..r)
        .map(|i| {
            let half = epsilon * T::lit(i as f64) / T::lit(2.0);
            let u: Mat2<T> = Mat2::identity() * cr(half.cos()) - y * C::new(T::zero(), half.sin());
            psi.apply_local_unitary(0, &u)
        })
        .collect::<Result<Vec<_>>>()?;
    let (first, rest) = copies.split_first().expect("r ≥ 1");
    Ok(rest.iter().fold(first.clone(), |acc, c| acc.tensor(c)))
}

/// `1 − Tr(S ρ)` for the drifted copies of [`drifted_copies`].
pub fn projection_failure<T: Real>(psi: &StateVector<T>, r: usize, epsilon: T) -> Result<T> {
    let joint = drifted_copies(psi, r, epsilon)?;
    let s = build_projector::<T>(r)?;
    let v = s.matrix() * joint.vector();
    let kept = v.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr());
    Ok((T::one() - kept).max(T::zero()))
}

/// Power law of `1 − success` against the drift angle.
pub fn success_onset(psi: &StateVector<f64>, r: usize, epsilons: &[f64]) -> Result<PowerFit> {
    let fails = epsilons
        .iter()
        .map(|&e| projection_failure(psi, r, e))
        .collect::<Result<Vec<_>>>()?;
    fit::power_law(epsilons, &fails)
}

/// Estimates the Zeno constant `k` for copies drifting apart at angular
/// rate `drift_rate`: with `n` projections per unit time each interval
/// drifts by `drift_rate/n`, and `k` is the least-squares slope of the
/// per-projection failure against `1/n²`.
pub fn fit_zeno_constant(
    psi: &StateVector<f64>,
    r: usize,
    drift_rate: f64,
    ns: &[u64],
) -> Result<f64> {
    if ns.is_empty() || ns.contains(&0) {
        return Err(Error::InvalidArgument(
            "projection counts must be positive".into(),
        ));
    }
    let mut num = 0.0;
    let mut den = 0.0;
    for &n in ns {
        let x = 1.0 / (n as f64 * n as f64);
        num += x * projection_failure(psi, r, drift_rate / n as f64)?;
        den += x * x;
    }
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::amp;
    use approx::assert_abs_diff_eq;

    fn plus() -> StateVector<f64> {
        StateVector::from_raw(1, vec![amp(1.0, 0.0), amp(1.0, 0.0)]).unwrap()
    }

    fn dephasing_perturbation(p: f64) -> CMatrix<f64> {
        let rho0 = plus().to_density();
        let z = Pauli::Z.matrix::<f64>();
        let zz = CMatrix::from_fn(2, 2, |i, j| z[(i, j)]);
        (&zz * rho0.matrix() * &zz - rho0.matrix()) * amp(p, 0.0)
    }

    #[test]
    fn projector_ranks() {
        for r in 1..=6 {
            let s = build_projector::<f64>(r).unwrap();
            assert_eq!(s.rank(), r + 1);
            assert!(s.idempotence_error() < 1e-12);
            assert!(s.hermiticity_error() < 1e-12);
        }
        assert_eq!(
            build_projector::<f64>(1).unwrap().matrix(),
            &linalg::identity::<f64>(2)
        );
        assert!(matches!(
            build_projector::<f64>(9),
            Err(Error::CopyCount(9))
        ));
        assert!(build_projector::<f64>(0).is_err());
    }

    #[test]
    fn two_qubit_projector_entries() {
        let s = build_projector::<f64>(2).unwrap();
        // |01⟩ and |10⟩ mix into the triplet component
        assert_abs_diff_eq!(s.matrix()[(1, 2)].re, 0.5);
        assert_abs_diff_eq!(s.matrix()[(0, 0)].re, 1.0);
        assert_abs_diff_eq!(s.matrix()[(3, 3)].re, 1.0);
    }

    #[test]
    fn identical_pure_copies_pass_untouched() {
        let psi = StateVector::<f64>::from_raw(1, vec![amp(0.3, 0.2), amp(-0.5, 0.7)]).unwrap();
        let joint = psi.tensor(&psi).tensor(&psi).to_density();
        let out = project(&joint, &build_projector(3).unwrap()).unwrap();
        assert_abs_diff_eq!(out.success_prob, 1.0, epsilon = 1e-12);
        assert!(out.post_state.distance(&joint) < 1e-12);
    }

    #[test]
    fn maximally_mixed_is_a_fixed_point() {
        let mixed = DensityOperator::<f64>::maximally_mixed(1).unwrap();
        let out = project(&mixed.tensor(&mixed), &build_projector(2).unwrap()).unwrap();
        assert!(out.single_copy.distance(&mixed) < 1e-15);
        let g = purity_gain(&mixed).unwrap();
        assert_eq!((g.before, g.after), (0.5, 0.5));
    }

    #[test]
    fn singlet_projection_fails() {
        let singlet = StateVector::<f64>::from_raw(
            2,
            vec![amp(0.0, 0.0), amp(1.0, 0.0), amp(-1.0, 0.0), amp(0.0, 0.0)],
        )
        .unwrap()
        .to_density();
        assert!(matches!(
            project(&singlet, &build_projector(2).unwrap()),
            Err(Error::ProjectionFailed(_))
        ));
    }

    #[test]
    fn purity_gain_of_diagonal_state() {
        let rho = DensityOperator::diagonal(1, &[0.75, 0.25]).unwrap();
        let g = purity_gain(&rho).unwrap();
        assert_abs_diff_eq!(g.before, 0.625, epsilon = 1e-15);
        let (a, b) = (0.75 + 0.5625, 0.25 + 0.0625);
        assert_abs_diff_eq!(g.after, (a * a + b * b) / (1.625 * 1.625), epsilon = 1e-15);
        assert_abs_diff_eq!(g.after, 0.689_349_112, epsilon = 1e-9);
        let pure = purity_gain(&plus().to_density()).unwrap();
        assert_abs_diff_eq!(pure.after, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn first_order_zero_perturbation() {
        let zero = CMatrix::<f64>::zeros(2, 2);
        let rep = first_order_report(&plus(), &[zero.clone(), zero]).unwrap();
        assert_eq!(rep.fidelity_before, 1.0);
        assert_eq!(rep.fidelity_after_predicted, 1.0);
        assert_abs_diff_eq!(rep.fidelity_after_exact, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn first_order_dephasing() {
        let p = 0.01;
        for r in [2usize, 4] {
            let rep = first_order_report(&plus(), &vec![dephasing_perturbation(p); r]).unwrap();
            assert_abs_diff_eq!(rep.fidelity_before, 1.0 - p, epsilon = 1e-15);
            assert_abs_diff_eq!(
                rep.fidelity_after_predicted,
                1.0 - p / r as f64,
                epsilon = 1e-15
            );
            assert!(
                rep.fidelity_residual() < 5.0 * p * p,
                "R={r}: {}",
                rep.fidelity_residual()
            );
            assert!(
                rep.purity_residual() < 5.0 * p * p,
                "R={r}: {}",
                rep.purity_residual()
            );
        }
    }

    #[test]
    fn first_order_guards() {
        let big = dephasing_perturbation(0.2);
        assert!(matches!(
            first_order_report(&plus(), &[big]),
            Err(Error::PerturbationTooLarge { .. })
        ));
        let traceful = CMatrix::from_diagonal_element(2, 2, amp(0.01, 0.0));
        assert!(matches!(
            first_order_report(&plus(), &[traceful]),
            Err(Error::InvalidPerturbation(_))
        ));
    }

    #[test]
    fn channel_perturbation_matches_dephasing_form() {
        let ch = crate::noise::dephasing_channel(0.01).unwrap();
        let p = perturbation_from_channel(&ch, &plus()).unwrap();
        assert!(linalg::max_abs_diff(&p, &dephasing_perturbation(0.01)) < 1e-15);
        let joint = noisy_copies(&plus(), &[ch.clone(), ch]).unwrap();
        assert_eq!(joint.n_qubits(), 2);
        assert_abs_diff_eq!(joint.trace(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn zeno_examples() {
        assert_abs_diff_eq!(zeno_success(0.3, 1).unwrap(), 0.7, epsilon = 1e-15);
        assert_abs_diff_eq!(
            zeno_success(1.0, 10).unwrap(),
            0.99f64.powi(10),
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(zeno_success(1.0, 10).unwrap(), 0.904382, epsilon = 1e-6);
        assert_eq!(zeno_success(0.0, 7).unwrap(), 1.0);
        assert_eq!(zeno_success(1.0, 1).unwrap(), 0.0);
        assert!(matches!(
            zeno_success(2.0, 1),
            Err(Error::ZenoNegative { .. })
        ));
        assert!(zeno_success(-1.0, 3).is_err());
        assert!(zeno_success(1.0, 0).is_err());
    }

    #[test]
    fn zeno_approaches_one() {
        let mut last = -1.0;
        for n in [1u64, 2, 5, 10, 100, 1000, 100_000] {
            let s = zeno_success(1.0, n).unwrap();
            assert!(s > last);
            last = s;
        }
        assert!(1.0 - last < 1e-5);
    }

    #[test]
    fn drift_onset_is_quadratic() {
        let fit = success_onset(&plus(), 2, &[1e-3, 2e-3, 5e-3, 1e-2]).unwrap();
        assert!((fit.power - 2.0).abs() < 0.01, "{fit:?}");
        assert_abs_diff_eq!(
            projection_failure(&plus(), 1, 0.3).unwrap(),
            0.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn zeno_constant_from_drift() {
        // two copies at angle θ: failure (1 − |⟨a|b⟩|²)/2 = sin²(θ/2)/2 ≈ θ²/8
        let k = fit_zeno_constant(&plus(), 2, 1.0, &[10, 100, 1000]).unwrap();
        assert_abs_diff_eq!(k, 0.125, epsilon = 1e-3);
    }
}
