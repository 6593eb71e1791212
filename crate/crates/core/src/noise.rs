// Copyright 2026 The qnoise Authors
// SPDX-License-Identifier: Apache-2.0

//! Spontaneous emission of a qubit into a discretised bosonic bath.
//!
//! The qubit's excited state `|1⟩` couples to a set of modes in the rotating
//! wave approximation. Starting from `|1⟩|vac⟩`, only the single-excitation
//! sector is reachable, so the dynamics is fully described by the amplitude
//! `c_i(t)` of `|1⟩|vac⟩` and the amplitudes `c_f(t)` of `|0⟩|1_f⟩`. In the
//! interaction picture (ħ = 1)
//!
//! ```text
//! i ċ_i = Σ_f λ_f e^{-i(ω_f-ω₀)t} c_f
//! i ċ_f = λ_f e^{+i(ω_f-ω₀)t} c_i
//! ```
//!
//! Couplings are derived from a coupling density `g(ω)` with
//! `λ_f² = g(ω_f)·Δω`, which makes the golden-rule rate `γ = 2π·g(ω₀)`
//! independent of the grid.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, Mat2};
use crate::scalar::{cis, cr, Real, C};
use crate::state::{DensityOperator, Pauli, PauliString, StateVector};

/// Trace-preservation tolerance for generated channels.
pub const CHANNEL_TOL: f64 = 1e-10;
/// Norm drift that aborts an integration.
pub const NORM_DRIFT_LIMIT: f64 = 1e-6;
/// Default bound on `max|ω_f − ω₀|·Δt`.
pub const MAX_PHASE_STEP: f64 = 0.1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpectrumShape {
    Flat,
    Gaussian,
    Lorentzian,
}

impl SpectrumShape {
    /// Profile normalised to 1 at the centre.
    fn profile<T: Real>(self, detuning: T, width: T) -> T {
        let x = detuning / width;
        match self {
            SpectrumShape::Flat => T::one(),
            SpectrumShape::Gaussian => (-(x * x) / T::lit(2.0)).exp(),
            SpectrumShape::Lorentzian => T::one() / (T::one() + x * x),
        }
    }
}

impl FromStr for SpectrumShape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "flat" => Ok(SpectrumShape::Flat),
            "gaussian" => Ok(SpectrumShape::Gaussian),
            "lorentzian" => Ok(SpectrumShape::Lorentzian),
            other => Err(Error::InvalidEnvironment(format!(
                "unknown spectrum shape '{other}'"
            ))),
        }
    }
}

impl fmt::Display for SpectrumShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpectrumShape::Flat => "flat",
            SpectrumShape::Gaussian => "gaussian",
            SpectrumShape::Lorentzian => "lorentzian",
        })
    }
}

/// Continuous description of the bath before discretisation.
#[derive(Clone, Debug, PartialEq)]
pub struct EnvironmentSpec<T: Real> {
    /// Qubit splitting ω₀.
    pub omega0: T,
    pub shape: SpectrumShape,
    /// Centre of the coupling profile.
    pub center: T,
    /// Typical width Δ of the coupling profile.
    pub width: T,
    /// Peak coupling density `g(center)`, in coupling² per unit frequency.
    pub coupling_density: T,
    pub n_modes: usize,
    pub omega_min: T,
    pub omega_max: T,
}

impl<T: Real> EnvironmentSpec<T> {
    /// Flat band `ω₀ ± half_window` whose golden-rule rate is `gamma`. The
    /// width Δ is taken to be the half window.
    pub fn flat_band(omega0: T, gamma: T, half_window: T, n_modes: usize) -> Self {
        Self {
            omega0,
            shape: SpectrumShape::Flat,
            center: omega0,
            width: half_window,
            coupling_density: gamma / T::TAU(),
            n_modes,
            omega_min: omega0 - half_window,
            omega_max: omega0 + half_window,
        }
    }

    /// Profile of the given shape centred on ω₀, scaled so that the decay
    /// rate at resonance is `gamma`.
    pub fn with_decay_rate(
        shape: SpectrumShape,
        omega0: T,
        gamma: T,
        width: T,
        half_window: T,
        n_modes: usize,
    ) -> Self {
        Self {
            shape,
            width,
            ..Self::flat_band(omega0, gamma, half_window, n_modes)
        }
    }

    /// Desk-scale bath: γ = 1, ω₀ = 50, flat band ω₀ ± 20γ with 400 modes.
    pub fn desk_default() -> Self {
        Self::flat_band(T::lit(50.0), T::one(), T::lit(20.0), 400)
    }

    /// `g(ω)`
    pub fn coupling_at(&self, omega: T) -> T {
        self.coupling_density * self.shape.profile(omega - self.center, self.width)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega_min < self.omega0 && self.omega0 < self.omega_max) {
            return Err(Error::ResonanceOutsideGrid {
                omega0: self.omega0.as_f64(),
                omega_min: self.omega_min.as_f64(),
                omega_max: self.omega_max.as_f64(),
            });
        }
        if self.n_modes < 2 {
            return Err(Error::InvalidEnvironment(format!(
                "need at least 2 modes, got {}",
                self.n_modes
            )));
        }
        if !(self.width > T::zero()) {
            return Err(Error::InvalidEnvironment(format!(
                "width must be positive, got {}",
                self.width
            )));
        }
        if !(self.coupling_density > T::zero()) {
            return Err(Error::InvalidEnvironment(format!(
                "coupling density must be positive, got {}",
                self.coupling_density
            )));
        }
        if !(self.coupling_at(self.omega0) > T::zero()) {
            return Err(Error::InvalidEnvironment(
                "coupling vanishes at resonance".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mode<T: Real> {
    pub omega: T,
    pub lambda: T,
}

/// Discretised bath together with its golden-rule parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct EnvironmentModel<T: Real> {
    pub omega0: T,
    pub width: T,
    pub spacing: T,
    pub modes: Vec<Mode<T>>,
    /// Decay rate `2π·g(ω₀)`.
    pub gamma: T,
    /// Principal-value level shift.
    pub delta: T,
    /// `Σ_f λ_f²`, the energy variance of the initial state.
    pub sum_lambda_sq: T,
}

impl<T: Real> EnvironmentModel<T> {
    /// `ω₀ + δ`
    pub fn effective_omega0(&self) -> T {
        self.omega0 + self.delta
    }

    pub fn max_detuning(&self) -> T {
        self.modes
            .iter()
            .fold(T::zero(), |m, mode| m.max((mode.omega - self.omega0).abs()))
    }

    pub fn n_modes(&self) -> usize {
        self.modes.len()
    }
}

/// Places `n_modes` modes at the bin centres of a uniform grid on
/// `[omega_min, omega_max]`.
pub fn discretize<T: Real>(spec: &EnvironmentSpec<T>) -> Result<EnvironmentModel<T>> {
    spec.validate()?;
    let n = spec.n_modes;
    let spacing = (spec.omega_max - spec.omega_min) / T::lit(n as f64);
    let half = T::lit(0.5);
    let modes: Vec<Mode<T>> = (0..n)
        .map(|f| {
            let omega = spec.omega_min + (T::lit(f as f64) + half) * spacing;
            Mode {
                omega,
                lambda: (spec.coupling_at(omega) * spacing).sqrt(),
            }
        })
        .collect();
    let sum_lambda_sq = modes
        .iter()
        .fold(T::zero(), |acc, m| acc + m.lambda * m.lambda);
    // the bin whose centre sits on resonance is left out of the principal value
    let resonant = spacing * T::lit(0.25);
    let delta = modes
        .iter()
        .filter(|m| (m.omega - spec.omega0).abs() >= resonant)
        .fold(T::zero(), |acc, m| {
            acc + m.lambda * m.lambda / (spec.omega0 - m.omega)
        });
    Ok(EnvironmentModel {
        omega0: spec.omega0,
        width: spec.width,
        spacing,
        modes,
        gamma: T::TAU() * spec.coupling_at(spec.omega0),
        delta,
        sum_lambda_sq,
    })
}

// ---------------------------------------------------------------------------
// Integration
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntegratorOptions {
    /// Upper bound on `max|ω_f − ω₀|·Δt` for the internal step.
    pub max_phase_step: f64,
    /// Norm drift that turns into [`Error::NormDrift`].
    pub norm_limit: f64,
}

impl Default for IntegratorOptions {
    fn default() -> Self {
        Self {
            max_phase_step: MAX_PHASE_STEP,
            norm_limit: NORM_DRIFT_LIMIT,
        }
    }
}

/// Amplitudes sampled on a uniform output grid.
#[derive(Clone, Debug, PartialEq)]
pub struct AmplitudeTrajectory<T: Real> {
    pub omega0: T,
    pub mode_omegas: Vec<T>,
    pub times: Vec<T>,
    pub c_i: Vec<C<T>>,
    /// `n_modes × n_times`
    pub c_f: CMatrix<T>,
    /// Internal steps per output interval.
    pub substeps: usize,
}

impl<T: Real> AmplitudeTrajectory<T> {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index >= self.len() {
            return Err(Error::TimeIndex {
                index,
                len: self.len(),
            });
        }
        Ok(())
    }

    /// `|c_i(t_k)|²`
    pub fn survival(&self, index: usize) -> T {
        self.c_i[index].norm_sqr()
    }

    /// `|c_i|² + Σ_f |c_f|²` at `t_k`.
    pub fn norm(&self, index: usize) -> T {
        self.c_f
            .column(index)
            .iter()
            .fold(self.c_i[index].norm_sqr(), |acc, c| acc + c.norm_sqr())
    }

    pub fn max_norm_drift(&self) -> T {
        (0..self.len()).fold(T::zero(), |m, k| m.max((self.norm(k) - T::one()).abs()))
    }
}

struct AmplitudeEquations<T: Real> {
    detunings: Vec<T>,
    lambdas: Vec<T>,
}

impl<T: Real> AmplitudeEquations<T> {
    fn new(env: &EnvironmentModel<T>) -> Self {
        Self {
            detunings: env.modes.iter().map(|m| m.omega - env.omega0).collect(),
            lambdas: env.modes.iter().map(|m| m.lambda).collect(),
        }
    }

    /// `y = (c_i, c_1, …, c_n)`
    fn rhs(&self, t: T, y: &[C<T>], dy: &mut [C<T>]) {
        let minus_i = -C::<T>::i();
        let ci = y[0];
        let mut acc = C::zero();
        for f in 0..self.lambdas.len() {
            let ph = cis(self.detunings[f] * t);
            acc += ph.conj() * y[f + 1] * self.lambdas[f];
            dy[f + 1] = minus_i * ph * ci * self.lambdas[f];
        }
        dy[0] = minus_i * acc;
    }
}

/// Integrates the amplitude equations from `|1⟩|vac⟩` up to `t_max`,
/// recording `steps + 1` equally spaced samples.
pub fn integrate<T: Real>(
    env: &EnvironmentModel<T>,
    t_max: T,
    steps: usize,
) -> Result<AmplitudeTrajectory<T>> {
    integrate_with(env, t_max, steps, &IntegratorOptions::default())
}

/// Classical fourth-order Runge–Kutta with a fixed internal step chosen so
/// that `max|ω_f − ω₀|·Δt ≤ opts.max_phase_step`.
pub fn integrate_with<T: Real>(
    env: &EnvironmentModel<T>,
    t_max: T,
    steps: usize,
    opts: &IntegratorOptions,
) -> Result<AmplitudeTrajectory<T>> {
    if !(t_max > T::zero()) || steps == 0 {
        return Err(Error::InvalidEnvironment(format!(
            "need t_max > 0 and steps > 0 (got {t_max}, {steps})"
        )));
    }
    let n = env.modes.len();
    let h_out = t_max / T::lit(steps as f64);
    let phase_per_step = (h_out * env.max_detuning()).as_f64();
    let substeps = ((phase_per_step / opts.max_phase_step).ceil() as usize).max(1);
    let h = h_out / T::lit(substeps as f64);
    let half_h = h / T::lit(2.0);
    let sixth = h / T::lit(6.0);

    let eq = AmplitudeEquations::new(env);
    let mut y = vec![C::zero(); n + 1];
    y[0] = C::one();
    let (mut k1, mut k2, mut k3, mut k4) = (
        vec![C::zero(); n + 1],
        vec![C::zero(); n + 1],
        vec![C::zero(); n + 1],
        vec![C::zero(); n + 1],
    );
    let mut tmp = vec![C::zero(); n + 1];

    let mut times = Vec::with_capacity(steps + 1);
    let mut c_i = Vec::with_capacity(steps + 1);
    let mut c_f = CMatrix::zeros(n, steps + 1);
    let mut record = |k: usize, y: &[C<T>], times: &mut Vec<T>, c_i: &mut Vec<C<T>>| {
        times.push(h_out * T::lit(k as f64));
        c_i.push(y[0]);
        for f in 0..n {
            c_f[(f, k)] = y[f + 1];
        }
    };
    record(0, &y, &mut times, &mut c_i);

    for k in 0..steps {
        let t0 = h_out * T::lit(k as f64);
        for j in 0..substeps {
            let t = t0 + h * T::lit(j as f64);
            eq.rhs(t, &y, &mut k1);
            axpy(&mut tmp, &y, &k1, half_h);
            eq.rhs(t + half_h, &tmp, &mut k2);
            axpy(&mut tmp, &y, &k2, half_h);
            eq.rhs(t + half_h, &tmp, &mut k3);
            axpy(&mut tmp, &y, &k3, h);
            eq.rhs(t + h, &tmp, &mut k4);
            let two = T::lit(2.0);
            for i in 0..=n {
                y[i] += (k1[i] + (k2[i] + k3[i]) * two + k4[i]) * sixth;
            }
        }
        let norm = y.iter().fold(T::zero(), |acc, a| acc + a.norm_sqr());
        let drift = (norm - T::one()).abs().as_f64();
        if drift > opts.norm_limit {
            return Err(Error::NormDrift {
                drift,
                limit: opts.norm_limit,
            });
        }
        record(k + 1, &y, &mut times, &mut c_i);
    }

    Ok(AmplitudeTrajectory {
        omega0: env.omega0,
        mode_omegas: env.modes.iter().map(|m| m.omega).collect(),
        times,
        c_i,
        c_f,
        substeps,
    })
}

fn axpy<T: Real>(out: &mut [C<T>], y: &[C<T>], k: &[C<T>], h: T) {
    for ((o, a), b) in out.iter_mut().zip(y).zip(k) {
        *o = a + b * h;
    }
}

// ---------------------------------------------------------------------------
// Relative environment states
// ---------------------------------------------------------------------------

const PAULIS: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

/// Vector in the vacuum ⊕ single-excitation sector of the bath.
#[derive(Clone, Debug, PartialEq)]
pub struct EnvironmentVector<T: Real> {
    pub vacuum: C<T>,
    pub modes: Vec<C<T>>,
}

impl<T: Real> EnvironmentVector<T> {
    fn zero(n: usize) -> Self {
        Self {
            vacuum: C::zero(),
            modes: vec![C::zero(); n],
        }
    }

    /// `⟨self|other⟩`
    pub fn inner(&self, other: &Self) -> C<T> {
        self.vacuum.conj() * other.vacuum + linalg::inner(&self.modes, &other.modes)
    }

    pub fn norm_sqr(&self) -> T {
        self.inner(self).re
    }

    fn scaled(&self, s: C<T>) -> Self {
        Self {
            vacuum: self.vacuum * s,
            modes: self.modes.iter().map(|m| m * s).collect(),
        }
    }

    fn plus(&self, other: &Self) -> Self {
        Self {
            vacuum: self.vacuum + other.vacuum,
            modes: self
                .modes
                .iter()
                .zip(&other.modes)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

/// The four bath states multiplying `1, σ_x, σ_y, σ_z` in the joint
/// qubit–bath state, with the convention `R₁ = (R₀₁+R₁₀)/2`,
/// `R₂ = (R₀₁−R₁₀)/2`.
#[derive(Clone, Debug, PartialEq)]
pub struct RelativeStates<T: Real> {
    pub r: [EnvironmentVector<T>; 4],
}

impl<T: Real> RelativeStates<T> {
    /// `⟨R₀|R₀⟩ + ⟨R₃|R₃⟩ − 2 Re⟨R₀|R₃⟩`, the fidelity of an initially
    /// excited qubit.
    pub fn excited_fidelity(&self) -> T {
        let [r0, _, _, r3] = &self.r;
        r0.norm_sqr() + r3.norm_sqr() - T::lit(2.0) * r0.inner(r3).re
    }

    /// Coefficients of the standard Pauli matrices: `R₂` enters `σ_y` as
    /// `−i·R₂` so that all phases live in the bath vectors.
    pub fn pauli_coefficients(&self) -> [EnvironmentVector<T>; 4] {
        let [r0, r1, r2, r3] = self.r.clone();
        [r0, r1, r2.scaled(-C::<T>::i()), r3]
    }

    /// Joint state `Σ_i σ_i|ψ⟩|R_i⟩` for a single-qubit input, as the two
    /// bath vectors multiplying `|0⟩` and `|1⟩`.
    pub fn joint_state(&self, psi: &StateVector<T>) -> Result<[EnvironmentVector<T>; 2]> {
        if psi.n_qubits() != 1 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: psi.dim(),
            });
        }
        let n = self.r[0].modes.len();
        let mut out = [EnvironmentVector::zero(n), EnvironmentVector::zero(n)];
        for (p, coeff) in PAULIS.iter().zip(self.pauli_coefficients().iter()) {
            let m = p.matrix::<T>();
            for (row, slot) in out.iter_mut().enumerate() {
                let amp = m[(row, 0)] * psi.amplitude(0) + m[(row, 1)] * psi.amplitude(1);
                *slot = slot.plus(&coeff.scaled(amp));
            }
        }
        Ok(out)
    }

    /// Reduced qubit state obtained by tracing the bath out of
    /// [`joint_state`](Self::joint_state).
    pub fn reduced_qubit(&self, psi: &StateVector<T>) -> Result<DensityOperator<T>> {
        let [e0, e1] = self.joint_state(psi)?;
        let m = CMatrix::from_row_slice(
            2,
            2,
            &[e0.inner(&e0), e1.inner(&e0), e0.inner(&e1), e1.inner(&e1)],
        );
        // integration drift is bounded by the integrator's norm guard
        let tr = cr(e0.norm_sqr() + e1.norm_sqr());
        DensityOperator::new(1, m / tr)
    }

    /// `Σ_ij ⟨ψ|σ_i|ψ⟩⟨ψ|σ_j|ψ⟩⟨R_j|R_i⟩` over the phase-folded coefficients.
    pub fn fidelity_for(&self, psi: &StateVector<T>) -> Result<T> {
        if psi.n_qubits() != 1 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: psi.dim(),
            });
        }
        let coeffs = self.pauli_coefficients();
        let e: Vec<T> = PAULIS
            .iter()
            .map(|p| psi.expectation(&PauliString::new(vec![*p])).map(|z| z.re))
            .collect::<Result<_>>()?;
        let mut f = T::zero();
        for i in 0..4 {
            for j in 0..4 {
                f += e[i] * e[j] * coeffs[j].inner(&coeffs[i]).re;
            }
        }
        Ok(f)
    }
}

/// Bath states at sample `index`: `R₀,₃ = ½(1 ± c_i e^{-iω₀t})|vac⟩` and
/// `R₁ = −R₂ = ½ Σ_f c_f e^{-iω_f t}|1_f⟩`.
pub fn relative_states<T: Real>(
    traj: &AmplitudeTrajectory<T>,
    index: usize,
) -> Result<RelativeStates<T>> {
    traj.check_index(index)?;
    let t = traj.times[index];
    let half = cr(T::lit(0.5));
    let excited = traj.c_i[index] * cis(-traj.omega0 * t);
    let emitted: Vec<C<T>> = traj
        .mode_omegas
        .iter()
        .zip(traj.c_f.column(index).iter())
        .map(|(w, c)| c * cis(-*w * t) * half)
        .collect();
    let n = emitted.len();
    let r0 = EnvironmentVector {
        vacuum: half * (C::<T>::one() + excited),
        modes: vec![C::<T>::zero(); n],
    };
    let r3 = EnvironmentVector {
        vacuum: half * (C::<T>::one() - excited),
        modes: vec![C::<T>::zero(); n],
    };
    let r1 = EnvironmentVector {
        vacuum: C::zero(),
        modes: emitted.clone(),
    };
    let r2 = EnvironmentVector {
        vacuum: C::zero(),
        modes: emitted.iter().map(|c| -c).collect(),
    };
    Ok(RelativeStates {
        r: [r0, r1, r2, r3],
    })
}

// ---------------------------------------------------------------------------
// Single-qubit channels
// ---------------------------------------------------------------------------

/// Kraus representation of a single-qubit channel.
#[derive(Clone, Debug, PartialEq)]
pub struct QubitChannel<T: Real> {
    pub kraus_ops: Vec<Mat2<T>>,
    pub time: T,
}

impl<T: Real> QubitChannel<T> {
    /// `K₀ = diag(1, a)`, `K₁ = √(1−|a|²)|0⟩⟨1|`, where `a` is the amplitude
    /// left on `|1⟩`.
    pub fn amplitude_damping(amplitude: C<T>, time: T) -> Result<Self> {
        let mag = amplitude.norm();
        if mag > T::one() + T::tol(CHANNEL_TOL) {
            return Err(Error::AmplitudeAboveOne(mag.as_f64()));
        }
        let (o, l) = (C::zero(), C::one());
        let jump = (T::one() - amplitude.norm_sqr()).max(T::zero()).sqrt();
        Ok(Self {
            kraus_ops: vec![
                linalg::mat2(l, o, o, amplitude),
                linalg::mat2(o, cr(jump), o, o),
            ],
            time,
        })
    }

    /// Closed-form exponential decay `c_i = e^{-γt/2}`.
    pub fn exponential_decay(gamma: T, time: T) -> Self {
        let a = (-gamma * time / T::lit(2.0)).exp();
        Self::amplitude_damping(cr(a), time).expect("|e^{-γt/2}| ≤ 1")
    }

    pub fn identity() -> Self {
        Self {
            kraus_ops: vec![Mat2::identity()],
            time: T::zero(),
        }
    }

    /// Largest entry of `Σ K†K − I`.
    pub fn trace_preservation_error(&self) -> T {
        let sum = self.kraus_ops.iter().fold(Mat2::<T>::zeros(), |acc, k| {
            acc + k.transpose().map(|z| z.conj()) * k
        });
        (sum - Mat2::identity())
            .iter()
            .fold(T::zero(), |m, z| m.max(z.norm()))
    }

    pub fn apply(&self, rho: &DensityOperator<T>) -> Result<DensityOperator<T>> {
        if rho.n_qubits() != 1 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: rho.dim(),
            });
        }
        rho.apply_local_kraus(0, &self.kraus_ops)
    }

    /// Applies the channel to one qubit of a larger register.
    pub fn apply_to_qubit(
        &self,
        rho: &DensityOperator<T>,
        qubit: usize,
    ) -> Result<DensityOperator<T>> {
        rho.apply_local_kraus(qubit, &self.kraus_ops)
    }
}

/// Damping channel in the lab frame: `K₀ = diag(1, c_i e^{-iω₀t})`.
pub fn damping_channel<T: Real>(
    traj: &AmplitudeTrajectory<T>,
    index: usize,
) -> Result<QubitChannel<T>> {
    traj.check_index(index)?;
    let t = traj.times[index];
    QubitChannel::amplitude_damping(traj.c_i[index] * cis(-traj.omega0 * t), t)
}

/// Damping channel relative to the free qubit evolution: `K₀ = diag(1, c_i)`.
pub fn damping_channel_rotating<T: Real>(
    traj: &AmplitudeTrajectory<T>,
    index: usize,
) -> Result<QubitChannel<T>> {
    traj.check_index(index)?;
    QubitChannel::amplitude_damping(traj.c_i[index], traj.times[index])
}

/// Phase flip with probability `p`: `{√(1−p)·I, √p·Z}`.
pub fn dephasing_channel<T: Real>(p: T) -> Result<QubitChannel<T>> {
    if !(p >= T::zero() && p <= T::one()) {
        return Err(Error::InvalidProbability(p.as_f64()));
    }
    let (o, l) = (C::<T>::zero(), C::<T>::one());
    let keep = cr((T::one() - p).sqrt());
    let flip = cr(p.sqrt());
    Ok(QubitChannel {
        kraus_ops: vec![
            linalg::mat2(keep, o, o, keep),
            linalg::mat2(flip, o, o, -flip * l),
        ],
        time: T::zero(),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct FidelityCurves<T: Real> {
    /// `max(0, 1 − 2t²Σλ²)`
    pub parabolic: Vec<T>,
    /// `e^{-γt}`
    pub exponential: Vec<T>,
}

pub fn fidelity_curves<T: Real>(env: &EnvironmentModel<T>, times: &[T]) -> FidelityCurves<T> {
    let two = T::lit(2.0);
    FidelityCurves {
        parabolic: times
            .iter()
            .map(|t| (T::one() - two * *t * *t * env.sum_lambda_sq).max(T::zero()))
            .collect(),
        exponential: times.iter().map(|t| (-env.gamma * *t).exp()).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::amp;
    use approx::assert_abs_diff_eq;

    fn desk() -> EnvironmentModel<f64> {
        discretize(&EnvironmentSpec::desk_default()).unwrap()
    }

    #[test]
    fn flat_band_rate_is_exact() {
        let spec = EnvironmentSpec::flat_band(10.0, 0.7, 4.0, 37);
        let env = discretize(&spec).unwrap();
        assert_abs_diff_eq!(env.gamma, 0.7, epsilon = 1e-15);
        assert_eq!(env.n_modes(), 37);
    }

    #[test]
    fn refinement_keeps_rate_and_variance() {
        let coarse = discretize(&EnvironmentSpec::<f64>::flat_band(50.0, 1.0, 20.0, 400)).unwrap();
        let fine = discretize(&EnvironmentSpec::<f64>::flat_band(50.0, 1.0, 20.0, 800)).unwrap();
        assert_abs_diff_eq!(coarse.gamma, fine.gamma, epsilon = 1e-10);
        assert_abs_diff_eq!(coarse.sum_lambda_sq, fine.sum_lambda_sq, epsilon = 1e-10);
        // Σλ² = g·(bandwidth) for a flat band
        assert_abs_diff_eq!(
            coarse.sum_lambda_sq,
            40.0 / std::f64::consts::TAU,
            epsilon = 1e-10
        );
    }

    #[test]
    fn symmetric_band_has_no_shift() {
        assert_abs_diff_eq!(desk().delta, 0.0, epsilon = 1e-10);
        // odd mode count puts a bin on resonance, which is excluded
        let odd = discretize(&EnvironmentSpec::<f64>::flat_band(50.0, 1.0, 20.0, 401)).unwrap();
        assert_abs_diff_eq!(odd.delta, 0.0, epsilon = 1e-10);
    }

    #[test]
    fn rejects_resonance_outside_grid() {
        let mut spec = EnvironmentSpec::<f64>::desk_default();
        spec.omega_max = 40.0;
        assert!(matches!(
            discretize(&spec),
            Err(Error::ResonanceOutsideGrid { .. })
        ));
        let mut spec = EnvironmentSpec::<f64>::desk_default();
        spec.n_modes = 1;
        assert!(matches!(
            discretize(&spec),
            Err(Error::InvalidEnvironment(_))
        ));
    }

    #[test]
    fn trajectory_starts_excited() {
        let traj = integrate(&desk(), 0.5, 10).unwrap();
        assert_eq!(traj.c_i[0], amp(1.0, 0.0));
        assert!(traj.c_f.column(0).iter().all(|c| *c == amp(0.0, 0.0)));
        assert_eq!(traj.len(), 11);
        assert!(traj.max_norm_drift() < 1e-8);
    }

    #[test]
    fn rejects_bad_integration_request() {
        assert!(integrate(&desk(), 0.0, 10).is_err());
        assert!(integrate(&desk(), 1.0, 0).is_err());
    }

    #[test]
    fn coarse_step_is_reported() {
        let opts = IntegratorOptions {
            max_phase_step: 4.0,
            norm_limit: 1e-6,
        };
        let err = integrate_with(&desk(), 3.0, 30, &opts).unwrap_err();
        assert!(matches!(err, Error::NormDrift { .. }), "{err}");
    }

    #[test]
    fn relative_states_at_origin() {
        let traj = integrate(&desk(), 0.1, 2).unwrap();
        let rs = relative_states(&traj, 0).unwrap();
        assert_abs_diff_eq!(rs.r[0].vacuum.re, 1.0, epsilon = 1e-15);
        for r in &rs.r[1..] {
            assert_abs_diff_eq!(r.norm_sqr(), 0.0, epsilon = 1e-30);
        }
        assert!(relative_states(&traj, 3).is_err());
    }

    #[test]
    fn relative_states_sign_and_fidelity() {
        let traj = integrate(&desk(), 1.0, 20).unwrap();
        for k in [3, 10, 20] {
            let rs = relative_states(&traj, k).unwrap();
            for (a, b) in rs.r[1].modes.iter().zip(&rs.r[2].modes) {
                assert_eq!(*a, -*b);
            }
            assert_abs_diff_eq!(rs.excited_fidelity(), traj.survival(k), epsilon = 1e-12);
        }
    }

    #[test]
    fn damping_channel_examples() {
        let traj = integrate(&desk(), 1.0, 10).unwrap();
        let at_zero = damping_channel(&traj, 0).unwrap();
        let rho = StateVector::from_raw(1, vec![amp(0.6, 0.1), amp(0.3, -0.7)])
            .unwrap()
            .to_density();
        assert!(at_zero.apply(&rho).unwrap().distance(&rho) < 1e-15);

        let ch = damping_channel(&traj, 10).unwrap();
        assert!(ch.trace_preservation_error() < 1e-10);
        let one = StateVector::<f64>::basis(1, 1).unwrap();
        let f1 = ch.apply(&one.to_density()).unwrap().fidelity(&one).unwrap();
        assert_abs_diff_eq!(f1, traj.survival(10), epsilon = 1e-12);
        let zero = StateVector::<f64>::basis(1, 0).unwrap();
        assert_eq!(
            ch.apply(&zero.to_density())
                .unwrap()
                .fidelity(&zero)
                .unwrap(),
            1.0
        );
    }

    #[test]
    fn amplitude_above_one_is_rejected() {
        assert!(matches!(
            QubitChannel::<f64>::amplitude_damping(amp(1.0 + 1e-6, 0.0), 0.0),
            Err(Error::AmplitudeAboveOne(_))
        ));
    }

    #[test]
    fn dephasing_examples() {
        let plus = StateVector::<f64>::from_raw(1, vec![amp(1.0, 0.0), amp(1.0, 0.0)]).unwrap();
        let rho = plus.to_density();
        let id = dephasing_channel(0.0).unwrap();
        assert!(id.apply(&rho).unwrap().distance(&rho) < 1e-15);
        let full = dephasing_channel(0.5).unwrap().apply(&rho).unwrap();
        assert!(full.distance(&DensityOperator::maximally_mixed(1).unwrap()) < 1e-15);
        let f = dephasing_channel(0.1)
            .unwrap()
            .apply(&rho)
            .unwrap()
            .fidelity(&plus)
            .unwrap();
        assert_abs_diff_eq!(f, (1.0 + (1.0 - 2.0 * 0.1)) / 2.0, epsilon = 1e-15);
        assert!(dephasing_channel(1.5f64).is_err());
        assert!(dephasing_channel(-0.1f64).is_err());
    }

    #[test]
    fn dephasing_scales_coherences() {
        let psi = StateVector::<f64>::from_raw(1, vec![amp(0.8, 0.0), amp(0.36, 0.48)]).unwrap();
        let rho = psi.to_density();
        let p = 0.23;
        let out = dephasing_channel(p).unwrap().apply(&rho).unwrap();
        assert_abs_diff_eq!(
            out.matrix()[(0, 0)].re,
            rho.matrix()[(0, 0)].re,
            epsilon = 1e-15
        );
        assert!((out.matrix()[(0, 1)] - rho.matrix()[(0, 1)] * (1.0 - 2.0 * p)).norm() < 1e-15);
    }

    #[test]
    fn fidelity_curve_examples() {
        let env = desk();
        let c = fidelity_curves(&env, &[0.0, 1.0, 100.0]);
        assert_eq!(c.parabolic[0], 1.0);
        assert_eq!(c.exponential[0], 1.0);
        assert_abs_diff_eq!(c.exponential[1], (-1.0f64).exp(), epsilon = 1e-15);
        assert_abs_diff_eq!(c.exponential[1], 0.367879, epsilon = 1e-6);
        assert_eq!(c.parabolic[2], 0.0);
        // zero slope at the origin: the first difference shrinks quadratically
        let h = 1e-4;
        let c = fidelity_curves(&env, &[0.0, h, 2.0 * h]);
        let slope1 = (c.parabolic[1] - c.parabolic[0]) / h;
        let slope2 = (c.parabolic[2] - c.parabolic[0]) / (2.0 * h);
        assert!(slope1.abs() < 1e-2 && (slope2 / slope1 - 2.0).abs() < 1e-3);
    }

    #[test]
    fn shape_parsing() {
        assert_eq!(
            "Gaussian".parse::<SpectrumShape>().unwrap(),
            SpectrumShape::Gaussian
        );
        assert!("cauchy".parse::<SpectrumShape>().is_err());
    }

    #[test]
    fn gaussian_bath_rate_matches_resonant_density() {
        let spec = EnvironmentSpec::<f64>::with_decay_rate(
            SpectrumShape::Gaussian,
            50.0,
            1.0,
            10.0,
            40.0,
            800,
        );
        let env = discretize(&spec).unwrap();
        assert_abs_diff_eq!(env.gamma, 1.0, epsilon = 1e-12);
        // total variance is g0·√(2π)·Δ up to tail truncation at ±4Δ
        let expected = spec.coupling_density * (std::f64::consts::TAU).sqrt() * 10.0;
        assert!((env.sum_lambda_sq / expected - 1.0).abs() < 1e-3);
    }
}
