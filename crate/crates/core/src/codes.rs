// Copyright 2026 The qnoise Authors
// SPDX-License-Identifier: Apache-2.0

//! Quantum error-correcting codes given by explicit codewords.
//!
//! A code stores its codewords and the Pauli errors it is meant to handle.
//! [`verify_conditions`] evaluates the Gram matrix of all error images of all
//! codewords, and [`build_recovery`] groups errors that act identically on
//! the code space into syndrome classes. Correction projects onto the
//! two-dimensional image of each class and undoes it with the class
//! representative.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::noise::QubitChannel;
use crate::scalar::{clit, cr, Real, C};
use crate::state::{hadamard, DensityOperator, Pauli, PauliString, StateVector};

/// Tolerance of the code conditions.
pub const CONDITION_TOL: f64 = 1e-10;
/// Weight outside every syndrome subspace that still counts as correctable.
pub const RESIDUAL_TOL: f64 = 1e-8;
/// Orthonormality tolerance for codewords.
pub const CODEWORD_TOL: f64 = 1e-12;

/// Identifiers accepted by [`builtin`].
pub const BUILTIN_IDS: [&str; 5] = ["phase3", "bitflip3", "shor9", "five", "five-printed"];

/// Which single-qubit Paulis the declared error set is built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKinds {
    All,
    BitFlips,
    PhaseFlips,
}

impl ErrorKinds {
    fn allows(self, p: Pauli) -> bool {
        match self {
            ErrorKinds::All => true,
            ErrorKinds::BitFlips => matches!(p, Pauli::I | Pauli::X),
            ErrorKinds::PhaseFlips => matches!(p, Pauli::I | Pauli::Z),
        }
    }
}

/// Every Pauli string of weight at most `t` whose labels are allowed by
/// `kinds`, identity first.
pub fn error_set(n: usize, t: usize, kinds: ErrorKinds) -> Vec<PauliString> {
    PauliString::up_to_weight(n, t)
        .into_iter()
        .filter(|e| e.labels().iter().all(|p| kinds.allows(*p)))
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuantumCode<T: Real> {
    name: String,
    n: usize,
    l: usize,
    t: usize,
    codewords: Vec<StateVector<T>>,
    errors: Vec<PauliString>,
    recovery: Option<RecoveryTable<T>>,
}

impl<T: Real> QuantumCode<T> {
    /// Checks that the `2^l` codewords live on `n` qubits and are
    /// orthonormal. The error set is attached but not verified.
    pub fn new(
        name: impl Into<String>,
        l: usize,
        t: usize,
        codewords: Vec<StateVector<T>>,
        errors: Vec<PauliString>,
    ) -> Result<Self> {
        let name = name.into();
        let first = codewords
            .first()
            .ok_or_else(|| Error::InvalidCode(format!("{name}: no codewords")))?;
        let n = first.n_qubits();
        if l == 0 || codewords.len() != 1 << l {
            return Err(Error::InvalidCode(format!(
                "{name}: {} codewords for l = {l}",
                codewords.len()
            )));
        }
        if let Some(bad) = codewords.iter().find(|c| c.n_qubits() != n) {
            return Err(Error::DimensionMismatch {
                expected: 1 << n,
                found: bad.dim(),
            });
        }
        if let Some(bad) = errors.iter().find(|e| e.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.len(),
            });
        }
        let tol = T::tol(CODEWORD_TOL);
        for (a, ca) in codewords.iter().enumerate() {
            for (b, cb) in codewords.iter().enumerate().skip(a + 1) {
                let ov = ca.inner(cb)?.norm();
                if ov > tol {
                    return Err(Error::InvalidCode(format!(
                        "{name}: ⟨C{a}|C{b}⟩ has magnitude {ov}"
                    )));
                }
            }
        }
        Ok(Self {
            name,
            n,
            l,
            t,
            codewords,
            errors,
            recovery: None,
        })
    }

    /// Verifies the conditions and attaches a recovery table.
    pub fn with_recovery(mut self) -> Result<Self> {
        self.recovery = Some(build_recovery(&self)?);
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn codewords(&self) -> &[StateVector<T>] {
        &self.codewords
    }

    pub fn errors(&self) -> &[PauliString] {
        &self.errors
    }

    pub fn recovery(&self) -> Option<&RecoveryTable<T>> {
        self.recovery.as_ref()
    }

    /// True when distinct declared errors act identically on the code space.
    pub fn degenerate(&self) -> Option<bool> {
        self.recovery
            .as_ref()
            .map(|r| r.classes.len() < self.errors.len())
    }

    /// `Σ_a c_a |C_a⟩` for normalised logical amplitudes `c`.
    pub fn encode(&self, logical: &[C<T>]) -> Result<StateVector<T>> {
        if logical.len() != self.codewords.len() {
            return Err(Error::DimensionMismatch {
                expected: self.codewords.len(),
                found: logical.len(),
            });
        }
        let ns = logical.iter().fold(T::zero(), |acc, c| acc + c.norm_sqr());
        if (ns - T::one()).abs() > T::tol(CODEWORD_TOL) {
            return Err(Error::NotNormalized {
                norm_sqr: ns.as_f64(),
            });
        }
        let dim = 1usize << self.n;
        let mut amps = vec![C::zero(); dim];
        for (c, word) in logical.iter().zip(&self.codewords) {
            for (slot, a) in amps.iter_mut().zip(word.amplitudes()) {
                *slot += c * a;
            }
        }
        StateVector::new(self.n, amps)
    }

    /// Encodes a single logical qubit state.
    pub fn encode_state(&self, logical: &StateVector<T>) -> Result<StateVector<T>> {
        self.encode(logical.amplitudes())
    }
}

// ---------------------------------------------------------------------------
// Built-in codes
// ---------------------------------------------------------------------------

/// `(|0⟩ + s|1⟩)^{⊗3} / √8`
fn product_code_word<T: Real>(sign: T) -> StateVector<T> {
    let amps = (0..8usize)
        .map(|x| {
            if x.count_ones() % 2 == 1 {
                cr(sign)
            } else {
                C::one()
            }
        })
        .collect();
    StateVector::from_raw(3, amps).expect("non-zero")
}

/// Three-qubit code protecting against a single phase flip.
pub fn phase3<T: Real>() -> QuantumCode<T> {
    let words = vec![product_code_word(T::one()), product_code_word(-T::one())];
    QuantumCode::new(
        "phase3",
        1,
        1,
        words,
        error_set(3, 1, ErrorKinds::PhaseFlips),
    )
    .and_then(QuantumCode::with_recovery)
    .expect("phase3 is valid")
}

/// Three-qubit repetition code protecting against a single bit flip.
pub fn bitflip3<T: Real>() -> QuantumCode<T> {
    let words = vec![
        StateVector::basis(3, 0).unwrap(),
        StateVector::basis(3, 7).unwrap(),
    ];
    QuantumCode::new(
        "bitflip3",
        1,
        1,
        words,
        error_set(3, 1, ErrorKinds::BitFlips),
    )
    .and_then(QuantumCode::with_recovery)
    .expect("bitflip3 is valid")
}

/// `((|000⟩ + s|111⟩)/√2)^{⊗3}`
fn shor_word<T: Real>(sign: T) -> StateVector<T> {
    let half = cr(T::one() / T::lit(2.0).sqrt());
    let block = StateVector::new(3, {
        let mut v = vec![C::zero(); 8];
        v[0] = half;
        v[7] = half * cr(sign);
        v
    })
    .expect("normalised");
    block.tensor(&block).tensor(&block)
}

/// Nine-qubit code.
pub fn shor9<T: Real>() -> QuantumCode<T> {
    let words = vec![shor_word(T::one()), shor_word(-T::one())];
    QuantumCode::new("shor9", 1, 1, words, error_set(9, 1, ErrorKinds::All))
        .and_then(QuantumCode::with_recovery)
        .expect("shor9 is valid")
}

const FIVE_C0: [&str; 8] = [
    "+00010", "+00101", "-01011", "+01100", "+10001", "-10110", "-11000", "-11111",
];
const FIVE_C1: [&str; 8] = [
    "+00000", "-00111", "+01001", "+01110", "+10011", "+10100", "+11010", "-11101",
];
/// Sign pattern of `|C₁⟩` that violates the code conditions.
const FIVE_C1_PRINTED: [&str; 8] = [
    "+00000", "-00111", "+01001", "+01110", "+10011", "-10100", "+11010", "-11101",
];

fn word_from_terms<T: Real>(n: usize, terms: &[&str]) -> Result<StateVector<T>> {
    let parsed = terms
        .iter()
        .map(|t| parse_term(t, n).map_err(Error::InvalidCode))
        .collect::<Result<Vec<_>>>()?;
    state_from_terms(n, &parsed).map_err(Error::InvalidCode)
}

/// Five-qubit code correcting an arbitrary single-qubit error.
pub fn five<T: Real>() -> QuantumCode<T> {
    let words = vec![
        word_from_terms(5, &FIVE_C0).unwrap(),
        word_from_terms(5, &FIVE_C1).unwrap(),
    ];
    QuantumCode::new("five", 1, 1, words, error_set(5, 1, ErrorKinds::All))
        .and_then(QuantumCode::with_recovery)
        .expect("five is valid")
}

/// Five-qubit codewords with the `|10100⟩` term of `|C₁⟩` negated. The
/// codewords are orthonormal but do not form an error-correcting code, so
/// no recovery table is attached.
pub fn five_printed<T: Real>() -> QuantumCode<T> {
    let words = vec![
        word_from_terms(5, &FIVE_C0).unwrap(),
        word_from_terms(5, &FIVE_C1_PRINTED).unwrap(),
    ];
    QuantumCode::new(
        "five-printed",
        1,
        1,
        words,
        error_set(5, 1, ErrorKinds::All),
    )
    .expect("orthonormal")
}

/// Looks up a built-in code by identifier.
pub fn builtin<T: Real>(id: &str) -> Result<QuantumCode<T>> {
    match id {
        "phase3" => Ok(phase3()),
        "bitflip3" => Ok(bitflip3()),
        "shor9" => Ok(shor9()),
        "five" => Ok(five()),
        "five-printed" => Ok(five_printed()),
        other => Err(Error::UnknownCode(other.to_string())),
    }
}

fn encode_with<T: Real>(code: QuantumCode<T>, alpha: C<T>, beta: C<T>) -> Result<StateVector<T>> {
    code.encode(&[alpha, beta])
}

pub fn encode_phase3<T: Real>(alpha: C<T>, beta: C<T>) -> Result<StateVector<T>> {
    encode_with(phase3(), alpha, beta)
}

pub fn encode_shor9<T: Real>(alpha: C<T>, beta: C<T>) -> Result<StateVector<T>> {
    encode_with(shor9(), alpha, beta)
}

pub fn encode_five<T: Real>(alpha: C<T>, beta: C<T>) -> Result<StateVector<T>> {
    encode_with(five(), alpha, beta)
}

/// Basis permutation that moves the majority bit of three qubits into
/// qubit 0: `011→111, 100→011, 101→110, 110→101, 111→100`, others fixed.
pub const BITFLIP_PERMUTATION: [usize; 8] =
    [0b000, 0b001, 0b010, 0b111, 0b011, 0b110, 0b101, 0b100];

pub fn bitflip_correction_unitary<T: Real>(state: &StateVector<T>) -> Result<StateVector<T>> {
    if state.n_qubits() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 8,
            found: state.dim(),
        });
    }
    state.permute_basis(&BITFLIP_PERMUTATION)
}

/// The bit-flip correction conjugated by Hadamards on every qubit; corrects
/// one phase flip on `α|+++⟩ + β|−−−⟩`, leaving `α|+⟩ + β|−⟩` in qubit 0.
pub fn phaseflip_correction_unitary<T: Real>(state: &StateVector<T>) -> Result<StateVector<T>> {
    let h = hadamard::<T>();
    let mut s = state.clone();
    for q in 0..s.n_qubits() {
        s = s.apply_local_unitary(q, &h)?;
    }
    let mut s = bitflip_correction_unitary(&s)?;
    for q in 0..3 {
        s = s.apply_local_unitary(q, &h)?;
    }
    Ok(s)
}

// ---------------------------------------------------------------------------
// Code conditions
// ---------------------------------------------------------------------------

/// Gram structure `⟨C_a|A_k† A_l|C_b⟩` over the error set.
#[derive(Clone, Debug, PartialEq)]
pub struct CodeConditionReport<T: Real> {
    pub errors: Vec<PauliString>,
    /// Row and column index `k·2^l + a`.
    pub gram: CMatrix<T>,
    /// `c_kl` read off the first codeword.
    pub ancilla_gram: CMatrix<T>,
    pub satisfies_general: bool,
    pub satisfies_nondegenerate: bool,
    /// Largest `|⟨C_a|A_k†A_l|C_b⟩|` with `a ≠ b`.
    pub max_cross_block: T,
    /// Largest deviation between codewords of the diagonal blocks.
    pub max_diagonal_spread: T,
    /// Largest off-diagonal Gram entry.
    pub max_off_diagonal: T,
    /// Off-diagonal Gram entries above tolerance (each unordered pair once).
    pub off_diagonal_violations: usize,
    /// Error index pairs `k < l` with `|c_kl| = 1`.
    pub degenerate_pairs: Vec<(usize, usize)>,
}

impl<T: Real> CodeConditionReport<T> {
    pub fn n_codewords(&self) -> usize {
        self.gram.nrows() / self.errors.len()
    }

    /// Smallest eigenvalue of the ancilla Gram matrix.
    pub fn ancilla_min_eigenvalue(&self) -> f64 {
        linalg::hermitian_eigenvalues(&self.ancilla_gram)[0]
    }
}

pub fn verify_conditions<T: Real>(code: &QuantumCode<T>) -> CodeConditionReport<T> {
    verify_conditions_for(code, code.errors())
}

/// Checks the code conditions for an arbitrary list of errors.
pub fn verify_conditions_for<T: Real>(
    code: &QuantumCode<T>,
    errors: &[PauliString],
) -> CodeConditionReport<T> {
    let m = code.codewords.len();
    let k_count = errors.len();
    let images: Vec<Vec<Vec<C<T>>>> = errors
        .iter()
        .map(|e| {
            code.codewords
                .iter()
                .map(|c| e.apply_to_slice(c.amplitudes()))
                .collect()
        })
        .collect();
    let size = k_count * m;
    let gram = CMatrix::from_fn(size, size, |i, j| {
        linalg::inner(&images[i / m][i % m], &images[j / m][j % m])
    });
    let tol = T::tol(CONDITION_TOL);

    let mut max_cross = T::zero();
    let mut max_spread = T::zero();
    let mut max_off = T::zero();
    let mut violations = 0;
    for i in 0..size {
        for j in 0..size {
            let (k, a) = (i / m, i % m);
            let (l, b) = (j / m, j % m);
            let g = gram[(i, j)];
            if a != b {
                max_cross = max_cross.max(g.norm());
            } else {
                max_spread = max_spread.max((g - gram[(k * m, l * m)]).norm());
            }
            if i < j {
                max_off = max_off.max(g.norm());
                if g.norm() > tol {
                    violations += 1;
                }
            }
        }
    }
    let ancilla_gram = CMatrix::from_fn(k_count, k_count, |k, l| gram[(k * m, l * m)]);
    let mut degenerate_pairs = Vec::new();
    for k in 0..k_count {
        for l in k + 1..k_count {
            if (ancilla_gram[(k, l)].norm() - T::one()).abs() <= tol {
                degenerate_pairs.push((k, l));
            }
        }
    }
    let satisfies_general = max_cross <= tol && max_spread <= tol;
    CodeConditionReport {
        errors: errors.to_vec(),
        gram,
        ancilla_gram,
        satisfies_general,
        satisfies_nondegenerate: satisfies_general && max_off <= tol,
        max_cross_block: max_cross,
        max_diagonal_spread: max_spread,
        max_off_diagonal: max_off,
        off_diagonal_violations: violations,
        degenerate_pairs,
    }
}

// ---------------------------------------------------------------------------
// Recovery
// ---------------------------------------------------------------------------

/// Errors with a common action on the code space.
#[derive(Clone, Debug, PartialEq)]
pub struct SyndromeClass<T: Real> {
    pub id: usize,
    /// Lowest-index member; applied as the correction.
    pub representative: PauliString,
    pub members: Vec<PauliString>,
    /// Orthonormal basis `A|C_a⟩` of the image subspace.
    pub image: Vec<StateVector<T>>,
}

impl<T: Real> SyndromeClass<T> {
    /// `Σ_a |A C_a⟩⟨A C_a|` as a dense matrix.
    pub fn projector(&self) -> CMatrix<T> {
        self.image.iter().fold(
            CMatrix::zeros(self.image[0].dim(), self.image[0].dim()),
            |acc, v| acc + linalg::outer(v.vector(), v.vector()),
        )
    }

    /// `⟨A C_a|ψ⟩` for each codeword.
    fn coordinates(&self, amps: &[C<T>]) -> Vec<C<T>> {
        self.image
            .iter()
            .map(|v| linalg::inner(v.amplitudes(), amps))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RecoveryTable<T: Real> {
    pub classes: Vec<SyndromeClass<T>>,
    n_qubits: usize,
}

impl<T: Real> RecoveryTable<T> {
    /// Dimension covered by the syndrome subspaces.
    pub fn covered_dimension(&self) -> usize {
        self.classes.iter().map(|c| c.image.len()).sum()
    }

    /// True when the syndrome subspaces fill the whole register.
    pub fn is_complete(&self) -> bool {
        self.covered_dimension() == 1 << self.n_qubits
    }

    pub fn class_of(&self, error: &PauliString) -> Option<usize> {
        self.classes.iter().position(|c| c.members.contains(error))
    }
}

/// Groups the declared errors into syndrome classes.
pub fn build_recovery<T: Real>(code: &QuantumCode<T>) -> Result<RecoveryTable<T>> {
    let report = verify_conditions(code);
    if !report.satisfies_general {
        return Err(Error::ConditionsNotSatisfied);
    }
    let tol = T::tol(CONDITION_TOL);
    let mut reps: Vec<usize> = Vec::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    for k in 0..report.errors.len() {
        let mut joined = None;
        for (ci, &r) in reps.iter().enumerate() {
            let ov = report.ancilla_gram[(r, k)].norm();
            if (ov - T::one()).abs() <= tol {
                joined = Some(ci);
                break;
            }
            if ov > tol {
                return Err(Error::PartialOverlap(
                    report.errors[r].short(),
                    report.errors[k].short(),
                ));
            }
        }
        match joined {
            Some(ci) => members[ci].push(k),
            None => {
                reps.push(k);
                members.push(vec![k]);
            }
        }
    }
    let classes = reps
        .iter()
        .zip(members)
        .enumerate()
        .map(|(id, (&r, ms))| {
            let rep = report.errors[r].clone();
            let image = code
                .codewords
                .iter()
                .map(|c| c.apply_pauli(&rep))
                .collect::<Result<Vec<_>>>()?;
            Ok(SyndromeClass {
                id,
                representative: rep,
                members: ms.into_iter().map(|k| report.errors[k].clone()).collect(),
                image,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RecoveryTable {
        classes,
        n_qubits: code.n,
    })
}

fn recovery_of<T: Real>(code: &QuantumCode<T>) -> Result<&RecoveryTable<T>> {
    code.recovery.as_ref().ok_or(Error::ConditionsNotSatisfied)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PureCorrection<T: Real> {
    pub state: StateVector<T>,
    pub syndrome: usize,
    /// Born probability of the observed syndrome.
    pub probability: T,
}

/// Samples a syndrome with Born probabilities and applies the class
/// representative to the projected state.
pub fn correct_pure<T: Real, R: Rng + ?Sized>(
    code: &QuantumCode<T>,
    state: &StateVector<T>,
    rng: &mut R,
) -> Result<PureCorrection<T>> {
    let table = recovery_of(code)?;
    if state.n_qubits() != code.n {
        return Err(Error::DimensionMismatch {
            expected: 1 << code.n,
            found: state.dim(),
        });
    }
    let coords: Vec<Vec<C<T>>> = table
        .classes
        .iter()
        .map(|c| c.coordinates(state.amplitudes()))
        .collect();
    let probs: Vec<T> = coords
        .iter()
        .map(|v| v.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()))
        .collect();
    let covered = probs.iter().fold(T::zero(), |acc, p| acc + *p);
    let residual = (T::one() - covered).max(T::zero());
    if residual.as_f64() > RESIDUAL_TOL {
        return Err(Error::Uncorrectable {
            residual: residual.as_f64(),
        });
    }
    let u = T::lit(rng.random::<f64>()) * covered;
    let mut acc = T::zero();
    let mut syndrome = probs.len() - 1;
    for (i, p) in probs.iter().enumerate() {
        acc += *p;
        if u < acc {
            syndrome = i;
            break;
        }
    }
    let class = &table.classes[syndrome];
    let dim = 1usize << code.n;
    let mut projected = vec![C::zero(); dim];
    for (coef, v) in coords[syndrome].iter().zip(&class.image) {
        for (slot, a) in projected.iter_mut().zip(v.amplitudes()) {
            *slot += coef * a;
        }
    }
    let projected = StateVector::from_raw(code.n, projected)?;
    Ok(PureCorrection {
        state: projected.apply_pauli(&class.representative)?,
        syndrome,
        probability: probs[syndrome],
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct DensityCorrection<T: Real> {
    pub state: DensityOperator<T>,
    pub class_probabilities: Vec<T>,
    /// Weight outside every syndrome subspace.
    pub residual: T,
}

/// Averages the corrected state over all syndrome outcomes.
pub fn correct_density<T: Real>(
    code: &QuantumCode<T>,
    rho: &DensityOperator<T>,
) -> Result<DensityCorrection<T>> {
    let table = recovery_of(code)?;
    if rho.n_qubits() != code.n {
        return Err(Error::DimensionMismatch {
            expected: 1 << code.n,
            found: rho.dim(),
        });
    }
    let m = code.codewords.len();
    let dim = rho.dim();
    // every corrected branch lies in the code space, so the branches are
    // summed as m×m blocks in the codeword basis
    let mut logical = CMatrix::zeros(m, m);
    let mut probs = Vec::with_capacity(table.classes.len());
    for class in &table.classes {
        // V†ρV in the basis A|C_a⟩; the representative maps A|C_a⟩ back to |C_a⟩
        let rho_v: Vec<Vec<C<T>>> = class
            .image
            .iter()
            .map(|v| (rho.matrix() * v.vector()).iter().copied().collect())
            .collect();
        let block = CMatrix::from_fn(m, m, |a, b| {
            linalg::inner(class.image[a].amplitudes(), &rho_v[b])
        });
        probs.push((0..m).fold(T::zero(), |acc, a| acc + block[(a, a)].re));
        logical += block;
    }
    let mut out = CMatrix::zeros(dim, dim);
    for a in 0..m {
        for b in 0..m {
            out += linalg::outer(code.codewords[a].vector(), code.codewords[b].vector())
                * logical[(a, b)];
        }
    }
    let covered = probs.iter().fold(T::zero(), |acc, p| acc + *p);
    let residual = (rho.trace() - covered).max(T::zero());
    if residual.as_f64() > RESIDUAL_TOL {
        return Err(Error::Uncorrectable {
            residual: residual.as_f64(),
        });
    }
    Ok(DensityCorrection {
        state: DensityOperator::from_matrix_unchecked(code.n, out),
        class_probabilities: probs,
        residual,
    })
}

// ---------------------------------------------------------------------------
// Channel experiments
// ---------------------------------------------------------------------------

/// Applies `channel` independently to every qubit.
pub fn apply_to_all<T: Real>(
    rho: &DensityOperator<T>,
    channel: &QubitChannel<T>,
) -> Result<DensityOperator<T>> {
    (0..rho.n_qubits()).try_fold(rho.clone(), |acc, q| channel.apply_to_qubit(&acc, q))
}

/// Exact fidelity of encode → independent noise → correction.
pub fn corrected_fidelity<T: Real>(
    code: &QuantumCode<T>,
    logical: &StateVector<T>,
    channel: &QubitChannel<T>,
) -> Result<T> {
    let encoded = code.encode_state(logical)?;
    let noisy = apply_to_all(&encoded.to_density(), channel)?;
    correct_density(code, &noisy)?.state.fidelity(&encoded)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MonteCarloSummary {
    pub trials: usize,
    pub mean_fidelity: f64,
    pub standard_error: f64,
}

/// Random stream for trial `index` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Quantum-trajectory estimate of [`corrected_fidelity`]: each trial samples
/// one Kraus operator per qubit and one syndrome. Trials run in parallel on
/// independent streams, so the result does not depend on the thread count.
pub fn monte_carlo_fidelity(
    code: &QuantumCode<f64>,
    logical: &StateVector<f64>,
    channel: &QubitChannel<f64>,
    trials: usize,
    seed: u64,
) -> Result<MonteCarloSummary> {
    if trials == 0 {
        return Err(Error::InvalidArgument("need at least one trial".into()));
    }
    let encoded = code.encode_state(logical)?;
    let fidelities = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(seed, i as u64);
            let mut psi = encoded.clone();
            for q in 0..code.n {
                psi = sample_kraus(&psi, q, channel, &mut rng)?;
            }
            let out = correct_pure(code, &psi, &mut rng)?;
            out.state.overlap(&encoded)
        })
        .collect::<Result<Vec<f64>>>()?;
    let n = trials as f64;
    let mean = fidelities.iter().sum::<f64>() / n;
    let var = fidelities
        .iter()
        .map(|f| (f - mean) * (f - mean))
        .sum::<f64>()
        / (n - 1.0).max(1.0);
    Ok(MonteCarloSummary {
        trials,
        mean_fidelity: mean,
        standard_error: (var / n).sqrt(),
    })
}

fn sample_kraus<R: Rng + ?Sized>(
    psi: &StateVector<f64>,
    qubit: usize,
    channel: &QubitChannel<f64>,
    rng: &mut R,
) -> Result<StateVector<f64>> {
    let branches: Vec<Vec<C<f64>>> = channel
        .kraus_ops
        .iter()
        .map(|k| {
            let mut v = psi.amplitudes().to_vec();
            linalg::apply_local_vec(&mut v, psi.n_qubits(), qubit, k);
            v
        })
        .collect();
    let weights: Vec<f64> = branches
        .iter()
        .map(|v| v.iter().map(|z| z.norm_sqr()).sum())
        .collect();
    let total: f64 = weights.iter().sum();
    let u = rng.random::<f64>() * total;
    let mut acc = 0.0;
    let mut pick = weights.iter().rposition(|w| *w > 0.0).unwrap_or(0);
    for (i, w) in weights.iter().enumerate() {
        acc += w;
        if u < acc {
            pick = i;
            break;
        }
    }
    StateVector::from_raw(psi.n_qubits(), branches[pick].clone())
}

/// Row of the error-correction benefit table.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QecBenefitRow<T: Real> {
    pub t: T,
    /// Smallest corrected fidelity over the logical test states.
    pub f_ec: T,
    /// `e^{−4γt}(5 − 4e^{−γt})`
    pub bound: T,
    /// `e^{−γt}`
    pub f_exp: T,
}

impl<T: Real> QecBenefitRow<T> {
    pub fn advantage(&self) -> T {
        self.f_ec - self.f_exp
    }
}

/// Probability that at most one of five qubits has decayed.
pub fn five_qubit_bound<T: Real>(gamma_t: T) -> T {
    let e = (-gamma_t).exp();
    e.powi(4) * (T::lit(5.0) - T::lit(4.0) * e)
}

/// `|0⟩, |1⟩, |+⟩, |+i⟩` and a fixed unbalanced superposition.
pub fn logical_test_states<T: Real>() -> Vec<StateVector<T>> {
    let c = clit::<T>;
    [
        (c(1.0, 0.0), c(0.0, 0.0)),
        (c(0.0, 0.0), c(1.0, 0.0)),
        (c(1.0, 0.0), c(1.0, 0.0)),
        (c(1.0, 0.0), c(0.0, 1.0)),
        (c(0.6, 0.0), c(0.48, 0.64)),
    ]
    .into_iter()
    .map(|(a, b)| StateVector::from_raw(1, vec![a, b]).expect("non-zero"))
    .collect()
}

/// Corrected fidelity for each channel in `channels`, compared with the
/// closed-form bound and the bare single-qubit decay at rate `gamma`.
pub fn qec_benefit<T: Real>(
    code: &QuantumCode<T>,
    channels: &[QubitChannel<T>],
    gamma: T,
    logical: &[StateVector<T>],
) -> Result<Vec<QecBenefitRow<T>>> {
    if logical.is_empty() {
        return Err(Error::InvalidArgument("no logical test states".into()));
    }
    let slack = T::lit(1e-9);
    channels
        .iter()
        .map(|ch| {
            let f_ec = logical
                .iter()
                .map(|psi| corrected_fidelity(code, psi, ch))
                .try_fold(T::infinity(), |m, f| f.map(|f| m.min(f)))?;
            let gt = gamma * ch.time;
            let row = QecBenefitRow {
                t: ch.time,
                f_ec,
                bound: five_qubit_bound(gt),
                f_exp: (-gt).exp(),
            };
            if row.f_ec < row.bound - slack {
                return Err(Error::BoundViolated {
                    t: row.t.as_f64(),
                    fidelity: row.f_ec.as_f64(),
                    bound: row.bound.as_f64(),
                });
            }
            Ok(row)
        })
        .collect()
}

/// Closed-form decay channels `c_i = e^{−γt/2}` at the given times.
pub fn exponential_channels<T: Real>(gamma: T, times: &[T]) -> Vec<QubitChannel<T>> {
    times
        .iter()
        .map(|&t| QubitChannel::exponential_decay(gamma, t))
        .collect()
}

// ---------------------------------------------------------------------------
// Codeword files
// ---------------------------------------------------------------------------

/// Codewords as signed computational basis terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodewordFile {
    pub n: usize,
    pub l: usize,
    pub t: usize,
    /// `(negative, bits)` per term, one list per codeword.
    pub words: Vec<Vec<(bool, String)>>,
}

fn parse_term(line: &str, n: usize) -> std::result::Result<(bool, String), String> {
    let (neg, bits) = match line.as_bytes().first() {
        Some(b'+') => (false, &line[1..]),
        Some(b'-') => (true, &line[1..]),
        _ => return Err(format!("term '{line}' must start with '+' or '-'")),
    };
    if bits.len() != n || !bits.bytes().all(|b| b == b'0' || b == b'1') {
        return Err(format!("term '{line}' must have {n} binary digits"));
    }
    Ok((neg, bits.to_string()))
}

fn state_from_terms<T: Real>(
    n: usize,
    terms: &[(bool, String)],
) -> std::result::Result<StateVector<T>, String> {
    let mut amps = vec![C::zero(); 1 << n];
    let mut seen = BTreeSet::new();
    for (neg, bits) in terms {
        if !seen.insert(bits.as_str()) {
            return Err(format!("basis state {bits} repeated"));
        }
        let idx = usize::from_str_radix(bits, 2).expect("validated");
        amps[idx] = if *neg { -C::<T>::one() } else { C::one() };
    }
    StateVector::from_raw(n, amps).map_err(|e| e.to_string())
}

impl FromStr for CodewordFile {
    type Err = Error;

    /// Header `n l t`, then one `C<k>` line per codeword followed by its
    /// `±bits` terms. Blank lines and `#` comments are ignored.
    fn from_str(text: &str) -> Result<Self> {
        let err = |line: usize, msg: String| Error::CodewordFile { line, msg };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hl, header) = lines
            .next()
            .ok_or_else(|| err(0, "missing header 'n l t'".into()))?;
        let nums = header
            .split_whitespace()
            .map(|f| f.parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| err(hl, format!("bad header: {e}")))?;
        let [n, l, t] = nums[..] else {
            return Err(err(
                hl,
                format!("header needs three integers, found {}", nums.len()),
            ));
        };
        if n == 0 || n > crate::state::MAX_QUBITS || l == 0 || l > n {
            return Err(err(hl, format!("unsupported parameters n={n}, l={l}")));
        }
        let mut words: Vec<Vec<(bool, String)>> = Vec::new();
        for (ln, line) in lines {
            if let Some(idx) = line.strip_prefix('C') {
                let k: usize = idx
                    .parse()
                    .map_err(|_| err(ln, format!("bad codeword label '{line}'")))?;
                if k != words.len() {
                    return Err(err(ln, format!("expected C{}, found C{k}", words.len())));
                }
                words.push(Vec::new());
            } else {
                let current = words
                    .last_mut()
                    .ok_or_else(|| err(ln, "term before first C0 label".into()))?;
                current.push(parse_term(line, n).map_err(|m| err(ln, m))?);
            }
        }
        if words.len() != 1 << l {
            return Err(err(
                0,
                format!("expected {} codewords, found {}", 1 << l, words.len()),
            ));
        }
        if let Some(k) = words.iter().position(Vec::is_empty) {
            return Err(err(0, format!("codeword C{k} has no terms")));
        }
        Ok(Self { n, l, t, words })
    }
}

impl fmt::Display for CodewordFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {} {}", self.n, self.l, self.t)?;
        for (k, word) in self.words.iter().enumerate() {
            writeln!(f, "C{k}")?;
            for (neg, bits) in word {
                writeln!(f, "{}{bits}", if *neg { '-' } else { '+' })?;
            }
        }
        Ok(())
    }
}

impl CodewordFile {
    /// Builds a code with every Pauli error of weight at most `t`, attaching
    /// a recovery table when the conditions hold.
    pub fn to_code<T: Real>(&self, name: &str) -> Result<QuantumCode<T>> {
        let words = self
            .words
            .iter()
            .enumerate()
            .map(|(k, terms)| {
                state_from_terms(self.n, terms).map_err(|msg| Error::CodewordFile {
                    line: 0,
                    msg: format!("C{k}: {msg}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let code = QuantumCode::new(
            name,
            self.l,
            self.t,
            words,
            error_set(self.n, self.t, ErrorKinds::All),
        )?;
        match build_recovery(&code) {
            Ok(table) => Ok(QuantumCode {
                recovery: Some(table),
                ..code
            }),
            Err(Error::ConditionsNotSatisfied) | Err(Error::PartialOverlap(..)) => Ok(code),
            Err(e) => Err(e),
        }
    }
}
