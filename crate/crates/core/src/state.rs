// Copyright 2026 The qnoise Authors
// SPDX-License-Identifier: Apache-2.0

//! Dense state-vector and density-operator substrate.
//!
//! Register ordering is fixed throughout the crate: qubit 0 is the most
//! significant bit of a basis-state index, so `|q0 q1 … q(n-1)⟩` reads left to
//! right exactly like a ket.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_complex::Complex;
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, CVector, Mat2};
use crate::scalar::{cr, Real, C};

/// Allowed deviation of `⟨ψ|ψ⟩` from one.
pub const NORM_TOL: f64 = 1e-12;
/// Allowed Hermiticity and trace error of a density operator.
pub const DENSITY_TOL: f64 = 1e-12;
/// Smallest eigenvalue accepted as non-negative.
pub const PSD_FLOOR: f64 = -1e-10;

/// Largest register the dense backend accepts.
pub const MAX_QUBITS: usize = 16;

// ---------------------------------------------------------------------------
// Pauli algebra
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ERRORS: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];

    pub fn matrix<T: Real>(self) -> Mat2<T> {
        let (o, l, i) = (C::zero(), C::one(), C::i());
        match self {
            Pauli::I => linalg::mat2(l, o, o, l),
            Pauli::X => linalg::mat2(o, l, l, o),
            Pauli::Y => linalg::mat2(o, -i, i, o),
            Pauli::Z => linalg::mat2(l, o, o, -l),
        }
    }

    fn flips(self) -> bool {
        matches!(self, Pauli::X | Pauli::Y)
    }

    fn phases(self) -> bool {
        matches!(self, Pauli::Y | Pauli::Z)
    }

    pub fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

impl TryFrom<char> for Pauli {
    type Error = Error;

    fn try_from(c: char) -> Result<Self> {
        match c.to_ascii_uppercase() {
            'I' => Ok(Pauli::I),
            'X' => Ok(Pauli::X),
            'Y' => Ok(Pauli::Y),
            'Z' => Ok(Pauli::Z),
            other => Err(Error::InvalidPauli(other)),
        }
    }
}

/// Tensor product of single-qubit Pauli operators, one label per qubit.
///
/// The matrices are the standard Hermitian ones, so every string is exactly
/// self-inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    labels: Vec<Pauli>,
}

impl PauliString {
    pub fn new(labels: Vec<Pauli>) -> Self {
        Self { labels }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            labels: vec![Pauli::I; n],
        }
    }

    /// `p` on `qubit`, identity elsewhere.
    pub fn single(n: usize, qubit: usize, p: Pauli) -> Self {
        let mut labels = vec![Pauli::I; n];
        labels[qubit] = p;
        Self { labels }
    }

    /// Builds a string from `(qubit, label)` pairs; later pairs overwrite
    /// earlier ones on the same qubit.
    pub fn from_sparse(n: usize, terms: &[(usize, Pauli)]) -> Self {
        let mut labels = vec![Pauli::I; n];
        for &(q, p) in terms {
            labels[q] = p;
        }
        Self { labels }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[Pauli] {
        &self.labels
    }

    pub fn weight(&self) -> usize {
        self.labels.iter().filter(|p| **p != Pauli::I).count()
    }

    pub fn is_identity(&self) -> bool {
        self.weight() == 0
    }

    /// Every string on `n` qubits with weight at most `t`, ordered by weight,
    /// then by support, then by label (`X < Y < Z`). The identity comes first.
    pub fn up_to_weight(n: usize, t: usize) -> Vec<PauliString> {
        let mut out = vec![Self::identity(n)];
        for w in 1..=t.min(n) {
            for support in (0..n).combinations(w) {
                for kinds in (0..w)
                    .map(|_| Pauli::ERRORS.iter().copied())
                    .multi_cartesian_product()
                {
                    let terms: Vec<_> = support.iter().copied().zip(kinds).collect();
                    out.push(Self::from_sparse(n, &terms));
                }
            }
        }
        out
    }

    /// Compact label such as `X0Z3`, or `I` for the identity.
    pub fn short(&self) -> String {
        if self.is_identity() {
            return "I".to_string();
        }
        self.labels
            .iter()
            .enumerate()
            .filter(|(_, p)| **p != Pauli::I)
            .map(|(q, p)| format!("{}{}", p.symbol(), q))
            .collect()
    }

    /// `(x_mask, z_mask, y_count)` in the register's bit convention.
    fn masks(&self) -> (usize, usize, usize) {
        let n = self.labels.len();
        let mut xm = 0;
        let mut zm = 0;
        let mut ny = 0;
        for (q, p) in self.labels.iter().enumerate() {
            let bit = linalg::qubit_mask(n, q);
            if p.flips() {
                xm |= bit;
            }
            if p.phases() {
                zm |= bit;
            }
            if *p == Pauli::Y {
                ny += 1;
            }
        }
        (xm, zm, ny)
    }

    /// Action on basis states: `P|x⟩ = phase(x)·|x ⊕ x_mask⟩`.
    fn basis_action<T: Real>(&self) -> impl Fn(usize) -> (C<T>, usize) {
        let (xm, zm, ny) = self.masks();
        let global = match ny % 4 {
            0 => C::one(),
            1 => C::i(),
            2 => -C::<T>::one(),
            _ => -C::<T>::i(),
        };
        move |x| {
            let sign = if (x & zm).count_ones() % 2 == 0 {
                global
            } else {
                -global
            };
            (sign, x ^ xm)
        }
    }

    pub(crate) fn apply_to_slice<T: Real>(&self, amps: &[C<T>]) -> Vec<C<T>> {
        let action = self.basis_action::<T>();
        let mut out = vec![C::zero(); amps.len()];
        for (x, a) in amps.iter().enumerate() {
            let (ph, y) = action(x);
            out[y] = ph * a;
        }
        out
    }

    /// `P ρ P†` by index permutation.
    pub(crate) fn conjugate<T: Real>(&self, rho: &CMatrix<T>) -> CMatrix<T> {
        let action = self.basis_action::<T>();
        let d = rho.nrows();
        let map: Vec<(C<T>, usize)> = (0..d).map(&action).collect();
        let mut out = CMatrix::zeros(d, d);
        for a in 0..d {
            let (pa, ya) = map[a];
            for b in 0..d {
                let (pb, yb) = map[b];
                out[(ya, yb)] = pa * rho[(a, b)] * pb.conj();
            }
        }
        out
    }

    /// Dense `2^n × 2^n` matrix.
    pub fn matrix<T: Real>(&self) -> CMatrix<T> {
        let action = self.basis_action::<T>();
        let d = 1usize << self.labels.len();
        let mut m = CMatrix::zeros(d, d);
        for x in 0..d {
            let (ph, y) = action(x);
            m[(y, x)] = ph;
        }
        m
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.labels {
            write!(f, "{}", p.symbol())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let labels = s.chars().map(Pauli::try_from).collect::<Result<Vec<_>>>()?;
        Ok(Self { labels })
    }
}

/// Hadamard gate.
pub fn hadamard<T: Real>() -> Mat2<T> {
    let h = cr(T::FRAC_1_SQRT_2());
    linalg::mat2(h, h, h, -h)
}

fn check_register(n_qubits: usize) -> Result<usize> {
    if n_qubits == 0 || n_qubits > MAX_QUBITS {
        return Err(Error::InvalidQubitSet {
            indices: vec![],
            n_qubits,
        });
    }
    Ok(1 << n_qubits)
}

// ---------------------------------------------------------------------------
// State vectors
// ---------------------------------------------------------------------------

/// Unit-norm pure state of an `n`-qubit register.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector<T: Real> {
    n_qubits: usize,
    amps: CVector<T>,
}

impl<T: Real> StateVector<T> {
    /// Wraps amplitudes that must already be normalised.
    pub fn new(n_qubits: usize, amps: Vec<C<T>>) -> Result<Self> {
        let dim = check_register(n_qubits)?;
        if amps.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: amps.len(),
            });
        }
        let s = Self {
            n_qubits,
            amps: CVector::from_vec(amps),
        };
        let ns = s.norm_sqr();
        if (ns - T::one()).abs() > T::tol(NORM_TOL) {
            return Err(Error::NotNormalized {
                norm_sqr: ns.as_f64(),
            });
        }
        Ok(s)
    }

    /// Accepts arbitrary non-zero amplitudes and normalises them.
    pub fn from_raw(n_qubits: usize, amps: Vec<C<T>>) -> Result<Self> {
        let dim = check_register(n_qubits)?;
        if amps.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: amps.len(),
            });
        }
        let mut amps = CVector::from_vec(amps);
        let ns = amps.iter().fold(T::zero(), |acc, a| acc + a.norm_sqr());
        if ns <= T::min_positive_value() {
            return Err(Error::ZeroNorm);
        }
        let inv = cr(T::one() / ns.sqrt());
        amps.iter_mut().for_each(|a| *a *= inv);
        Ok(Self { n_qubits, amps })
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        let dim = check_register(n_qubits)?;
        if index >= dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: index + 1,
            });
        }
        let mut amps = CVector::zeros(dim);
        amps[index] = C::one();
        Ok(Self { n_qubits, amps })
    }

    /// Basis state from a bitstring such as `"0110"`.
    pub fn from_bits(bits: &str) -> Result<Self> {
        let n = bits.len();
        let index = usize::from_str_radix(bits, 2).map_err(|_| Error::InvalidQubitSet {
            indices: vec![],
            n_qubits: n,
        })?;
        Self::basis(n, index)
    }

    /// Single qubit `α|0⟩ + β|1⟩`.
    pub fn qubit(alpha: C<T>, beta: C<T>) -> Result<Self> {
        Self::new(1, vec![alpha, beta])
    }

    /// Haar-random state: independent complex Gaussian amplitudes,
    /// normalised.
    pub fn random<R: Rng + ?Sized>(n_qubits: usize, rng: &mut R) -> Result<Self> {
        let dim = check_register(n_qubits)?;
        let mut gauss = || {
            let u: f64 = 1.0 - rng.random::<f64>();
            let v: f64 = rng.random::<f64>();
            let r = (-2.0 * u.ln()).sqrt();
            let th = std::f64::consts::TAU * v;
            C::new(T::lit(r * th.cos()), T::lit(r * th.sin()))
        };
        Self::from_raw(n_qubits, (0..dim).map(|_| gauss()).collect())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[C<T>] {
        self.amps.as_slice()
    }

    pub fn amplitude(&self, index: usize) -> C<T> {
        self.amps[index]
    }

    pub(crate) fn vector(&self) -> &CVector<T> {
        &self.amps
    }

    pub fn norm_sqr(&self) -> T {
        self.amps
            .iter()
            .fold(T::zero(), |acc, a| acc + a.norm_sqr())
    }

    fn check_same(&self, other_dim: usize) -> Result<()> {
        if self.dim() != other_dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other_dim,
            });
        }
        Ok(())
    }

    /// `⟨self|other⟩`
    pub fn inner(&self, other: &Self) -> Result<C<T>> {
        self.check_same(other.dim())?;
        Ok(linalg::inner(self.amplitudes(), other.amplitudes()))
    }

    /// `|⟨self|other⟩|²`
    pub fn overlap(&self, other: &Self) -> Result<T> {
        Ok(self.inner(other)?.norm_sqr())
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let mut amps = CVector::zeros(self.dim() * other.dim());
        for (i, a) in self.amps.iter().enumerate() {
            for (j, b) in other.amps.iter().enumerate() {
                amps[i * other.dim() + j] = a * b;
            }
        }
        Self {
            n_qubits: self.n_qubits + other.n_qubits,
            amps,
        }
    }

    pub fn apply_pauli(&self, p: &PauliString) -> Result<Self> {
        if p.len() != self.n_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.n_qubits,
                found: p.len(),
            });
        }
        let amps = p.apply_to_slice(self.amplitudes());
        Ok(Self {
            n_qubits: self.n_qubits,
            amps: CVector::from_vec(amps),
        })
    }

    /// Applies a single-qubit unitary to `qubit`.
    pub fn apply_local_unitary(&self, qubit: usize, u: &Mat2<T>) -> Result<Self> {
        if qubit >= self.n_qubits {
            return Err(Error::InvalidQubitSet {
                indices: vec![qubit],
                n_qubits: self.n_qubits,
            });
        }
        let udu = u.adjoint_generic() * u;
        let err = (udu - Mat2::identity())
            .iter()
            .fold(T::zero(), |m, z| m.max(z.norm()));
        if err > T::tol(1e-10) {
            return Err(Error::InvalidDensity(format!(
                "operator is not unitary (error {err})"
            )));
        }
        let mut amps = self.amps.clone();
        linalg::apply_local_vec(amps.as_mut_slice(), self.n_qubits, qubit, u);
        Ok(Self {
            n_qubits: self.n_qubits,
            amps,
        })
    }

    /// Hadamard on every qubit.
    pub fn hadamard_all(&self) -> Self {
        let h = hadamard::<T>();
        let mut amps = self.amps.clone();
        for q in 0..self.n_qubits {
            linalg::apply_local_vec(amps.as_mut_slice(), self.n_qubits, q, &h);
        }
        Self {
            n_qubits: self.n_qubits,
            amps,
        }
    }

    /// Relabels basis states, `|x⟩ → |perm[x]⟩`. `perm` must be a bijection.
    pub fn permute_basis(&self, perm: &[usize]) -> Result<Self> {
        self.check_same(perm.len())?;
        let mut seen = vec![false; perm.len()];
        let mut amps = CVector::zeros(self.dim());
        for (x, &y) in perm.iter().enumerate() {
            if y >= perm.len() || seen[y] {
                return Err(Error::InvalidQubitSet {
                    indices: perm.to_vec(),
                    n_qubits: self.n_qubits,
                });
            }
            seen[y] = true;
            amps[y] = self.amps[x];
        }
        Ok(Self {
            n_qubits: self.n_qubits,
            amps,
        })
    }

    /// `⟨ψ|P|ψ⟩`
    pub fn expectation(&self, p: &PauliString) -> Result<C<T>> {
        let image = self.apply_pauli(p)?;
        self.inner(&image)
    }

    pub fn to_density(&self) -> DensityOperator<T> {
        DensityOperator {
            n_qubits: self.n_qubits,
            matrix: linalg::outer(&self.amps, &self.amps),
        }
    }
}

trait AdjointGeneric<T: Real> {
    fn adjoint_generic(&self) -> Mat2<T>;
}

impl<T: Real> AdjointGeneric<T> for Mat2<T> {
    fn adjoint_generic(&self) -> Mat2<T> {
        self.transpose().map(|z| z.conj())
    }
}

// ---------------------------------------------------------------------------
// Density operators
// ---------------------------------------------------------------------------

/// Hermitian, positive semidefinite, unit-trace operator on `n` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityOperator<T: Real> {
    n_qubits: usize,
    matrix: CMatrix<T>,
}

impl<T: Real> DensityOperator<T> {
    /// Validates and wraps a `2^n × 2^n` matrix.
    pub fn new(n_qubits: usize, matrix: CMatrix<T>) -> Result<Self> {
        let dim = check_register(n_qubits)?;
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: matrix.nrows(),
            });
        }
        let rho = Self { n_qubits, matrix };
        rho.validate()?;
        Ok(rho)
    }

    pub(crate) fn from_matrix_unchecked(n_qubits: usize, matrix: CMatrix<T>) -> Self {
        debug_assert_eq!(matrix.nrows(), 1 << n_qubits);
        Self { n_qubits, matrix }
    }

    pub fn from_pure(psi: &StateVector<T>) -> Self {
        psi.to_density()
    }

    /// `I / 2^n`
    pub fn maximally_mixed(n_qubits: usize) -> Result<Self> {
        let dim = check_register(n_qubits)?;
        let w = cr(T::one() / T::lit(dim as f64));
        Ok(Self {
            n_qubits,
            matrix: linalg::identity(dim) * w,
        })
    }

    /// Diagonal operator with the given populations.
    pub fn diagonal(n_qubits: usize, populations: &[T]) -> Result<Self> {
        let dim = check_register(n_qubits)?;
        if populations.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: populations.len(),
            });
        }
        let diag = CVector::from_iterator(dim, populations.iter().map(|p| cr(*p)));
        Self::new(n_qubits, CMatrix::from_diagonal(&diag))
    }

    /// Checks Hermiticity, unit trace and the eigenvalue floor.
    pub fn validate(&self) -> Result<()> {
        let herm = linalg::hermiticity_error(&self.matrix);
        if herm > T::tol(DENSITY_TOL) {
            return Err(Error::InvalidDensity(format!(
                "not Hermitian (error {:e})",
                herm.as_f64()
            )));
        }
        let tr = self.trace();
        if (tr - T::one()).abs() > T::tol(DENSITY_TOL) {
            return Err(Error::InvalidDensity(format!("trace {tr} differs from 1")));
        }
        let floor = T::tol(-PSD_FLOOR).as_f64();
        if let Some(min) = self.eigenvalues().first() {
            if *min < -floor {
                return Err(Error::InvalidDensity(format!(
                    "negative eigenvalue {min:e}"
                )));
            }
        }
        Ok(())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix<T> {
        self.matrix
    }

    /// Real part of the trace.
    pub fn trace(&self) -> T {
        linalg::trace(&self.matrix).re
    }

    /// Ascending eigenvalues (computed in `f64`).
    pub fn eigenvalues(&self) -> Vec<f64> {
        linalg::hermitian_eigenvalues(&self.matrix)
    }

    /// `⟨ψ|ρ|ψ⟩`
    pub fn fidelity(&self, psi: &StateVector<T>) -> Result<T> {
        if psi.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: psi.dim(),
            });
        }
        let rho_psi = &self.matrix * psi.vector();
        let f = linalg::inner(psi.amplitudes(), rho_psi.as_slice());
        debug_assert!(
            f.im.abs() <= T::tol(1e-10),
            "fidelity has imaginary part {}",
            f.im
        );
        Ok(f.re)
    }

    /// `Tr ρ²`
    pub fn purity(&self) -> T {
        // Tr ρ² = Σ_ij |ρ_ij|² for Hermitian ρ
        self.matrix
            .iter()
            .fold(T::zero(), |acc, z| acc + z.norm_sqr())
    }

    /// Reduced operator on the qubits in `keep`, which are taken in ascending
    /// order regardless of the order given.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<Self> {
        let n = self.n_qubits;
        let kept: Vec<usize> = keep.iter().copied().sorted().dedup().collect();
        if kept.is_empty() || kept.len() != keep.len() || kept.iter().any(|&q| q >= n) {
            return Err(Error::InvalidQubitSet {
                indices: keep.to_vec(),
                n_qubits: n,
            });
        }
        let traced: Vec<usize> = (0..n).filter(|q| !kept.contains(q)).collect();
        let scatter = |qubits: &[usize], value: usize| -> usize {
            let k = qubits.len();
            qubits.iter().enumerate().fold(0, |acc, (j, &q)| {
                if value >> (k - 1 - j) & 1 == 1 {
                    acc | linalg::qubit_mask(n, q)
                } else {
                    acc
                }
            })
        };
        let kept_idx: Vec<usize> = (0..1 << kept.len()).map(|a| scatter(&kept, a)).collect();
        let env_idx: Vec<usize> = (0..1 << traced.len())
            .map(|e| scatter(&traced, e))
            .collect();
        let dk = kept_idx.len();
        let mut out = CMatrix::zeros(dk, dk);
        for a in 0..dk {
            for b in 0..dk {
                out[(a, b)] = env_idx.iter().fold(C::zero(), |acc, e| {
                    acc + self.matrix[(kept_idx[a] | e, kept_idx[b] | e)]
                });
            }
        }
        Ok(Self {
            n_qubits: kept.len(),
            matrix: out,
        })
    }

    pub fn tensor(&self, other: &Self) -> Self {
        Self {
            n_qubits: self.n_qubits + other.n_qubits,
            matrix: linalg::kron(&self.matrix, &other.matrix),
        }
    }

    /// `λρ + (1−λ)σ`
    pub fn mix(&self, other: &Self, lambda: T) -> Result<Self> {
        if other.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        if !(T::zero()..=T::one()).contains(&lambda) {
            return Err(Error::InvalidProbability(lambda.as_f64()));
        }
        let m = &self.matrix * cr(lambda) + &other.matrix * cr(T::one() - lambda);
        Ok(Self {
            n_qubits: self.n_qubits,
            matrix: m,
        })
    }

    /// `P ρ P`
    pub fn apply_pauli(&self, p: &PauliString) -> Result<Self> {
        if p.len() != self.n_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.n_qubits,
                found: p.len(),
            });
        }
        Ok(Self {
            n_qubits: self.n_qubits,
            matrix: p.conjugate(&self.matrix),
        })
    }

    /// `Σ_k K_k ρ K_k†` with every `K_k` acting on `qubit`.
    pub fn apply_local_kraus(&self, qubit: usize, kraus: &[Mat2<T>]) -> Result<Self> {
        if qubit >= self.n_qubits {
            return Err(Error::InvalidQubitSet {
                indices: vec![qubit],
                n_qubits: self.n_qubits,
            });
        }
        let d = self.dim();
        let matrix = kraus.iter().fold(CMatrix::zeros(d, d), |acc, k| {
            acc + linalg::conjugate_local(&self.matrix, self.n_qubits, qubit, k)
        });
        Ok(Self {
            n_qubits: self.n_qubits,
            matrix,
        })
    }

    /// Largest elementwise difference to `other`.
    pub fn distance(&self, other: &Self) -> T {
        linalg::max_abs_diff(&self.matrix, &other.matrix)
    }
}

// ---------------------------------------------------------------------------
// Free-function forms of the core operations
// ---------------------------------------------------------------------------

pub fn tensor_product<T: Real>(a: &StateVector<T>, b: &StateVector<T>) -> StateVector<T> {
    a.tensor(b)
}

pub fn apply_pauli<T: Real>(state: &StateVector<T>, p: &PauliString) -> Result<StateVector<T>> {
    state.apply_pauli(p)
}

pub fn fidelity<T: Real>(rho: &DensityOperator<T>, psi: &StateVector<T>) -> Result<T> {
    rho.fidelity(psi)
}

pub fn purity<T: Real>(rho: &DensityOperator<T>) -> T {
    rho.purity()
}

pub fn partial_trace<T: Real>(
    rho: &DensityOperator<T>,
    keep: &[usize],
) -> Result<DensityOperator<T>> {
    rho.partial_trace(keep)
}

pub fn expectation<T: Real>(psi: &StateVector<T>, p: &PauliString) -> Result<C<T>> {
    psi.expectation(p)
}

/// Convenience: complex scalar from real and imaginary parts.
pub fn amp<T: Real>(re: f64, im: f64) -> C<T> {
    Complex::new(T::lit(re), T::lit(im))
}
