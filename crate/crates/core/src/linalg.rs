// Copyright 2026 The qnoise Authors
// SPDX-License-Identifier: Apache-2.0

//! Dense complex matrix helpers on top of `nalgebra` storage.

use nalgebra::{DMatrix, DVector, Matrix2};
use num_complex::Complex;
use num_traits::{One, Zero};

use crate::scalar::{Real, C};

pub type CMatrix<T> = DMatrix<C<T>>;
pub type CVector<T> = DVector<C<T>>;
pub type Mat2<T> = Matrix2<C<T>>;

/// Bit mask of `qubit` in an `n`-qubit register (qubit 0 is the most
/// significant bit).
#[inline]
pub fn qubit_mask(n: usize, qubit: usize) -> usize {
    1 << (n - 1 - qubit)
}

pub fn trace<T: Real>(m: &CMatrix<T>) -> C<T> {
    (0..m.nrows().min(m.ncols())).fold(C::zero(), |acc, i| acc + m[(i, i)])
}

pub fn identity<T: Real>(dim: usize) -> CMatrix<T> {
    CMatrix::from_fn(dim, dim, |i, j| if i == j { C::one() } else { C::zero() })
}

pub fn kron<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>) -> CMatrix<T> {
    a.kronecker(b)
}

/// `|ψ⟩⟨φ|`
pub fn outer<T: Real>(psi: &CVector<T>, phi: &CVector<T>) -> CMatrix<T> {
    CMatrix::from_fn(psi.len(), phi.len(), |i, j| psi[i] * phi[j].conj())
}

/// `⟨a|b⟩`
pub fn inner<T: Real>(a: &[C<T>], b: &[C<T>]) -> C<T> {
    a.iter()
        .zip(b)
        .fold(C::zero(), |acc, (x, y)| acc + x.conj() * y)
}

/// Largest elementwise modulus of `a − b`.
pub fn max_abs_diff<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>) -> T {
    a.iter()
        .zip(b.iter())
        .fold(T::zero(), |acc, (x, y)| acc.max((*x - *y).norm()))
}

pub fn hermiticity_error<T: Real>(m: &CMatrix<T>) -> T {
    let mut worst = T::zero();
    for i in 0..m.nrows() {
        for j in i..m.ncols() {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Eigenvalues of a Hermitian matrix, ascending, computed in `f64`.
pub fn hermitian_eigenvalues<T: Real>(m: &CMatrix<T>) -> Vec<f64> {
    let m64: DMatrix<Complex<f64>> = m.map(|z| Complex::new(z.re.as_f64(), z.im.as_f64()));
    let mut ev: Vec<f64> = m64.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|a, b| a.total_cmp(b));
    ev
}

/// Largest absolute eigenvalue of a Hermitian matrix.
pub fn hermitian_operator_norm<T: Real>(m: &CMatrix<T>) -> f64 {
    hermitian_eigenvalues(m)
        .into_iter()
        .fold(0.0, |acc, x| acc.max(x.abs()))
}

pub fn mat2<T: Real>(a: C<T>, b: C<T>, c: C<T>, d: C<T>) -> Mat2<T> {
    Mat2::new(a, b, c, d)
}

/// `K ⊗ I` style embedding: left-multiplies `m` by `k` acting on `qubit`.
pub fn left_local<T: Real>(m: &mut CMatrix<T>, n: usize, qubit: usize, k: &Mat2<T>) {
    let mask = qubit_mask(n, qubit);
    let cols = m.ncols();
    for r0 in (0..m.nrows()).filter(|r| r & mask == 0) {
        let r1 = r0 | mask;
        for col in 0..cols {
            let a = m[(r0, col)];
            let b = m[(r1, col)];
            m[(r0, col)] = k[(0, 0)] * a + k[(0, 1)] * b;
            m[(r1, col)] = k[(1, 0)] * a + k[(1, 1)] * b;
        }
    }
}

/// Right-multiplies `m` by `k†` acting on `qubit`.
pub fn right_local_dagger<T: Real>(m: &mut CMatrix<T>, n: usize, qubit: usize, k: &Mat2<T>) {
    let mask = qubit_mask(n, qubit);
    let rows = m.nrows();
    for c0 in (0..m.ncols()).filter(|c| c & mask == 0) {
        let c1 = c0 | mask;
        for row in 0..rows {
            let a = m[(row, c0)];
            let b = m[(row, c1)];
            m[(row, c0)] = a * k[(0, 0)].conj() + b * k[(0, 1)].conj();
            m[(row, c1)] = a * k[(1, 0)].conj() + b * k[(1, 1)].conj();
        }
    }
}

/// `K_q ρ K_q†` for a single-qubit operator on `qubit`.
pub fn conjugate_local<T: Real>(
    rho: &CMatrix<T>,
    n: usize,
    qubit: usize,
    k: &Mat2<T>,
) -> CMatrix<T> {
    let mut out = rho.clone();
    left_local(&mut out, n, qubit, k);
    right_local_dagger(&mut out, n, qubit, k);
    out
}

/// Applies a single-qubit operator to a state vector in place.
pub fn apply_local_vec<T: Real>(v: &mut [C<T>], n: usize, qubit: usize, k: &Mat2<T>) {
    let mask = qubit_mask(n, qubit);
    for i0 in (0..v.len()).filter(|i| i & mask == 0) {
        let i1 = i0 | mask;
        let a = v[i0];
        let b = v[i1];
        v[i0] = k[(0, 0)] * a + k[(0, 1)] * b;
        v[i1] = k[(1, 0)] * a + k[(1, 1)] * b;
    }
}
