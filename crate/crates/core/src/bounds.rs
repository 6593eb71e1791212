// Copyright 2026 The qnoise Authors
// SPDX-License-Identifier: Apache-2.0

//! Counting bounds on qubit codes and the classical repetition baseline.
//!
//! Finite-length checks use exact integers; asymptotic rates use `f64`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Largest block length examined by [`gv_max_n`].
pub const GV_SCAN_LIMIT: usize = 64;
/// Largest block length examined by [`hamming_min_n`].
pub const HAMMING_SCAN_LIMIT: usize = 4096;
/// Bracket width at which [`hamming_rate_root`] stops.
pub const ROOT_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundQuery {
    pub l: usize,
    pub t: usize,
    pub n: Option<usize>,
}

impl BoundQuery {
    pub fn new(l: usize, t: usize, n: Option<usize>) -> Result<Self> {
        let q = Self { l, t, n };
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<()> {
        if self.l == 0 {
            return Err(Error::InvalidQuery("l must be at least 1".into()));
        }
        if let Some(n) = self.n {
            if n < self.l {
                return Err(Error::InvalidQuery(format!(
                    "n = {n} is smaller than l = {}",
                    self.l
                )));
            }
        }
        Ok(())
    }
}

/// `Σ_{i=0}^{w} 3^i·C(n,i)`, the number of Pauli errors of weight ≤ w.
pub fn error_count(n: usize, w: usize) -> BigUint {
    let mut total = BigUint::one();
    let mut binom = BigUint::one();
    let mut pow3 = BigUint::one();
    for i in 0..w.min(n) {
        binom = binom * (n - i) / (i + 1);
        pow3 *= 3u32;
        total += &binom * &pow3;
    }
    total
}

fn pow2(k: usize) -> BigUint {
    BigUint::one() << k
}

/// `2^l · Σ_{i≤t} 3^i C(n,i) ≤ 2^n`
pub fn hamming_feasible(l: usize, t: usize, n: usize) -> Result<bool> {
    BoundQuery::new(l, t, Some(n))?;
    Ok(pow2(l) * error_count(n, t) <= pow2(n))
}

/// Smallest `n` satisfying [`hamming_feasible`].
pub fn hamming_min_n(l: usize, t: usize) -> Result<usize> {
    BoundQuery::new(l, t, None)?;
    (l..=HAMMING_SCAN_LIMIT)
        .find(|&n| pow2(l) * error_count(n, t) <= pow2(n))
        .ok_or_else(|| Error::InvalidQuery(format!("no feasible n up to {HAMMING_SCAN_LIMIT}")))
}

/// `2^l · Σ_{i≤2t} 3^i C(n,i) ≥ 2^n`
pub fn gv_feasible(l: usize, t: usize, n: usize) -> Result<bool> {
    BoundQuery::new(l, t, Some(n))?;
    Ok(pow2(l) * error_count(n, 2 * t) >= pow2(n))
}

/// Largest `n ≤ 64` satisfying [`gv_feasible`], i.e. the last feasible
/// length before the final sign change of the inequality.
pub fn gv_max_n(l: usize, t: usize) -> Result<usize> {
    BoundQuery::new(l, t, None)?;
    if pow2(l) * error_count(GV_SCAN_LIMIT, 2 * t) >= pow2(GV_SCAN_LIMIT) {
        return Err(Error::InvalidQuery(format!(
            "inequality still holds at n = {GV_SCAN_LIMIT}; no crossing inside the scan range"
        )));
    }
    Ok((l..=GV_SCAN_LIMIT)
        .rev()
        .find(|&n| pow2(l) * error_count(n, 2 * t) >= pow2(n))
        .expect("n = l is always feasible"))
}

fn check_domain(x: f64, lo: f64, hi: f64) -> Result<()> {
    if !(lo..=hi).contains(&x) {
        return Err(Error::Domain { value: x, lo, hi });
    }
    Ok(())
}

/// Binary entropy in bits, with `H(0) = H(1) = 0`.
pub fn entropy(x: f64) -> Result<f64> {
    check_domain(x, 0.0, 1.0)?;
    let term = |p: f64| if p > 0.0 { -p * p.log2() } else { 0.0 };
    Ok(term(x) + term(1.0 - x))
}

/// `1 − x·log₂3 − H(x)` with `x = t/n`.
pub fn hamming_rate(x: f64) -> Result<f64> {
    Ok(1.0 - x * 3f64.log2() - entropy(x)?)
}

/// `1 − 2x·log₂3 − H(2x)` with `x = t/n`.
pub fn gv_rate(x: f64) -> Result<f64> {
    check_domain(x, 0.0, 0.5)?;
    hamming_rate(2.0 * x)
}

/// Zero of [`hamming_rate`] on `(0, 1/2)` by bisection.
pub fn hamming_rate_root() -> f64 {
    let f = |x: f64| hamming_rate(x).expect("inside [0, 1]");
    let (mut lo, mut hi) = (1e-3, 0.5);
    debug_assert!(f(lo) > 0.0 && f(hi) < 0.0);
    while hi - lo > ROOT_TOL {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Majority-vote failure of three independent bits: `3p² − 2p³`.
pub fn repetition_error(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    Ok(3.0 * p * p * (1.0 - p) + p * p * p)
}

/// [`repetition_error`] in exact rational arithmetic.
pub fn repetition_error_exact(p: &BigRational) -> Result<BigRational> {
    let one = BigRational::one();
    if *p < BigRational::zero() || *p > one {
        return Err(Error::InvalidArgument(format!(
            "probability {p} outside [0, 1]"
        )));
    }
    let three = BigRational::from_integer(BigInt::from(3));
    let two = BigRational::from_integer(BigInt::from(2));
    let p2 = p * p;
    Ok(&three * &p2 - two * &p2 * p)
}
