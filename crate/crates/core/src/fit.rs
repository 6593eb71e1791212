// Copyright 2026 The qnoise Authors
// SPDX-License-Identifier: Apache-2.0

//! Least-squares fits used by the scaling studies.

use crate::error::{Error, Result};

/// `y ≈ coefficient · x^power`
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PowerFit {
    pub power: f64,
    pub coefficient: f64,
}

/// `y ≈ c / r` together with the worst relative residual.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InverseFit {
    pub c: f64,
    pub max_relative_residual: f64,
}

/// Ordinary least squares in log–log space.
pub fn power_law(xs: &[f64], ys: &[f64]) -> Result<PowerFit> {
    if xs.len() != ys.len() {
        return Err(Error::DimensionMismatch {
            expected: xs.len(),
            found: ys.len(),
        });
    }
    if xs.len() < 2 {
        return Err(Error::InvalidArgument(
            "a power-law fit needs at least two points".into(),
        ));
    }
    if let Some(bad) = xs.iter().chain(ys).find(|v| !(**v > 0.0)) {
        return Err(Error::InvalidArgument(format!(
            "power-law fit needs positive data, got {bad}"
        )));
    }
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidArgument(
            "power-law fit needs distinct abscissae".into(),
        ));
    }
    let power = sxy / sxx;
    Ok(PowerFit {
        power,
        coefficient: (my - power * mx).exp(),
    })
}

/// Least-squares `c` for `y = c/r`.
pub fn inverse_r(rs: &[f64], ys: &[f64]) -> Result<InverseFit> {
    if rs.len() != ys.len() {
        return Err(Error::DimensionMismatch {
            expected: rs.len(),
            found: ys.len(),
        });
    }
    if rs.is_empty() || rs.iter().any(|r| !(*r > 0.0)) {
        return Err(Error::InvalidArgument(
            "inverse fit needs positive abscissae".into(),
        ));
    }
    let num: f64 = rs.iter().zip(ys).map(|(r, y)| y / r).sum();
    let den: f64 = rs.iter().map(|r| 1.0 / (r * r)).sum();
    let c = num / den;
    let max_relative_residual = rs
        .iter()
        .zip(ys)
        .map(|(r, y)| ((y - c / r) / (c / r)).abs())
        .fold(0.0, f64::max);
    Ok(InverseFit {
        c,
        max_relative_residual,
    })
}
