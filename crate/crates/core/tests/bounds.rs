// Copyright 2026 The qnoise Authors
// SPDX-License-Identifier: Apache-2.0

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use proptest::prelude::*;
use qnoise_core::bounds;

fn binom(n: u64, k: u64) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * u128::from(n - i) / u128::from(i + 1))
}

proptest! {
    #[test]
    fn error_count_matches_machine_integers(n in 0usize..40, w in 0usize..6) {
        let oracle: u128 = (0..=w.min(n) as u64).map(|i| 3u128.pow(i as u32) * binom(n as u64, i)).sum();
        prop_assert_eq!(bounds::error_count(n, w), BigUint::from(oracle));
    }

    #[test]
    fn hamming_min_is_first_feasible(l in 1usize..6, t in 0usize..3) {
        let n = bounds::hamming_min_n(l, t).unwrap();
        prop_assert!(bounds::hamming_feasible(l, t, n).unwrap());
        if n > l {
            prop_assert!(!bounds::hamming_feasible(l, t, n - 1).unwrap());
        }
    }

    #[test]
    fn repetition_float_tracks_exact(num in 0i64..=1000) {
        let p = BigRational::new(BigInt::from(num), BigInt::from(1000));
        let exact = bounds::repetition_error_exact(&p).unwrap();
        let approx = bounds::repetition_error(num as f64 / 1000.0).unwrap();
        let exact_f = exact.numer().to_string().parse::<f64>().unwrap()
            / exact.denom().to_string().parse::<f64>().unwrap();
        prop_assert!((approx - exact_f).abs() < 1e-15);
    }
}

#[test]
fn gv_crossing_is_last_feasible() {
    for (l, t) in [(1, 1), (1, 2), (3, 1)] {
        let n = bounds::gv_max_n(l, t).unwrap();
        assert!(bounds::gv_feasible(l, t, n).unwrap());
        assert!((n + 1..=64).all(|m| !bounds::gv_feasible(l, t, m).unwrap()));
    }
}

#[test]
fn rate_curves_are_ordered() {
    for i in 1..50 {
        let x = i as f64 * 0.005;
        assert!(bounds::gv_rate(x).unwrap() <= bounds::hamming_rate(x).unwrap());
    }
}
