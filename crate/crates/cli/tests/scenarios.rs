// Copyright 2026 The qnoise Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;

use qnoise_cli::scenarios;
use qnoise_cli::{Cell, CliError, ExperimentConfig, Format, Parameters, Scenario, Table};

fn config(scenario: Scenario, parameters: Parameters) -> ExperimentConfig {
    ExperimentConfig {
        scenario,
        parameters,
        output_path: PathBuf::from("unused"),
        format: Format::Csv,
    }
}

fn float(cell: &Cell) -> f64 {
    match cell {
        Cell::Float(x) => *x,
        Cell::Int(n) => *n as f64,
        other => panic!("not numeric: {other:?}"),
    }
}

fn column(table: &Table, name: &str) -> Vec<f64> {
    let idx = table.columns.iter().position(|c| *c == name).unwrap();
    table.rows.iter().map(|r| float(&r[idx])).collect()
}

#[test]
fn decay_rows_start_at_one_and_follow_short_time_expansion() {
    let p = Parameters {
        t_max: Some(2e-3),
        steps: Some(20),
        ..Parameters::default()
    };
    let table = scenarios::run_decay(&config(Scenario::Decay, p)).unwrap();
    for name in ["F_numeric", "F_par", "F_exp"] {
        assert_eq!(column(&table, name)[0], 1.0);
    }
    let sum_sq = float(table.summary_value("sum_lambda_sq").unwrap());
    // 1 − |c_i|² = t²Σλ² + O(t⁴), so F_numeric − F_par approaches t²Σλ²
    let (t, f, par) = (
        column(&table, "t"),
        column(&table, "F_numeric"),
        column(&table, "F_par"),
    );
    for k in 1..4 {
        let ratio = (f[k] - par[k]) / (t[k] * t[k]);
        assert!(
            (ratio / sum_sq - 1.0).abs() < 1e-3,
            "ratio {ratio} vs {sum_sq}"
        );
    }
}

#[test]
fn qec_rows() {
    let p = Parameters {
        t_max: Some(0.3),
        steps: Some(6),
        ..Parameters::default()
    };
    let table = scenarios::run_qec_benefit(&config(Scenario::QecBenefit, p)).unwrap();
    let (t, f_ec, bound, f_exp) = (
        column(&table, "t"),
        column(&table, "F_ec"),
        column(&table, "bound"),
        column(&table, "F_exp_single"),
    );
    assert!((t[1] - 0.05).abs() < 1e-15);
    assert!(f_ec[1] > f_exp[1]);
    for k in 0..t.len() {
        let e = (-t[k]).exp();
        assert!((bound[k] - e.powi(4) * (5.0 - 4.0 * e)).abs() <= 1e-12);
        assert!(f_ec[k] >= bound[k] - 1e-9);
    }
    for v in [f_ec[0], bound[0], f_exp[0]] {
        assert!((v - 1.0).abs() < 1e-12);
    }
}

#[test]
fn symmetrize_rows() {
    let p = Parameters {
        seed: Some(9),
        copies: Some(8),
        ..Parameters::default()
    };
    let table = scenarios::run_symmetrize(&config(Scenario::Symmetrize, p)).unwrap();
    let before = column(&table, "F_before");
    let exact = column(&table, "F_after_exact");
    let predicted = column(&table, "F_after_predicted");
    assert!((exact[0] - before[0]).abs() < 1e-12);
    for (r, half) in [(1, 2), (2, 4), (4, 8)] {
        let ratio = (1.0 - predicted[half - 1]) / (1.0 - predicted[r - 1]);
        assert!((ratio - 0.5).abs() < 1e-12);
    }
    assert!(column(&table, "success_prob")
        .iter()
        .all(|s| *s > 0.0 && *s <= 1.0 + 1e-12));
}

#[test]
fn zeno_rows_are_monotone() {
    let table = scenarios::run_zeno(&config(
        Scenario::Zeno,
        Parameters {
            k: Some(0.8),
            ..Parameters::default()
        },
    ))
    .unwrap();
    let s = column(&table, "cumulative_success");
    assert!(s.windows(2).all(|w| w[1] >= w[0]));
    assert_eq!(table.summary_value("monotone"), Some(&Cell::Bool(true)));
}

#[test]
fn zeno_with_k_above_one_is_a_config_error() {
    let err = scenarios::run_zeno(&config(
        Scenario::Zeno,
        Parameters {
            k: Some(3.0),
            ..Parameters::default()
        },
    ));
    assert!(matches!(err, Err(CliError::Config(_))));
}

#[test]
fn bounds_summary() {
    let table = scenarios::run_bounds(&config(Scenario::Bounds, Parameters::default())).unwrap();
    assert_eq!(table.summary_value("hamming_min_n"), Some(&Cell::Int(5)));
    assert_eq!(table.summary_value("gv_max_n"), Some(&Cell::Int(9)));
    assert!((float(table.summary_value("hamming_rate_root").unwrap()) - 0.18929).abs() < 1e-4);
}

fn verify_flags(code: &str) -> Vec<(String, bool)> {
    let p = Parameters {
        code: Some(code.into()),
        ..Parameters::default()
    };
    let table = scenarios::run_verify(&config(Scenario::VerifyCode, p)).unwrap();
    table
        .rows
        .iter()
        .map(|r| match (&r[0], &r[2]) {
            (Cell::Text(name), Cell::Bool(pass)) => (name.clone(), *pass),
            other => panic!("unexpected row {other:?}"),
        })
        .collect()
}

#[test]
fn verify_flags_for_builtin_codes() {
    let five = verify_flags("five");
    assert!(five.iter().all(|(_, pass)| *pass));
    let shor = verify_flags("shor9");
    assert!(shor.contains(&("general_conditions".into(), true)));
    assert!(shor.contains(&("nondegenerate_conditions".into(), false)));
    let printed = verify_flags("five-printed");
    assert!(printed.contains(&("general_conditions".into(), false)));
}
