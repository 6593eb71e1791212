// Copyright 2026 The qnoise Authors
// SPDX-License-Identifier: Apache-2.0

//! One function per scenario, each producing a [`Table`].

use qnoise_core::codes::{self, CodewordFile, QuantumCode};
use qnoise_core::noise::{self, EnvironmentSpec, IntegratorOptions};
use qnoise_core::symmetrize::{self, ZENO_GRID};
use qnoise_core::{bounds, SpectrumShape, StateVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::{ExperimentConfig, Scenario};
use crate::error::CliError;
use crate::table::Table;

pub const DEFAULT_OMEGA0_OVER_GAMMA: f64 = 50.0;
pub const DEFAULT_WINDOW_OVER_GAMMA: f64 = 20.0;
pub const DEFAULT_MODES: usize = 400;
pub const DEFAULT_DECAY_STEPS: usize = 300;
pub const DEFAULT_QEC_T_MAX: f64 = 0.3;
pub const DEFAULT_QEC_STEPS: usize = 49;
pub const DEFAULT_MAX_COPIES: usize = 8;
pub const DEFAULT_DEPHASING: f64 = 0.01;
pub const DEFAULT_BOUNDS_N_MAX: usize = 16;

pub fn run(cfg: &ExperimentConfig) -> Result<Table, CliError> {
    match cfg.scenario {
        Scenario::Decay => run_decay(cfg),
        Scenario::Symmetrize => run_symmetrize(cfg),
        Scenario::Zeno => run_zeno(cfg),
        Scenario::QecBenefit => run_qec_benefit(cfg),
        Scenario::Bounds => run_bounds(cfg),
        Scenario::VerifyCode => run_verify(cfg),
    }
}

fn uniform_times(t_max: f64, steps: usize) -> Vec<f64> {
    (0..=steps)
        .map(|i| t_max * i as f64 / steps as f64)
        .collect()
}

pub fn run_decay(cfg: &ExperimentConfig) -> Result<Table, CliError> {
    let p = &cfg.parameters;
    let gamma = p.gamma.unwrap_or(1.0);
    let window = p.window.unwrap_or(DEFAULT_WINDOW_OVER_GAMMA * gamma);
    let shape: SpectrumShape = p.shape.as_deref().unwrap_or("flat").parse()?;
    let spec = EnvironmentSpec::with_decay_rate(
        shape,
        p.omega0.unwrap_or(DEFAULT_OMEGA0_OVER_GAMMA * gamma),
        gamma,
        p.width.unwrap_or(window),
        window,
        p.modes.unwrap_or(DEFAULT_MODES),
    );
    let env = noise::discretize(&spec)?;
    let opts = IntegratorOptions {
        norm_limit: p.norm_limit.unwrap_or(noise::NORM_DRIFT_LIMIT),
        ..Default::default()
    };
    let t_max = p.t_max.unwrap_or(3.0 / gamma);
    let traj = noise::integrate_with(&env, t_max, p.steps.unwrap_or(DEFAULT_DECAY_STEPS), &opts)?;
    let curves = noise::fidelity_curves(&env, &traj.times);

    let mut table = Table::new(
        "decay",
        &["t", "re_ci", "im_ci", "F_numeric", "F_par", "F_exp"],
    );
    let mut worst_rel = 0.0f64;
    for (k, t) in traj.times.iter().enumerate() {
        let f = traj.survival(k);
        if env.gamma * t >= 0.2 && env.gamma * t <= 3.0 {
            worst_rel = worst_rel.max((f - curves.exponential[k]).abs() / curves.exponential[k]);
        }
        table.push(vec![
            (*t).into(),
            traj.c_i[k].re.into(),
            traj.c_i[k].im.into(),
            f.into(),
            curves.parabolic[k].into(),
            curves.exponential[k].into(),
        ]);
    }
    table.note("gamma", env.gamma);
    table.note("lamb_shift", env.delta);
    table.note("sum_lambda_sq", env.sum_lambda_sq);
    table.note("substeps", traj.substeps);
    table.note("max_norm_drift", traj.max_norm_drift());
    table.note("max_rel_dev_exponential", worst_rel);
    Ok(table)
}

pub fn run_qec_benefit(cfg: &ExperimentConfig) -> Result<Table, CliError> {
    let p = &cfg.parameters;
    let gamma = p.gamma.unwrap_or(1.0);
    let times = uniform_times(
        p.t_max.unwrap_or(DEFAULT_QEC_T_MAX / gamma),
        p.steps.unwrap_or(DEFAULT_QEC_STEPS),
    );
    let code = codes::five::<f64>();
    let rows = codes::qec_benefit(
        &code,
        &codes::exponential_channels(gamma, &times),
        gamma,
        &codes::logical_test_states(),
    )?;
    let mut table = Table::new(
        "qec-benefit",
        &["t", "F_ec", "bound", "F_exp_single", "advantage"],
    );
    for r in &rows {
        table.push(vec![
            r.t.into(),
            r.f_ec.into(),
            r.bound.into(),
            r.f_exp.into(),
            r.advantage().into(),
        ]);
    }
    let crossover = rows
        .iter()
        .skip(1)
        .find(|r| r.advantage() <= 0.0)
        .map(|r| r.t);
    table.note("gamma", gamma);
    table.note(
        "min_margin_over_bound",
        rows.iter()
            .map(|r| r.f_ec - r.bound)
            .fold(f64::INFINITY, f64::min),
    );
    match crossover {
        Some(t) => table.note("first_t_without_advantage", t),
        None => table.note("first_t_without_advantage", "none"),
    }
    Ok(table)
}

pub fn run_symmetrize(cfg: &ExperimentConfig) -> Result<Table, CliError> {
    let p = &cfg.parameters;
    let max_r = p.copies.unwrap_or(DEFAULT_MAX_COPIES);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed());
    let psi = StateVector::random(1, &mut rng)?;
    let channel = noise::dephasing_channel(p.p.unwrap_or(DEFAULT_DEPHASING))?;
    let pert = symmetrize::perturbation_from_channel(&channel, &psi)?;
    let mut table = Table::new(
        "symmetrize",
        &[
            "R",
            "F_before",
            "F_after_exact",
            "F_after_predicted",
            "success_prob",
        ],
    );
    for r in 1..=max_r {
        let rep = symmetrize::first_order_report(&psi, &vec![pert.clone(); r])?;
        table.push(vec![
            r.into(),
            rep.fidelity_before.into(),
            rep.fidelity_after_exact.into(),
            rep.fidelity_after_predicted.into(),
            rep.success_prob.into(),
        ]);
    }
    table.note("seed", cfg.seed());
    table.note("psi_re0", psi.amplitude(0).re);
    table.note("psi_im0", psi.amplitude(0).im);
    table.note("psi_re1", psi.amplitude(1).re);
    table.note("psi_im1", psi.amplitude(1).im);
    Ok(table)
}

pub fn run_zeno(cfg: &ExperimentConfig) -> Result<Table, CliError> {
    let k = cfg.parameters.k.unwrap_or(1.0);
    let schedule = symmetrize::zeno_schedule(k, &ZENO_GRID)?;
    let mut table = Table::new("zeno", &["n_projections", "cumulative_success"]);
    for (n, s) in &schedule {
        table.push(vec![(*n).into(), (*s).into()]);
    }
    table.note("k", k);
    table.note("monotone", schedule.windows(2).all(|w| w[1].1 >= w[0].1));
    Ok(table)
}

pub fn run_bounds(cfg: &ExperimentConfig) -> Result<Table, CliError> {
    let p = &cfg.parameters;
    let (l, t) = (p.l.unwrap_or(1), p.t.unwrap_or(1));
    let n_max = p.n_max.unwrap_or(DEFAULT_BOUNDS_N_MAX).max(l);
    let mut table = Table::new("bounds", &["n", "hamming_feasible", "gv_feasible"]);
    for n in l..=n_max {
        table.push(vec![
            n.into(),
            bounds::hamming_feasible(l, t, n)?.into(),
            bounds::gv_feasible(l, t, n)?.into(),
        ]);
    }
    table.note("l", l);
    table.note("t", t);
    table.note("hamming_min_n", bounds::hamming_min_n(l, t)?);
    match bounds::gv_max_n(l, t) {
        Ok(n) => table.note("gv_max_n", n),
        Err(_) => table.note("gv_max_n", format!("above {}", bounds::GV_SCAN_LIMIT)),
    }
    table.note("hamming_rate_root", bounds::hamming_rate_root());
    Ok(table)
}

fn load_code(cfg: &ExperimentConfig) -> Result<QuantumCode<f64>, CliError> {
    match &cfg.parameters.codewords {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            let file: CodewordFile = text.parse()?;
            let name = path
                .file_stem()
                .and_then(|s| s.to_str())
                .unwrap_or("codewords");
            Ok(file.to_code(name)?)
        }
        None => Ok(codes::builtin(
            cfg.parameters.code.as_deref().unwrap_or("five"),
        )?),
    }
}

pub fn run_verify(cfg: &ExperimentConfig) -> Result<Table, CliError> {
    let code = load_code(cfg)?;
    let rep = codes::verify_conditions(&code);
    let tol = codes::CONDITION_TOL;
    let mut table = Table::new("verify-code", &["check", "value", "pass"]);
    let rows: [(&str, f64, bool); 4] = [
        (
            "max_cross_block",
            rep.max_cross_block,
            rep.max_cross_block <= tol,
        ),
        (
            "max_diagonal_spread",
            rep.max_diagonal_spread,
            rep.max_diagonal_spread <= tol,
        ),
        (
            "max_off_diagonal",
            rep.max_off_diagonal,
            rep.max_off_diagonal <= tol,
        ),
        (
            "ancilla_min_eigenvalue",
            rep.ancilla_min_eigenvalue(),
            rep.ancilla_min_eigenvalue() > -tol,
        ),
    ];
    for (name, value, pass) in rows {
        table.push(vec![name.into(), value.into(), pass.into()]);
    }
    table.push(vec![
        "general_conditions".into(),
        rep.max_cross_block.max(rep.max_diagonal_spread).into(),
        rep.satisfies_general.into(),
    ]);
    table.push(vec![
        "nondegenerate_conditions".into(),
        rep.off_diagonal_violations.into(),
        rep.satisfies_nondegenerate.into(),
    ]);
    table.note("code", code.name());
    table.note("n", code.n());
    table.note("l", code.l());
    table.note("t", code.t());
    table.note("errors", rep.errors.len());
    table.note("degenerate_pairs", rep.degenerate_pairs.len());
    if let Some(&(a, b)) = rep.degenerate_pairs.first() {
        table.note(
            "example_degenerate_pair",
            format!("{} {}", rep.errors[a].short(), rep.errors[b].short()),
        );
    }
    if let Some(table_r) = code.recovery() {
        table.note("syndrome_classes", table_r.classes.len());
    }
    Ok(table)
}
