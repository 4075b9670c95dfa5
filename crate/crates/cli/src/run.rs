// Copyright 2026 The qudit-lgt Authors
// SPDX-License-Identifier: Apache-2.0

//! Engine dispatch: turns a validated scenario into a result table, summary
//! metrics and a diagnostics report.

use std::collections::BTreeMap;

use qudit_lgt::digital::{Circuit, CircuitState};
use qudit_lgt::noise::{run_noisy_digital, run_noisy_exact};
use qudit_lgt::perturbation::TransferProbe;
use qudit_lgt::postselect::sample_shots;
use qudit_lgt::{
    build_hamiltonian, dirac_vacuum, effective_hopping_frequency, evolve, gate_count, jeff, measure, parity_filter,
    performance, vacuum_subtract, CircuitOptions, KrylovConfig, ModelParams, ObservableSeries, QuditState,
    TrotterPlan,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::output::{Table, SERIES_SCHEMA, UNIT};
use crate::scenario::{DigitalSection, Engine, NoiseBackend, Scenario};

/// ChaCha8 stream reserved for shot sampling, disjoint from the noise
/// realizations which use streams `0..realizations`.
pub const SHOT_STREAM: u64 = u64::MAX;

#[derive(Clone, Debug)]
pub struct RunOutput {
    pub table: Table,
    pub summary: BTreeMap<String, Value>,
    /// Two-qudit gate count of the circuit, when the engine runs one.
    pub gate_count: Option<usize>,
    pub report: Value,
}

pub fn run_scenario(s: &Scenario) -> Result<RunOutput, CliError> {
    s.validate()?;
    let mut out = match s.engine {
        Engine::Exact => run_exact(s)?,
        Engine::Digital => run_digital(s)?,
        Engine::Noisy => run_noisy(s)?,
        Engine::Perturbative => run_perturbative(s)?,
        Engine::Performance => run_performance(s)?,
    };
    let t = &mut out.table;
    t.meta("scenario", &s.name);
    t.meta("engine", format!("{:?}", s.engine).to_lowercase());
    t.meta("unit", UNIT);
    t.meta("seed", s.seed);
    if let Some(n) = out.gate_count {
        t.meta("n_gates", n);
    }
    Ok(out)
}

fn exact_trajectory(init: &QuditState, p: &ModelParams, times: &[f64]) -> Result<Vec<QuditState>, CliError> {
    let h = build_hamiltonian(p)?;
    Ok(evolve(init, &h, times, &KrylovConfig::default())?)
}

fn push_series(table: &mut Table, s: &ObservableSeries, prefix: &str, per_site: bool) {
    let name = |x: &str| format!("{prefix}{x}");
    if prefix.is_empty() {
        table.push("rho", s.rho.clone());
        table.push("rho_s", s.rho_s.clone());
        table.push("rho_d", s.rho_d.clone());
        if !s.fidelity.is_empty() {
            table.push("fidelity", s.fidelity.clone());
        }
    } else {
        table.push(name("rho"), s.rho.clone());
        table.push(name("rho_s"), s.rho_s.clone());
        table.push(name("rho_d"), s.rho_d.clone());
    }
    table.push(name("rho_d_minus_s"), s.rho_d_minus_s());
    table.push(name("n_b"), s.n_b.clone());
    if per_site {
        for n in 0..s.n_sites {
            table.push(name(&format!("p_s_{}", n + 1)), s.p_s.iter().map(|r| r[n]).collect());
        }
        for n in 0..s.n_sites {
            table.push(name(&format!("p_d_{}", n + 1)), s.p_d.iter().map(|r| r[n]).collect());
        }
    }
    if s.window.is_some() {
        table.push(name("string_s"), s.string_s.clone());
        table.push(name("string_d"), s.string_d.clone());
        table.push(name("string_e"), s.string_e.clone());
    }
}

/// First interior local maximum of `rho`, or the global maximum if there is
/// none.
pub fn peak(times: &[f64], rho: &[f64]) -> (f64, f64) {
    for k in 1..rho.len().saturating_sub(1) {
        if rho[k] > rho[k - 1] && rho[k] >= rho[k + 1] {
            return (times[k], rho[k]);
        }
    }
    rho.iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map_or((0.0, 0.0), |(k, &r)| (times[k], r))
}

fn series_summary(summary: &mut BTreeMap<String, Value>, s: &ObservableSeries) {
    let (tp, rp) = peak(&s.times, &s.rho);
    summary.insert("peak_time".into(), json!(tp));
    summary.insert("peak_rho".into(), json!(rp));
    summary.insert("final_rho".into(), json!(s.rho.last().copied().unwrap_or(0.0)));
    if let Some(&f) = s.fidelity.last() {
        summary.insert("final_fidelity".into(), json!(f));
        summary.insert("final_infidelity".into(), json!(1.0 - f));
        summary.insert("final_error".into(), json!((1.0 - f).max(0.0).sqrt()));
    }
}

fn postselect(s: &Scenario, probs: &[f64], summary: &mut BTreeMap<String, Value>) {
    if let Some(ps) = &s.postselect {
        let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
        rng.set_stream(SHOT_STREAM);
        let shots = sample_shots(probs, s.model.n_sites, ps.shots, &mut rng);
        let f = parity_filter(&shots);
        summary.insert("shots".into(), json!(ps.shots));
        summary.insert("acceptance_rate".into(), json!(f.acceptance_rate));
    }
}

fn run_exact(s: &Scenario) -> Result<RunOutput, CliError> {
    let p = s.params()?;
    let times = s.time()?.grid()?;
    let window = s.observables.string_window;
    let states = exact_trajectory(&s.initial_state()?, &p, &times)?;
    let mut series = measure(&states, &times, &p, window)?;
    if s.observables.subtract_vacuum {
        let vac = exact_trajectory(&dirac_vacuum(&p)?, &p, &times)?;
        series = vacuum_subtract(&series, &measure(&vac, &times, &p, window)?)?;
    }
    let mut table = Table::new(SERIES_SCHEMA);
    table.meta("vacuum_subtracted", s.observables.subtract_vacuum);
    table.push("t", times);
    push_series(&mut table, &series, "", true);
    let mut summary = BTreeMap::new();
    series_summary(&mut summary, &series);
    postselect(s, &states.last().expect("grid has t = 0").probabilities(), &mut summary);
    Ok(RunOutput { table, summary, gate_count: None, report: json!({}) })
}

fn circuit_options(d: &DigitalSection) -> CircuitOptions {
    CircuitOptions { phonon: d.phonon.then_some(d.phonon_config), zeeman: None }
}

struct DigitalTrajectory {
    series: ObservableSeries,
    final_state: CircuitState,
    report: Value,
}

fn digital_trajectory(
    init: &QuditState,
    p: &ModelParams,
    d: &DigitalSection,
    plan: TrotterPlan,
    reference: &[QuditState],
    window: Option<qudit_lgt::StringWindow>,
) -> Result<DigitalTrajectory, CliError> {
    let mut circuit = Circuit::new(p, d.scheme, plan, circuit_options(d))?;
    let mut series = ObservableSeries::new(p.n_sites, window);
    let final_state = circuit.run(init, |k, t, st| {
        series.push_marginals(t, &st.marginals(), p);
        series.fidelity.push(st.fidelity_to(&reference[k])?);
        Ok(())
    })?;
    let r = circuit.report();
    let report = json!({
        "gates_applied": r.gates_applied,
        "max_residual_phonon": r.max_residual_phonon,
        "drive_ratio": r.drive_ratio,
        "magnus_substeps": r.magnus_substeps,
        "phonon_resolved": circuit.is_phonon_resolved(),
    });
    Ok(DigitalTrajectory { series, final_state, report })
}

fn run_digital(s: &Scenario) -> Result<RunOutput, CliError> {
    let p = s.params()?;
    let d = s.digital()?;
    let plan = s.plan()?;
    let times = plan.times();
    let window = s.observables.string_window;
    let init = s.initial_state()?;
    let reference = exact_trajectory(&init, &p, &times)?;
    let run = digital_trajectory(&init, &p, d, plan, &reference, window)?;
    let mut digital = run.series;
    let mut exact = measure(&reference, &times, &p, window)?;
    if s.observables.subtract_vacuum {
        let vac = dirac_vacuum(&p)?;
        let vac_ref = exact_trajectory(&vac, &p, &times)?;
        let vac_dig = digital_trajectory(&vac, &p, d, plan, &vac_ref, window)?.series;
        let fid = digital.fidelity.clone();
        digital = vacuum_subtract(&digital, &vac_dig)?;
        digital.fidelity = fid;
        exact = vacuum_subtract(&exact, &measure(&vac_ref, &times, &p, window)?)?;
    }
    let n_gates = gate_count(p.n_sites, plan.n_steps, d.scheme, d.order)?;
    let mut table = Table::new(SERIES_SCHEMA);
    table.meta("vacuum_subtracted", s.observables.subtract_vacuum);
    table.meta("scheme", d.scheme.name());
    table.meta("order", d.order);
    table.push("t", times);
    push_series(&mut table, &digital, "", true);
    push_series(&mut table, &exact, "exact_", false);
    let mut summary = BTreeMap::new();
    series_summary(&mut summary, &digital);
    let max_dev = digital.rho.iter().zip(&exact.rho).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    summary.insert("max_abs_rho_error".into(), json!(max_dev));
    summary.insert("t_final".into(), json!(plan.t_final()));
    postselect(s, &run.final_state.probabilities(), &mut summary);
    Ok(RunOutput { table, summary, gate_count: Some(n_gates), report: run.report })
}

fn run_noisy(s: &Scenario) -> Result<RunOutput, CliError> {
    let p = s.params()?;
    let ensemble = s.ensemble()?;
    let window = s.observables.string_window;
    let init = s.initial_state()?;
    let backend = s.noise.as_ref().map_or(NoiseBackend::Digital, |n| n.backend);
    let mut summary = BTreeMap::new();
    let (times, result, n_gates, report) = match backend {
        NoiseBackend::Digital => {
            let d = s.digital()?;
            let plan = s.plan()?;
            let times = plan.times();
            let reference = exact_trajectory(&init, &p, &times)?;
            let clean = digital_trajectory(&init, &p, d, plan, &reference, window)?;
            let f0 = clean.series.fidelity.last().copied().unwrap_or(1.0);
            summary.insert("noiseless_final_fidelity".into(), json!(f0));
            let r = run_noisy_digital(&init, &p, plan, d.scheme, circuit_options(d), &ensemble, &reference, window)?;
            let n = gate_count(p.n_sites, plan.n_steps, d.scheme, d.order)?;
            (times, r, Some(n), clean.report)
        }
        NoiseBackend::Exact => {
            let times = s.time()?.grid()?;
            let reference = exact_trajectory(&init, &p, &times)?;
            let r = run_noisy_exact(&init, &p, &times, &ensemble, &reference, window, &KrylovConfig::default())?;
            (times, r, None, json!({}))
        }
    };
    let mut table = Table::new(SERIES_SCHEMA);
    table.meta("delta_b", ensemble.delta_b);
    table.meta("realizations", ensemble.realizations);
    table.push("t", times);
    push_series(&mut table, &result.series, "", true);
    table.push("fidelity_std", result.fidelity_std.clone());
    series_summary(&mut summary, &result.series);
    if let (Some(&f), Some(f0)) = (result.fidelity_mean.last(), summary.get("noiseless_final_fidelity")) {
        summary.insert("fidelity_ratio".into(), json!(f / f0.as_f64().unwrap_or(1.0)));
    }
    summary.insert("final_fidelity_std".into(), json!(result.fidelity_std.last().copied().unwrap_or(0.0)));
    Ok(RunOutput { table, summary, gate_count: n_gates, report })
}

fn run_perturbative(s: &Scenario) -> Result<RunOutput, CliError> {
    let p = s.params()?;
    let cfg = s.perturbative.clone().unwrap_or_default();
    let j = jeff(p.g2, p.mass)?;
    let fit = effective_hopping_frequency(p.g2, p.mass)?;
    let probe = TransferProbe::new(p.g2, p.mass)?;
    let n = ((cfg.samples as f64) * cfg.span).ceil().max(2.0) as usize;
    let t_end = cfg.span * fit.first_max_time;
    let times: Vec<f64> = (0..=n).map(|k| t_end * k as f64 / n as f64).collect();
    let mut table = Table::new("qlgt-transfer/1");
    table.meta("jeff", j);
    table.push("t", times.clone());
    table.push("population", times.iter().map(|&t| probe.population(t)).collect());
    table.push("effective_model", times.iter().map(|&t| (j * t).sin().powi(2)).collect());
    let mut summary = BTreeMap::new();
    summary.insert("jeff".into(), json!(j));
    summary.insert("two_jeff".into(), json!(2.0 * j));
    summary.insert("frequency".into(), json!(fit.frequency));
    summary.insert("dft_frequency".into(), json!(fit.dft_frequency));
    summary.insert("frequency_ratio".into(), json!(fit.frequency / (2.0 * j)));
    summary.insert("first_max_time".into(), json!(fit.first_max_time));
    summary.insert("peak_population".into(), json!(fit.peak_population));
    Ok(RunOutput { table, summary, gate_count: None, report: json!({}) })
}

fn run_performance(s: &Scenario) -> Result<RunOutput, CliError> {
    let p = s.params()?;
    let d = s.digital()?;
    let perf = s.performance.as_ref().expect("validated");
    let init = s.initial_state()?;
    let target = exact_trajectory(&init, &p, &[perf.t_final])?.pop().expect("one time point");
    let cols = ["n_st", "f_ms", "n_gates", "dt", "fidelity", "performance"];
    let mut data: Vec<Vec<f64>> = vec![Vec::new(); cols.len()];
    for &n_st in &perf.n_st {
        let plan = TrotterPlan::to_time(d.order, perf.t_final, n_st)?;
        let mut circuit = Circuit::new(&p, d.scheme, plan, circuit_options(d))?;
        let f = circuit.run(&init, |_, _, _| Ok(()))?.fidelity_to(&target)?;
        let n_gates = gate_count(p.n_sites, n_st, d.scheme, d.order)?;
        for &f_ms in &perf.f_ms {
            let row = [n_st as f64, f_ms, n_gates as f64, plan.dt, f, performance(f, f_ms, n_gates)?];
            data.iter_mut().zip(row).for_each(|(c, v)| c.push(v));
        }
    }
    let mut table = Table::new("qlgt-performance/1");
    table.meta("scheme", d.scheme.name());
    table.meta("order", d.order);
    table.meta("t_final", perf.t_final);
    for (name, values) in cols.iter().zip(data) {
        table.push(*name, values);
    }
    let mut summary = BTreeMap::new();
    let best = table
        .column("performance")
        .and_then(|c| c.iter().copied().max_by(f64::total_cmp))
        .unwrap_or(0.0);
    summary.insert("best_performance".into(), json!(best));
    Ok(RunOutput { table, summary, gate_count: None, report: json!({}) })
}
