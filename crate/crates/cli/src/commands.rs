// Copyright 2026 The qudit-lgt Authors
// SPDX-License-Identifier: Apache-2.0

//! The `run`, `sweep`, `gates` and `verify` subcommands.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::time::Instant;

use qudit_lgt::{gate_count, GateScheme};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::output::{write_atomic, write_json, Table, MANIFEST_SCHEMA, UNIT};
use crate::run::{run_scenario, RunOutput};
use crate::scenario::{Engine, Scenario};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Files written by one scenario run.
#[derive(Clone, Debug)]
pub struct RunFiles {
    pub csv: PathBuf,
    pub manifest: PathBuf,
    pub output: RunOutput,
}

pub fn manifest(s: &Scenario, out: &RunOutput, csv_name: &str, wall_time: f64) -> Result<Value, CliError> {
    let scenario = serde_json::to_value(s).map_err(|e| CliError::Io(e.to_string()))?;
    Ok(json!({
        "schema": MANIFEST_SCHEMA,
        "unit": UNIT,
        "scenario": scenario,
        "csv": csv_name,
        "csv_schema": out.table.metadata.get("schema"),
        "columns": out.table.header(),
        "rows": out.table.rows(),
        "gate_count": out.gate_count,
        "summary": out.summary,
        "report": out.report,
        "wall_time_s": wall_time,
        "versions": { "qlgt": VERSION, "qudit-lgt": VERSION },
    }))
}

/// Runs `s` and writes `<name>.csv` and `<name>.manifest.json` into `dir`.
pub fn run_to_dir(s: &Scenario, dir: &Path) -> Result<RunFiles, CliError> {
    let start = Instant::now();
    let output = run_scenario(s)?;
    write_outputs(s, output, dir, start.elapsed().as_secs_f64())
}

fn write_outputs(s: &Scenario, output: RunOutput, dir: &Path, wall: f64) -> Result<RunFiles, CliError> {
    let csv_name = format!("{}.csv", s.name);
    let csv = dir.join(&csv_name);
    let manifest_path = dir.join(format!("{}.manifest.json", s.name));
    write_atomic(&csv, output.table.to_csv()?.as_bytes())?;
    write_json(&manifest_path, &manifest(s, &output, &csv_name, wall)?)?;
    Ok(RunFiles { csv, manifest: manifest_path, output })
}

pub fn cmd_run(path: &Path, seed: Option<u64>, out: &Path) -> Result<RunFiles, CliError> {
    let mut s = Scenario::load(path)?;
    if let Some(seed) = seed {
        s.seed = seed;
    }
    run_to_dir(&s, out)
}

/// Axis that sets `model.mass` and `model.g2` together.
pub const TIED_COUPLING_AXIS: &str = "model.mass_and_g2";

/// Copy of `base` with the scalar at dotted path `axis` set to `value`.
pub fn set_axis(base: &Scenario, axis: &str, value: f64) -> Result<Scenario, CliError> {
    if axis == TIED_COUPLING_AXIS {
        let s = set_axis(base, "model.mass", value)?;
        return set_axis(&s, "model.g2", value);
    }
    let mut v = serde_json::to_value(base).map_err(|e| CliError::Io(e.to_string()))?;
    let mut node = &mut v;
    let parts: Vec<&str> = axis.split('.').collect();
    for part in &parts[..parts.len() - 1] {
        node = node
            .get_mut(*part)
            .filter(|n| n.is_object())
            .ok_or_else(|| CliError::Config(format!("unknown sweep axis {axis}")))?;
    }
    let leaf = node
        .get_mut(parts[parts.len() - 1])
        .filter(|n| n.is_number())
        .ok_or_else(|| CliError::Config(format!("sweep axis {axis} is not a scalar field of this scenario")))?;
    *leaf = if leaf.is_f64() {
        json!(value)
    } else if value.fract() == 0.0 && value >= 0.0 {
        json!(value as u64)
    } else {
        return Err(CliError::Config(format!("axis {axis} takes integers, got {value}")));
    };
    serde_json::from_value(v).map_err(|e| CliError::Config(e.to_string()))
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_slope(x: &[f64], y: &[f64]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = x.iter().zip(y).filter(|(a, b)| **a > 0.0 && **b > 0.0).map(|(a, b)| (a.ln(), b.ln())).collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

#[derive(Clone, Debug)]
pub struct SweepResult {
    pub runs: Vec<RunFiles>,
    pub aggregate: Table,
    pub aggregate_path: PathBuf,
}

/// Runs one scenario per value of `axis` on a pool of at most `jobs`
/// workers. Outputs land in `<out>/<name>.sweep/<index>/`; the aggregate
/// table is `<out>/<name>.sweep.csv`.
pub fn cmd_sweep(path: &Path, axis: &str, values: &[f64], out: &Path, jobs: usize) -> Result<SweepResult, CliError> {
    if values.is_empty() {
        return Err(CliError::Config("sweep needs at least one value".into()));
    }
    let base = Scenario::load(path)?;
    let scenarios: Vec<Scenario> = values.iter().map(|&v| set_axis(&base, axis, v)).collect::<Result<_, _>>()?;
    for s in &scenarios {
        s.validate()?;
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1).min(values.len()))
        .build()
        .map_err(|e| CliError::Io(e.to_string()))?;
    let sweep_dir = out.join(format!("{}.sweep", base.name));
    let runs: Vec<RunFiles> = pool.install(|| {
        scenarios
            .par_iter()
            .enumerate()
            .map(|(i, s)| run_to_dir(s, &sweep_dir.join(i.to_string())))
            .collect::<Result<_, _>>()
    })?;
    let aggregate = aggregate_table(&base, axis, values, &runs);
    let aggregate_path = out.join(format!("{}.sweep.csv", base.name));
    write_atomic(&aggregate_path, aggregate.to_csv()?.as_bytes())?;
    Ok(SweepResult { runs, aggregate, aggregate_path })
}

fn aggregate_table(base: &Scenario, axis: &str, values: &[f64], runs: &[RunFiles]) -> Table {
    let mut t = Table::new("qlgt-sweep/1");
    t.meta("scenario", &base.name);
    t.meta("axis", axis);
    t.meta("unit", UNIT);
    let keys: BTreeSet<&String> = runs
        .iter()
        .flat_map(|r| r.output.summary.iter().filter(|(_, v)| v.is_number()).map(|(k, _)| k))
        .collect();
    t.push("value", values.to_vec());
    let numeric = |r: &RunFiles, k: &str| r.output.summary.get(k).and_then(Value::as_f64).unwrap_or(f64::NAN);
    for k in &keys {
        t.push(k.as_str(), runs.iter().map(|r| numeric(r, k)).collect());
    }
    if runs.iter().any(|r| r.output.gate_count.is_some()) {
        t.push("n_gates", runs.iter().map(|r| r.output.gate_count.map_or(f64::NAN, |n| n as f64)).collect());
    }
    let step_axis = axis == "time.dt" || axis == "time.dt_pi";
    if step_axis && base.engine == Engine::Digital {
        let slopes: BTreeMap<&str, Option<f64>> = ["final_error", "max_abs_rho_error"]
            .into_iter()
            .map(|k| (k, t.column(k).and_then(|c| log_slope(values, c))))
            .collect();
        for (k, s) in slopes {
            if let Some(s) = s {
                t.meta(&format!("slope_{k}"), s);
            }
        }
    }
    t
}

pub fn cmd_gates(n: usize, n_st: usize, scheme: GateScheme, order: u8) -> Result<usize, CliError> {
    Ok(gate_count(n, n_st, scheme, order)?)
}

/// Runs the rishon oracle and renders one line per check.
pub fn cmd_verify() -> (bool, Vec<String>) {
    let s = qudit_lgt_oracle::run_all();
    let mark = |ok: bool| if ok { "PASS" } else { "FAIL" };
    let mut lines = vec![format!(
        "{} tables: max deviation {:.2e}, convention {:?}",
        mark(s.tables.passed()),
        s.tables.max_deviation(),
        s.tables.convention
    )];
    lines.push(format!(
        "{} gauss law: violating states {:?}, triplet |G|² = {:.6}",
        mark(s.gauss.passed()),
        s.gauss.violating_states(),
        s.gauss.triplet_casimir
    ));
    lines.push(format!(
        "{} link casimir: rishon deviation {:.2e}, C deviation {:.2e}",
        mark(s.casimir.passed()),
        s.casimir.rishon_deviation,
        s.casimir.c_deviation
    ));
    lines.push(format!(
        "{} parallel transporter: failing color pairs {:?}",
        mark(s.transporter.passed()),
        s.transporter.failures()
    ));
    (s.passed(), lines)
}
