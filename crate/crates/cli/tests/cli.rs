// Copyright 2026 The qudit-lgt Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use qlgt::Table;

fn qlgt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qlgt")).args(args).output().expect("binary runs")
}

fn scenario(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios").join(name)
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn read_table(p: &Path) -> Table {
    Table::from_csv(&std::fs::read_to_string(p).unwrap()).unwrap()
}

const SMALL_NOISY: &str = r#"
name = "small_noisy"
engine = "noisy"
seed = 11

[model]
n_sites = 3
mass = 0.7686
g2 = 0.7686

[time]
dt_pi = 0.02
steps = 6

[digital]
scheme = "ideal_effective"

[noise]
delta_b = 0.1
realizations = 5
"#;

#[test]
fn fig4_scenario_writes_series_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = qlgt(&["run", scenario("fig4_vacuum_n3.cfg").to_str().unwrap(), "--out", dir.path().to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let table = read_table(&dir.path().join("fig4_vacuum_n3.csv"));
    let header = table.header();
    for col in ["t", "rho", "rho_s", "rho_d", "fidelity"] {
        assert!(header.iter().any(|h| h == col), "missing {col}");
    }
    assert_eq!(table.rows(), 13);
    assert_eq!(table.metadata["schema"], "qlgt-series/1");
    let m: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("fig4_vacuum_n3.manifest.json")).unwrap()).unwrap();
    assert_eq!(m["gate_count"], 48);
    assert_eq!(m["unit"], "natural-units-eq7");
    assert_eq!(m["summary"]["acceptance_rate"], 1.0);
    assert!(m["versions"]["qlgt"].is_string());
    assert!(m["wall_time_s"].as_f64().unwrap() >= 0.0);
}

#[test]
fn same_seed_gives_identical_csv_and_manifest_reruns() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "small.cfg", SMALL_NOISY);
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    let c = dir.path().join("c");
    for d in [&a, &b] {
        assert!(qlgt(&["run", cfg.to_str().unwrap(), "--out", d.to_str().unwrap()]).status.success());
    }
    let csv_a = std::fs::read(a.join("small_noisy.csv")).unwrap();
    assert_eq!(csv_a, std::fs::read(b.join("small_noisy.csv")).unwrap());
    let manifest = a.join("small_noisy.manifest.json");
    assert!(qlgt(&["run", manifest.to_str().unwrap(), "--out", c.to_str().unwrap()]).status.success());
    assert_eq!(csv_a, std::fs::read(c.join("small_noisy.csv")).unwrap());
    // a different seed draws different couplings
    let d = dir.path().join("d");
    assert!(qlgt(&["run", cfg.to_str().unwrap(), "--seed", "12", "--out", d.to_str().unwrap()]).status.success());
    assert_ne!(csv_a, std::fs::read(d.join("small_noisy.csv")).unwrap());
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let big = write(
        dir.path(),
        "big.cfg",
        "name = \"big\"\nengine = \"exact\"\n[model]\nn_sites = 12\nmass = 1.0\ng2 = 1.0\n[time]\ndt = 0.1\nsteps = 2\n",
    );
    let out = qlgt(&["run", big.to_str().unwrap(), "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert_eq!(stderr.lines().count(), 1, "{stderr}");

    let phonon = write(
        dir.path(),
        "phonon.cfg",
        "name = \"p\"\nengine = \"digital\"\n[model]\nn_sites = 5\nmass = 1.0\ng2 = 1.0\n[time]\ndt = 0.1\nsteps = 2\n[digital]\nscheme = \"full_ms\"\nphonon = true\n",
    );
    assert_eq!(qlgt(&["run", phonon.to_str().unwrap()]).status.code(), Some(3));

    let bad = write(dir.path(), "bad.cfg", "name = \"x\"\nengine = \"exact\"\n[model]\nn_sites = 3\nmass = 1\n");
    assert_eq!(qlgt(&["run", bad.to_str().unwrap()]).status.code(), Some(2));
    let unknown = write(dir.path(), "unknown.cfg", &SMALL_NOISY.replace("seed = 11", "seed = 11\ncolour = 3"));
    assert_eq!(qlgt(&["run", unknown.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(qlgt(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(qlgt(&["run", "/nonexistent/x.cfg"]).status.code(), Some(1));
}

#[test]
fn gates_subcommand_counts() {
    let out = qlgt(&["gates", "--n", "3", "--nst", "12", "--scheme", "full_ms", "--order", "1"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "48");
    let out = qlgt(&["gates", "--n", "3", "--nst", "3", "--scheme", "full_ms", "--order", "2"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "18");
    assert_eq!(qlgt(&["gates", "--n", "3", "--nst", "3", "--order", "3"]).status.code(), Some(2));
}

#[test]
fn verify_subcommand_passes() {
    let out = qlgt(&["verify"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 4, "{text}");
}

#[test]
fn sweep_noise_and_step_axes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "small.cfg", SMALL_NOISY);
    let out_dir = dir.path().to_str().unwrap();
    let out = qlgt(&["sweep", cfg.to_str().unwrap(), "--axis", "noise.delta_b", "--values", "0,0.05,0.2", "--out", out_dir]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let agg = read_table(&dir.path().join("small_noisy.sweep.csv"));
    assert_eq!(agg.rows(), 3);
    let infid = agg.column("final_infidelity").unwrap();
    assert!(infid[0] <= infid[1] + 1e-12 && infid[1] <= infid[2] + 1e-12, "{infid:?}");
    assert!(dir.path().join("small_noisy.sweep/2/small_noisy.csv").exists());

    let trotter = write(
        dir.path(),
        "trotter.cfg",
        "name = \"trotter\"\nengine = \"digital\"\n[model]\nn_sites = 3\nmass = 0.7686\ng2 = 0.7686\n[time]\ndt_pi = 0.04\nt_final = 0.377\n[digital]\nscheme = \"ideal_effective\"\n",
    );
    let out = qlgt(&["sweep", trotter.to_str().unwrap(), "--axis", "time.dt_pi", "--values", "0.04,0.02,0.01", "--out", out_dir]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let agg = read_table(&dir.path().join("trotter.sweep.csv"));
    let slope: f64 = agg.metadata["slope_final_error"].parse().unwrap();
    assert!((slope - 1.0).abs() < 0.2, "{slope}");

    assert_eq!(qlgt(&["sweep", cfg.to_str().unwrap(), "--axis", "noise.delta_b", "--values"]).status.code(), Some(2));
    assert_eq!(qlgt(&["sweep", cfg.to_str().unwrap(), "--axis", "model.colour", "--values", "1"]).status.code(), Some(2));
}

#[test]
fn performance_grid_is_emitted() {
    let dir = tempfile::tempdir().unwrap();
    let out = qlgt(&["run", scenario("fig7b.cfg").to_str().unwrap(), "--out", dir.path().to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let t = read_table(&dir.path().join("fig7b.csv"));
    assert_eq!(t.rows(), 11 * 7);
    let f = t.column("fidelity").unwrap();
    let p = t.column("performance").unwrap();
    let f_ms = t.column("f_ms").unwrap();
    let n = t.column("n_gates").unwrap();
    for k in 0..t.rows() {
        assert!((p[k] - f[k] * f_ms[k].powi(n[k] as i32)).abs() < 1e-15);
    }
}

#[test]
fn every_bundled_scenario_parses_and_validates() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios");
    let mut names: Vec<String> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    names.sort();
    for panel in ["fig2a", "fig2b", "fig4a", "fig4b", "fig5a", "fig5b", "fig5c", "fig7a", "fig7b", "fig8b"] {
        assert!(names.contains(&format!("{panel}.cfg")), "missing {panel}");
    }
    for n in names {
        let s = qlgt::Scenario::load(&dir.join(&n)).unwrap();
        s.validate().unwrap_or_else(|e| panic!("{n}: {e}"));
        assert_eq!(format!("{}.cfg", s.name), n);
    }
}
