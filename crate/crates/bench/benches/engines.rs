// Copyright 2026 The qudit-lgt Authors
// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::PI;
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_complex::Complex64;

use qudit_lgt::digital::gates::full_generator;
use qudit_lgt::digital::{ms_channel, Circuit, CircuitState};
use qudit_lgt::*;
use qudit_lgt_bench::vacuum;

fn matvec(c: &mut Criterion) {
    let mut group = c.benchmark_group("hamiltonian_matvec");
    for n in [4, 5, 6] {
        let (p, v) = vacuum(n);
        let h = build_hamiltonian(&p).unwrap();
        let mut y = vec![Complex64::new(0.0, 0.0); v.dim()];
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| h.apply_into(black_box(v.amplitudes()), &mut y))
        });
    }
    group.finish();
}

fn krylov(c: &mut Criterion) {
    let mut group = c.benchmark_group("krylov_evolve_t1");
    group.sample_size(10);
    for n in [4, 5] {
        let (p, v) = vacuum(n);
        let h = build_hamiltonian(&p).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| evolve(black_box(&v), &h, &[1.0], &KrylovConfig::default()).unwrap())
        });
    }
    group.finish();
}

fn trotter_step(c: &mut Criterion) {
    let mut group = c.benchmark_group("trotter_step");
    let (p, v) = vacuum(4);
    let plan = TrotterPlan::new(1, 0.01 * PI, 1).unwrap();
    for scheme in [GateScheme::IdealEffective, GateScheme::FullMs, GateScheme::DisjointPair] {
        let mut circuit = Circuit::new(&p, scheme, plan, CircuitOptions::default()).unwrap();
        group.bench_function(scheme.name(), |b| {
            b.iter(|| {
                let mut s = CircuitState::Pure(v.clone());
                circuit.step(&mut s).unwrap();
                s
            })
        });
    }
    group.finish();
}

fn phonon(c: &mut Criterion) {
    let mut group = c.benchmark_group("phonon");
    group.sample_size(10);
    let g = full_generator(1);
    group.bench_function("ms_channel_r0.1", |b| {
        b.iter(|| ms_channel(black_box(&g), PI * 0.01, &PhononConfig::default()).unwrap())
    });
    let (p, v) = vacuum(3);
    let plan = TrotterPlan::new(1, 0.01 * PI, 1).unwrap();
    let options = CircuitOptions { phonon: Some(PhononConfig::default()), zeeman: None };
    let mut circuit = Circuit::new(&p, GateScheme::FullMs, plan, options).unwrap();
    group.bench_function("full_ms_step_n3", |b| {
        b.iter(|| {
            let mut s = CircuitState::Mixed(v.density_matrix());
            circuit.step(&mut s).unwrap();
            s
        })
    });
    group.finish();
}

criterion_group!(benches, matvec, krylov, trotter_step, phonon);
criterion_main!(benches);
