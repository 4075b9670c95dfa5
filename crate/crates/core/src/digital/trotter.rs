// Copyright 2026 The qudit-lgt Authors
// SPDX-License-Identifier: Apache-2.0

//! Trotterized circuits: gate sequencing, state propagation and gate
//! accounting.
//!
//! A first-order step applies, for every odd bond and then every even bond,
//! the scheme's gates (`k = 1` before `k = 2`), followed by the diagonal
//! single-qudit layer. The second-order step is the symmetric product
//! `S(dt/2) g₁(dt/2) … g_{K−1}(dt/2) g_K(dt) g_{K−1}(dt/2) … g₁(dt/2) S(dt/2)`
//! over the same gate list.

use std::collections::HashMap;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::gates::{bond_gate_specs, correction_phases, GateScheme};
use super::phonon::{ms_channel, MsChannel, PhononConfig};
use crate::error::{Error, Result};
use crate::operator::{digit, CMatrix};
use crate::params::ModelParams;
use crate::state::{fidelity, DensityMatrix, QuditState};

/// Largest chain simulated with phonon-resolved gates.
pub const MAX_PHONON_SITES: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrotterPlan {
    pub order: u8,
    pub dt: f64,
    pub n_steps: usize,
}

impl TrotterPlan {
    pub fn new(order: u8, dt: f64, n_steps: usize) -> Result<Self> {
        let p = TrotterPlan { order, dt, n_steps };
        p.validate()?;
        Ok(p)
    }

    /// Plan reaching `t_final` with steps no longer than `dt`.
    pub fn to_time(order: u8, t_final: f64, n_steps: usize) -> Result<Self> {
        if n_steps == 0 {
            return Err(Error::param("need at least one Trotter step"));
        }
        Self::new(order, t_final / n_steps as f64, n_steps)
    }

    pub fn validate(&self) -> Result<()> {
        if self.order != 1 && self.order != 2 {
            return Err(Error::param(format!("Trotter order must be 1 or 2, got {}", self.order)));
        }
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            return Err(Error::param(format!("dt must be positive, got {}", self.dt)));
        }
        Ok(())
    }

    pub fn t_final(&self) -> f64 {
        self.dt * self.n_steps as f64
    }

    pub fn times(&self) -> Vec<f64> {
        (0..=self.n_steps).map(|k| k as f64 * self.dt).collect()
    }
}

/// `N_gates = (N − 1)·(D/2)·n_ST`.
pub fn gate_count(n_sites: usize, n_steps: usize, scheme: GateScheme, order: u8) -> Result<usize> {
    if n_sites < 2 {
        return Err(Error::param(format!("need at least 2 sites, got {n_sites}")));
    }
    if order != 1 && order != 2 {
        return Err(Error::param(format!("Trotter order must be 1 or 2, got {order}")));
    }
    Ok((n_sites - 1) * scheme.depth(order) / 2 * n_steps)
}

/// Qudit state carried through a circuit.
#[derive(Clone, Debug)]
pub enum CircuitState {
    Pure(QuditState),
    Mixed(DensityMatrix),
}

impl CircuitState {
    pub fn marginals(&self) -> Vec<[f64; 6]> {
        match self {
            CircuitState::Pure(s) => s.marginals(),
            CircuitState::Mixed(r) => r.marginals(),
        }
    }

    pub fn probabilities(&self) -> Vec<f64> {
        match self {
            CircuitState::Pure(s) => s.probabilities(),
            CircuitState::Mixed(r) => r.probabilities(),
        }
    }

    /// `⟨ψ|ϱ|ψ⟩` against a reference pure state.
    pub fn fidelity_to(&self, reference: &QuditState) -> Result<f64> {
        match self {
            CircuitState::Pure(s) => Ok(s.inner(reference).norm_sqr()),
            CircuitState::Mixed(r) => fidelity(reference, r),
        }
    }

    pub fn trace(&self) -> f64 {
        match self {
            CircuitState::Pure(s) => s.norm().powi(2),
            CircuitState::Mixed(r) => r.trace(),
        }
    }

    pub fn expectation_diagonal(&self, diag: &[f64]) -> f64 {
        self.probabilities().iter().zip(diag).map(|(p, d)| p * d).sum()
    }
}

#[derive(Clone, Debug)]
enum GateOp {
    Unitary(Arc<CMatrix>),
    Channel(Arc<MsChannel>),
}

/// Options beyond the plan and scheme.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CircuitOptions {
    /// Phonon-resolved gates for the MS-based schemes (`FullMs`,
    /// `DisjointPair`); `FullMs` without it falls back to the effective gate.
    pub phonon: Option<PhononConfig>,
    /// Static Zeeman coupling `(b, w)` folded into the diagonal layer.
    pub zeeman: Option<(f64, f64)>,
}

/// Per-run diagnostics.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CircuitReport {
    pub gates_applied: usize,
    pub max_residual_phonon: f64,
    pub drive_ratio: Option<f64>,
    pub magnus_substeps: Option<usize>,
}

/// Precompiled circuit for a fixed model, scheme and step.
pub struct Circuit {
    params: ModelParams,
    scheme: GateScheme,
    plan: TrotterPlan,
    options: CircuitOptions,
    /// `(first site of bond, gate index within the bond)` in execution order.
    sequence: Vec<(usize, usize)>,
    cache: HashMap<(usize, u64), GateOp>,
    report: CircuitReport,
}

impl Circuit {
    pub fn new(params: &ModelParams, scheme: GateScheme, plan: TrotterPlan, options: CircuitOptions) -> Result<Self> {
        params.validate()?;
        params.check_exact_capacity()?;
        plan.validate()?;
        let resolved = options.phonon.is_some() && matches!(scheme, GateScheme::FullMs | GateScheme::DisjointPair);
        if let Some(cfg) = options.phonon {
            cfg.validate()?;
            if resolved && params.n_sites > MAX_PHONON_SITES {
                return Err(Error::Capacity(format!(
                    "phonon-resolved circuits are limited to {MAX_PHONON_SITES} sites, got {}",
                    params.n_sites
                )));
            }
        }
        let n_gates = bond_gate_specs(scheme).len();
        let mut sequence = Vec::new();
        for parity in [1usize, 0] {
            for bond in (1..params.n_sites).filter(|b| b % 2 == parity) {
                for g in 0..n_gates {
                    sequence.push((bond, g));
                }
            }
        }
        let options = CircuitOptions { phonon: if resolved { options.phonon } else { None }, ..options };
        Ok(Circuit { params: *params, scheme, plan, options, sequence, cache: HashMap::new(), report: CircuitReport::default() })
    }

    pub fn is_phonon_resolved(&self) -> bool {
        self.options.phonon.is_some()
    }

    /// Replaces the static Zeeman term folded into the diagonal layer.
    pub fn set_zeeman(&mut self, zeeman: Option<(f64, f64)>) {
        self.options.zeeman = zeeman;
    }

    pub fn report(&self) -> &CircuitReport {
        &self.report
    }

    fn gate(&mut self, index: usize, dt: f64) -> Result<GateOp> {
        let key = (index, dt.to_bits());
        if let Some(op) = self.cache.get(&key) {
            return Ok(op.clone());
        }
        let spec = &bond_gate_specs(self.scheme)[index];
        let op = match (self.options.phonon, spec) {
            (Some(cfg), super::gates::GateSpec::Squared { generator, .. }) => {
                let ch = ms_channel(generator, dt, &cfg)?;
                self.report.max_residual_phonon = self.report.max_residual_phonon.max(ch.residual_excitation);
                self.report.drive_ratio = Some(ch.drive_ratio);
                self.report.magnus_substeps = Some(self.report.magnus_substeps.unwrap_or(0).max(ch.substeps));
                GateOp::Channel(Arc::new(ch))
            }
            _ => GateOp::Unitary(Arc::new(spec.effective_unitary(dt))),
        };
        self.cache.insert(key, op.clone());
        Ok(op)
    }

    fn apply_gate(&mut self, state: &mut CircuitState, bond: usize, index: usize, dt: f64) -> Result<()> {
        let op = self.gate(index, dt)?;
        self.report.gates_applied += 1;
        match (state, op) {
            (CircuitState::Pure(s), GateOp::Unitary(u)) => s.apply_bond(bond, &u),
            (CircuitState::Mixed(r), GateOp::Unitary(u)) => r.conjugate_bond_in_place(bond, &u),
            (CircuitState::Mixed(r), GateOp::Channel(ch)) => ch.apply_to_bond(r, bond),
            (state, GateOp::Channel(ch)) => {
                let CircuitState::Pure(s) = &*state else { unreachable!() };
                let mut r = s.density_matrix();
                ch.apply_to_bond(&mut r, bond);
                *state = CircuitState::Mixed(r);
            }
        }
        Ok(())
    }

    fn apply_diagonal(&self, state: &mut CircuitState, dt: f64) {
        let phases = correction_phases(&self.params, self.scheme, dt, self.options.zeeman);
        match state {
            CircuitState::Pure(s) => s.apply_site_diagonals(&phases),
            CircuitState::Mixed(r) => {
                let n = self.params.n_sites;
                let dim = r.matrix().nrows();
                let d: Vec<Complex64> = (0..dim)
                    .map(|i| (0..n).map(|s| phases[s][digit(i, s + 1, n)]).product())
                    .collect();
                r.conjugate_diagonal(&d);
            }
        }
    }

    /// One Trotter step in place.
    pub fn step(&mut self, state: &mut CircuitState) -> Result<()> {
        let dt = self.plan.dt;
        let seq = self.sequence.clone();
        if self.plan.order == 1 {
            for &(bond, g) in &seq {
                self.apply_gate(state, bond, g, dt)?;
            }
            self.apply_diagonal(state, dt);
        } else {
            self.apply_diagonal(state, dt / 2.0);
            let last = seq.len() - 1;
            for &(bond, g) in &seq[..last] {
                self.apply_gate(state, bond, g, dt / 2.0)?;
            }
            let (bond, g) = seq[last];
            self.apply_gate(state, bond, g, dt)?;
            for &(bond, g) in seq[..last].iter().rev() {
                self.apply_gate(state, bond, g, dt / 2.0)?;
            }
            self.apply_diagonal(state, dt / 2.0);
        }
        Ok(())
    }

    /// Runs the whole plan, calling `observe(step, t, state)` at `t = 0` and
    /// after every step.
    pub fn run(
        &mut self,
        init: &QuditState,
        mut observe: impl FnMut(usize, f64, &CircuitState) -> Result<()>,
    ) -> Result<CircuitState> {
        if init.n_sites() != self.params.n_sites {
            return Err(Error::DimensionMismatch { expected: self.params.n_sites, found: init.n_sites() });
        }
        let mut state = if self.is_phonon_resolved() {
            CircuitState::Mixed(init.density_matrix())
        } else {
            CircuitState::Pure(init.clone())
        };
        observe(0, 0.0, &state)?;
        for k in 1..=self.plan.n_steps {
            self.step(&mut state)?;
            observe(k, k as f64 * self.plan.dt, &state)?;
        }
        Ok(state)
    }
}

/// Convenience wrapper: run a circuit and keep every intermediate state.
pub fn trotter_run(
    init: &QuditState,
    params: &ModelParams,
    plan: TrotterPlan,
    scheme: GateScheme,
    options: CircuitOptions,
) -> Result<(Vec<CircuitState>, CircuitReport)> {
    let mut circuit = Circuit::new(params, scheme, plan, options)?;
    let mut states = Vec::with_capacity(plan.n_steps + 1);
    circuit.run(init, |_, _, s| {
        states.push(s.clone());
        Ok(())
    })?;
    Ok((states, circuit.report().clone()))
}
