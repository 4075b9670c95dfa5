// Copyright 2026 The qudit-lgt Authors
// SPDX-License-Identifier: Apache-2.0

//! Static magnetic-field noise ensembles and the overall performance
//! estimator.
//!
//! Each realization draws one Zeeman coupling `b_r` uniformly from
//! `[−Δb, Δb]` and keeps it fixed in time and space. Random numbers come from
//! ChaCha8 seeded with `seed`; realization `r` uses stream `r`, and
//! `b_r = Δb·(2u_r − 1)` with `u_r` the first `f64` of that stream. The same
//! `u_r` are therefore reused across a sweep over `Δb`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::digital::trotter::{Circuit, CircuitOptions, TrotterPlan};
use crate::digital::GateScheme;
use crate::error::{Error, Result};
use crate::exact::evolve;
use crate::hamiltonian::{build_hamiltonian, build_zeeman};
use crate::krylov::KrylovConfig;
use crate::observables::{snapshot, ObservableSeries, StringWindow};
use crate::params::ModelParams;
use crate::site::DEFAULT_MOMENT_RATIO;
use crate::state::QuditState;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct NoiseEnsemble {
    pub delta_b: f64,
    pub w: f64,
    pub realizations: usize,
    pub seed: u64,
}

impl Default for NoiseEnsemble {
    fn default() -> Self {
        NoiseEnsemble { delta_b: 0.0, w: DEFAULT_MOMENT_RATIO, realizations: 100, seed: 0 }
    }
}

impl NoiseEnsemble {
    pub fn validate(&self) -> Result<()> {
        if !(self.delta_b >= 0.0) || !self.delta_b.is_finite() {
            return Err(Error::param(format!("delta_b must be non-negative, got {}", self.delta_b)));
        }
        if self.realizations == 0 {
            return Err(Error::param("need at least one noise realization"));
        }
        if !(self.w > 0.0) {
            return Err(Error::param("moment ratio w must be positive"));
        }
        Ok(())
    }

    /// Uniform variates `u_r ∈ [0, 1)`, one per realization.
    pub fn uniforms(&self) -> Vec<f64> {
        (0..self.realizations)
            .map(|r| {
                let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
                rng.set_stream(r as u64);
                rng.random::<f64>()
            })
            .collect()
    }

    /// Zeeman couplings `b_r`.
    pub fn couplings(&self) -> Vec<f64> {
        self.uniforms().into_iter().map(|u| self.delta_b * (2.0 * u - 1.0)).collect()
    }
}

/// Ensemble averages along a trajectory.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoisyResult {
    /// Densities of the realization-averaged state.
    pub series: ObservableSeries,
    /// Mean and standard deviation of the fidelity to the noiseless reference.
    pub fidelity_mean: Vec<f64>,
    pub fidelity_std: Vec<f64>,
    pub couplings: Vec<f64>,
}

struct Accumulator {
    times: Vec<f64>,
    marginals: Vec<Vec<[f64; 6]>>,
    fid: Vec<Vec<f64>>,
}

impl Accumulator {
    fn new(times: &[f64], n_sites: usize) -> Self {
        Accumulator {
            times: times.to_vec(),
            marginals: vec![vec![[0.0; 6]; n_sites]; times.len()],
            fid: vec![Vec::new(); times.len()],
        }
    }

    fn add(&mut self, k: usize, marg: &[[f64; 6]], f: f64) {
        for (acc, m) in self.marginals[k].iter_mut().zip(marg) {
            for (a, b) in acc.iter_mut().zip(m) {
                *a += b;
            }
        }
        self.fid[k].push(f);
    }

    fn finish(self, params: &ModelParams, window: Option<StringWindow>, couplings: Vec<f64>) -> NoisyResult {
        let count = couplings.len() as f64;
        let mut series = ObservableSeries::new(params.n_sites, window);
        let mut mean = Vec::new();
        let mut std = Vec::new();
        for ((t, marg), fids) in self.times.iter().zip(self.marginals).zip(self.fid) {
            let avg: Vec<[f64; 6]> = marg.iter().map(|m| m.map(|x| x / count)).collect();
            series.push(*t, snapshot(&avg, params, window));
            let mu = fids.iter().sum::<f64>() / count;
            let var = fids.iter().map(|f| (f - mu).powi(2)).sum::<f64>() / count;
            mean.push(mu);
            std.push(var.sqrt());
        }
        series.fidelity = mean.clone();
        NoisyResult { series, fidelity_mean: mean, fidelity_std: std, couplings }
    }
}

/// Exact evolution under `H + H_Z(b_r)` for every realization, compared with
/// the noiseless trajectory `reference`.
pub fn run_noisy_exact(
    init: &QuditState,
    params: &ModelParams,
    times: &[f64],
    ensemble: &NoiseEnsemble,
    reference: &[QuditState],
    window: Option<StringWindow>,
    krylov: &KrylovConfig,
) -> Result<NoisyResult> {
    ensemble.validate()?;
    if reference.len() != times.len() {
        return Err(Error::GridMismatch("reference trajectory length".into()));
    }
    let h0 = build_hamiltonian(params)?;
    let couplings = ensemble.couplings();
    let mut acc = Accumulator::new(times, params.n_sites);
    for &b in &couplings {
        let h = if b == 0.0 { h0.clone() } else { h0.plus(&build_zeeman(params.n_sites, b, ensemble.w)?)? };
        let states = evolve(init, &h, times, krylov)?;
        for (k, (s, r)) in states.iter().zip(reference).enumerate() {
            acc.add(k, &s.marginals(), s.inner(r).norm_sqr());
        }
    }
    Ok(acc.finish(params, window, couplings))
}

/// Digital run with `H_Z(b_r)` folded into the diagonal layer of every step.
#[allow(clippy::too_many_arguments)]
pub fn run_noisy_digital(
    init: &QuditState,
    params: &ModelParams,
    plan: TrotterPlan,
    scheme: GateScheme,
    options: CircuitOptions,
    ensemble: &NoiseEnsemble,
    reference: &[QuditState],
    window: Option<StringWindow>,
) -> Result<NoisyResult> {
    ensemble.validate()?;
    if reference.len() != plan.n_steps + 1 {
        return Err(Error::GridMismatch("reference trajectory length".into()));
    }
    let couplings = ensemble.couplings();
    let mut acc = Accumulator::new(&plan.times(), params.n_sites);
    // one circuit so that gate channels are integrated once
    let mut circuit = Circuit::new(params, scheme, plan, options)?;
    for &b in &couplings {
        circuit.set_zeeman(if b == 0.0 { None } else { Some((b, ensemble.w)) });
        circuit.run(init, |k, _, s| {
            acc.add(k, &s.marginals(), s.fidelity_to(&reference[k])?);
            Ok(())
        })?;
    }
    Ok(acc.finish(params, window, couplings))
}

/// `P = F · F_MS^{N_gates}`.
pub fn performance(fidelity: f64, f_ms: f64, n_gates: usize) -> Result<f64> {
    if !(0.0..=1.0).contains(&f_ms) {
        return Err(Error::param(format!("gate fidelity must lie in [0, 1], got {f_ms}")));
    }
    Ok(fidelity * f_ms.powi(n_gates as i32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::dirac_vacuum;

    #[test]
    fn performance_closed_form() {
        assert_eq!(performance(0.7, 1.0, 40).unwrap(), 0.7);
        assert_eq!(performance(0.7, 0.9, 0).unwrap(), 0.7);
        assert!((performance(1.0, 0.99, 12).unwrap() - 0.886_384).abs() < 1e-6);
        assert!(performance(1.0, 1.2, 1).is_err());
    }

    #[test]
    fn couplings_are_reproducible_and_scale() {
        let e = NoiseEnsemble { delta_b: 0.1, realizations: 5, seed: 7, ..Default::default() };
        let b = e.couplings();
        assert_eq!(b, e.couplings());
        assert!(b.iter().all(|x| x.abs() <= 0.1));
        let e2 = NoiseEnsemble { delta_b: 0.2, ..e };
        for (x, y) in b.iter().zip(e2.couplings()) {
            assert!((2.0 * x - y).abs() < 1e-15);
        }
    }

    #[test]
    fn zero_width_reproduces_noiseless_run() {
        let p = ModelParams::new(3, 0.77, 0.77).unwrap();
        let v = dirac_vacuum(&p).unwrap();
        let plan = TrotterPlan::new(1, 0.05, 4).unwrap();
        let mut c = Circuit::new(&p, GateScheme::IdealEffective, plan, CircuitOptions::default()).unwrap();
        let mut reference = Vec::new();
        c.run(&v, |_, _, s| {
            if let crate::digital::CircuitState::Pure(q) = s {
                reference.push(q.clone());
            }
            Ok(())
        })
        .unwrap();
        let e = NoiseEnsemble { delta_b: 0.0, realizations: 3, ..Default::default() };
        let r = run_noisy_digital(&v, &p, plan, GateScheme::IdealEffective, CircuitOptions::default(), &e, &reference, None)
            .unwrap();
        assert!(r.fidelity_mean.iter().all(|&f| (f - 1.0).abs() < 1e-12), "{:?}", r.fidelity_mean);
    }

    #[test]
    fn level_three_phase_under_static_field() {
        // −b F on level 3 is +b per site; under e^{−iHt} that is e^{−ibt}
        let b = 0.3;
        let h = build_zeeman(2, b, 0.6).unwrap();
        let psi = QuditState::product_labels(&[3, 3]).unwrap();
        let out = evolve(&psi, &h, &[1.5], &KrylovConfig::default()).unwrap();
        let expected = num_complex::Complex64::from_polar(1.0, -2.0 * b * 1.5);
        assert!((out[0].inner(&psi).conj() - expected).norm() < 1e-12);
    }
}
