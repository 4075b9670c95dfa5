// Copyright 2026 The qudit-lgt Authors
// SPDX-License-Identifier: Apache-2.0

//! Occupation probabilities, lattice densities and string densities.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::ModelParams;
use crate::site::MATTER;
use crate::state::{DensityMatrix, QuditState};

/// String window `[n_s, n_s + l]` for the string-averaged densities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StringWindow {
    pub start: usize,
    pub length: usize,
}

/// Densities at one instant.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Snapshot {
    pub p_s: Vec<f64>,
    pub p_d: Vec<f64>,
    pub rho_s: f64,
    pub rho_d: f64,
    pub n_b: f64,
    pub string: Option<[f64; 3]>,
}

impl Snapshot {
    pub fn rho(&self) -> f64 {
        self.rho_s + self.rho_d
    }
}

/// Single occupancy `P(3) + P(4)` of one site.
pub fn single_occupancy(marg: &[f64; 6]) -> f64 {
    marg[2] + marg[3]
}

/// Double occupancy: `P(5) + P(6)` on quark sites, `P(1) + P(2)` otherwise.
pub fn double_occupancy(marg: &[f64; 6], quark_site: bool) -> f64 {
    if quark_site {
        marg[4] + marg[5]
    } else {
        marg[0] + marg[1]
    }
}

/// Rishons on the link between a site with marginals `left` and `right`.
pub fn link_rishons(left: &[f64; 6], right: &[f64; 6]) -> f64 {
    left[1] + left[3] + left[5] + right[1] + right[2] + right[5]
}

pub fn snapshot(marginals: &[[f64; 6]], params: &ModelParams, window: Option<StringWindow>) -> Snapshot {
    let n = params.n_sites;
    let p_s: Vec<f64> = marginals.iter().map(single_occupancy).collect();
    let p_d: Vec<f64> = marginals
        .iter()
        .enumerate()
        .map(|(i, m)| double_occupancy(m, params.is_quark_site(i + 1)))
        .collect();
    let norm = 1.0 / (2.0 * n as f64);
    let rho_s = norm * p_s.iter().sum::<f64>();
    let rho_d = norm * p_d.iter().sum::<f64>();
    let n_b = marginals
        .iter()
        .map(|m| m.iter().zip(MATTER).map(|(p, mv)| p * 0.5 * (mv - 1.0)).sum::<f64>())
        .sum();
    let string = window.map(|w| {
        let sites = w.start - 1..w.start + w.length;
        let scale = 1.0 / (2.0 * (w.length + 1) as f64);
        let s = scale * p_s[sites.clone()].iter().sum::<f64>();
        let d = scale * p_d[sites].iter().sum::<f64>();
        let e = (w.start..w.start + w.length)
            .map(|k| link_rishons(&marginals[k - 1], &marginals[k]))
            .sum::<f64>()
            / (2.0 * w.length as f64);
        [s, d, e]
    });
    Snapshot { p_s, p_d, rho_s, rho_d, n_b, string }
}

/// Time-indexed record of the densities along a trajectory.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ObservableSeries {
    pub times: Vec<f64>,
    pub n_sites: usize,
    /// `p_s[t][n]`.
    pub p_s: Vec<Vec<f64>>,
    pub p_d: Vec<Vec<f64>>,
    pub rho_s: Vec<f64>,
    pub rho_d: Vec<f64>,
    pub rho: Vec<f64>,
    pub n_b: Vec<f64>,
    pub window: Option<StringWindow>,
    /// `ρ̃_s, ρ̃_d, ρ̃_E` when a string window is set.
    pub string_s: Vec<f64>,
    pub string_d: Vec<f64>,
    pub string_e: Vec<f64>,
    /// Fidelity against a reference trajectory, when one exists.
    pub fidelity: Vec<f64>,
}

impl ObservableSeries {
    pub fn new(n_sites: usize, window: Option<StringWindow>) -> Self {
        ObservableSeries { n_sites, window, ..Default::default() }
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn push(&mut self, t: f64, snap: Snapshot) {
        self.times.push(t);
        self.rho.push(snap.rho());
        self.rho_s.push(snap.rho_s);
        self.rho_d.push(snap.rho_d);
        self.n_b.push(snap.n_b);
        if let Some([s, d, e]) = snap.string {
            self.string_s.push(s);
            self.string_d.push(d);
            self.string_e.push(e);
        }
        self.p_s.push(snap.p_s);
        self.p_d.push(snap.p_d);
    }

    pub fn push_marginals(&mut self, t: f64, marginals: &[[f64; 6]], params: &ModelParams) {
        self.push(t, snapshot(marginals, params, self.window));
    }

    /// `ρ_d − ρ_s` at every time.
    pub fn rho_d_minus_s(&self) -> Vec<f64> {
        self.rho_d.iter().zip(&self.rho_s).map(|(d, s)| d - s).collect()
    }

    /// `Σ_k c_k · series_k` on a common grid; fidelity is dropped.
    pub fn linear_combination(terms: &[(f64, &ObservableSeries)]) -> Result<ObservableSeries> {
        let (_, first) = terms.first().ok_or_else(|| Error::param("empty combination"))?;
        for (_, s) in terms {
            if s.n_sites != first.n_sites || s.window != first.window {
                return Err(Error::GridMismatch("series describe different lattices".into()));
            }
            if s.times.len() != first.times.len()
                || s.times.iter().zip(&first.times).any(|(a, b)| (a - b).abs() > 1e-12 * (1.0 + a.abs()))
            {
                return Err(Error::GridMismatch(format!(
                    "{} points vs {} points",
                    s.times.len(),
                    first.times.len()
                )));
            }
        }
        let comb = |get: &dyn Fn(&ObservableSeries) -> &Vec<f64>| -> Vec<f64> {
            (0..get(first).len())
                .map(|i| terms.iter().map(|(c, s)| c * get(s)[i]).sum())
                .collect()
        };
        let comb2 = |get: &dyn Fn(&ObservableSeries) -> &Vec<Vec<f64>>| -> Vec<Vec<f64>> {
            (0..get(first).len())
                .map(|i| {
                    (0..first.n_sites).map(|n| terms.iter().map(|(c, s)| c * get(s)[i][n]).sum()).collect()
                })
                .collect()
        };
        Ok(ObservableSeries {
            times: first.times.clone(),
            n_sites: first.n_sites,
            p_s: comb2(&|s| &s.p_s),
            p_d: comb2(&|s| &s.p_d),
            rho_s: comb(&|s| &s.rho_s),
            rho_d: comb(&|s| &s.rho_d),
            rho: comb(&|s| &s.rho),
            n_b: comb(&|s| &s.n_b),
            window: first.window,
            string_s: comb(&|s| &s.string_s),
            string_d: comb(&|s| &s.string_d),
            string_e: comb(&|s| &s.string_e),
            fidelity: Vec::new(),
        })
    }
}

/// Densities of every state of a pure trajectory.
pub fn measure(
    states: &[QuditState],
    times: &[f64],
    params: &ModelParams,
    window: Option<StringWindow>,
) -> Result<ObservableSeries> {
    if states.len() != times.len() {
        return Err(Error::GridMismatch(format!("{} states for {} times", states.len(), times.len())));
    }
    let mut series = ObservableSeries::new(params.n_sites, window);
    for (s, &t) in states.iter().zip(times) {
        series.push_marginals(t, &s.marginals(), params);
    }
    Ok(series)
}

/// Densities of a mixed-state trajectory.
pub fn measure_mixed(
    states: &[DensityMatrix],
    times: &[f64],
    params: &ModelParams,
    window: Option<StringWindow>,
) -> Result<ObservableSeries> {
    if states.len() != times.len() {
        return Err(Error::GridMismatch(format!("{} states for {} times", states.len(), times.len())));
    }
    let mut series = ObservableSeries::new(params.n_sites, window);
    for (s, &t) in states.iter().zip(times) {
        series.push_marginals(t, &s.marginals(), params);
    }
    Ok(series)
}

/// `a − b` channel by channel.
pub fn vacuum_subtract(a: &ObservableSeries, b: &ObservableSeries) -> Result<ObservableSeries> {
    ObservableSeries::linear_combination(&[(1.0, a), (-1.0, b)])
}
