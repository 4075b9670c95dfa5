// Copyright 2026 The qudit-lgt Authors
// SPDX-License-Identifier: Apache-2.0

//! Strong-coupling reductions: the fourth-order baryon hopping rate `J_eff`,
//! its extraction from exact three-site dynamics, and the spin-chain
//! reference models.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::SpectralPropagator;
use crate::hamiltonian::build_hamiltonian;
use crate::krylov::{expm_multiply, KrylovConfig};
use crate::operator::LinearOperator;
use crate::params::ModelParams;
use crate::state::QuditState;

/// `J_eff = 16/(m ḡ⁴) + 8/(g² ḡ⁴)` with `ḡ² = g² + m`.
pub fn jeff(g2: f64, m: f64) -> Result<f64> {
    if !(g2 > 0.0 && m > 0.0) || !g2.is_finite() || !m.is_finite() {
        return Err(Error::param(format!("J_eff needs g2 > 0 and m > 0, got g2={g2}, m={m}")));
    }
    let gb4 = (g2 + m).powi(2);
    Ok(16.0 / (m * gb4) + 8.0 / (g2 * gb4))
}

/// Fitted transfer frequency of a baryon between neighbouring quark sites.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrequencyFit {
    /// Time of the first transfer maximum.
    pub first_max_time: f64,
    /// Population at that maximum.
    pub peak_population: f64,
    /// Angular frequency of the population oscillation, `π / t_max`.
    pub frequency: f64,
    /// Same quantity from the peak of a windowed Fourier transform.
    pub dft_frequency: f64,
}

/// Population of `|1⟩|5⟩|5⟩` when starting from `|5⟩|5⟩|1⟩` on three sites
/// whose first site is a quark site.
pub struct TransferProbe {
    prop: SpectralPropagator,
    init: QuditState,
    target: QuditState,
}

impl TransferProbe {
    pub fn new(g2: f64, m: f64) -> Result<Self> {
        let params = ModelParams::new(3, m, g2)?.with_stagger_offset(1)?;
        let prop = SpectralPropagator::new(&build_hamiltonian(&params)?)?;
        Ok(TransferProbe {
            prop,
            init: QuditState::product_labels(&[5, 5, 1])?,
            target: QuditState::product_labels(&[1, 5, 5])?,
        })
    }

    pub fn population(&self, t: f64) -> f64 {
        self.prop.propagate(&self.init, t).inner(&self.target).norm_sqr()
    }
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let flo = f(lo) > 0.0;
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0) == flo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Evolves `|5⟩|5⟩|1⟩` exactly and extracts the baryon transfer frequency.
///
/// The first maximum is located as the midpoint of the two half-population
/// crossings around it, which is insensitive to the small fast wiggles
/// riding on the slow transfer. The scan scale comes from `J_eff` itself.
pub fn effective_hopping_frequency(g2: f64, m: f64) -> Result<FrequencyFit> {
    let guess = jeff(g2, m)?;
    let probe = TransferProbe::new(g2, m)?;
    let expected_max = std::f64::consts::PI / (2.0 * guess);
    let h = expected_max / 400.0;
    let f = |t: f64| probe.population(t) - 0.5;
    let mut t = 0.0;
    let mut up = None;
    let mut down = None;
    let mut prev = f(0.0);
    while t < 4.0 * expected_max {
        let next = f(t + h);
        if up.is_none() && prev <= 0.0 && next > 0.0 {
            up = Some(bisect(f, t, t + h));
        } else if up.is_some() && prev > 0.0 && next <= 0.0 {
            down = Some(bisect(f, t, t + h));
            break;
        }
        prev = next;
        t += h;
    }
    let (Some(a), Some(b)) = (up, down) else {
        return Err(Error::Numerical(format!(
            "population transfer never crossed one half for g2={g2}, m={m}"
        )));
    };
    let t_max = 0.5 * (a + b);
    let frequency = std::f64::consts::PI / t_max;
    let dft_frequency = dft_peak(&probe, frequency, 4.0 * t_max);
    Ok(FrequencyFit { first_max_time: t_max, peak_population: probe.population(t_max), frequency, dft_frequency })
}

/// Peak of the Hann-windowed Fourier transform of the transfer population
/// over `[0, span]`, searched within ±50% of `around`.
fn dft_peak(probe: &TransferProbe, around: f64, span: f64) -> f64 {
    let n = 4096;
    let dt = span / n as f64;
    let samples: Vec<f64> = (0..n).map(|k| probe.population(k as f64 * dt)).collect();
    let mean = samples.iter().sum::<f64>() / n as f64;
    let windowed: Vec<f64> = samples
        .iter()
        .enumerate()
        .map(|(k, s)| {
            let w = 0.5 - 0.5 * (2.0 * std::f64::consts::PI * k as f64 / (n - 1) as f64).cos();
            (s - mean) * w
        })
        .collect();
    let power = |omega: f64| -> f64 {
        windowed
            .iter()
            .enumerate()
            .map(|(k, &x)| Complex64::from_polar(x, -omega * k as f64 * dt))
            .sum::<Complex64>()
            .norm_sqr()
    };
    let (mut lo, mut hi) = (0.5 * around, 1.5 * around);
    // coarse grid, then golden-section refinement
    let grid = 200;
    let best = (0..=grid)
        .map(|i| lo + (hi - lo) * i as f64 / grid as f64)
        .max_by(|a, b| power(*a).total_cmp(&power(*b)))
        .expect("non-empty grid");
    let step = (hi - lo) / grid as f64;
    lo = best - step;
    hi = best + step;
    let g = 0.618_033_988_749_895;
    for _ in 0..60 {
        let x1 = hi - g * (hi - lo);
        let x2 = lo + g * (hi - lo);
        if power(x1) > power(x2) {
            hi = x2;
        } else {
            lo = x1;
        }
    }
    0.5 * (lo + hi)
}

/// XXZ chain `Σ [j_xy (σ⁺σ⁻ + σ⁻σ⁺) + j_z σᶻσᶻ] + h Σ (−1)ⁿ σᶻ` on `N`
/// spins with open boundaries. Bit `N−n` of a basis index is spin `n`
/// (1 = up).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpinChainModel {
    pub n_sites: usize,
    pub j_xy: f64,
    pub j_z: f64,
    pub staggered_field: f64,
}

/// Largest spin chain evolved by the reference models.
pub const MAX_SPIN_SITES: usize = 16;

impl SpinChainModel {
    /// `−(4/ḡ²) Σ σⁿ·σⁿ⁺¹ + m Σ (−1)ⁿ σᶻ` with `ḡ² = g² + m`.
    pub fn heisenberg(n_sites: usize, g2: f64, m: f64) -> Result<Self> {
        let gb2 = g2 + m;
        if !(gb2 > 0.0) {
            return Err(Error::param("ḡ² = g² + m must be positive"));
        }
        let j = -4.0 / gb2;
        Self::checked(SpinChainModel { n_sites, j_xy: 2.0 * j, j_z: j, staggered_field: m })
    }

    /// `J_eff Σ (σ⁺σ⁻ + h.c.)`.
    pub fn tight_binding(n_sites: usize, j_eff: f64) -> Result<Self> {
        Self::checked(SpinChainModel { n_sites, j_xy: j_eff, j_z: 0.0, staggered_field: 0.0 })
    }

    fn checked(m: Self) -> Result<Self> {
        if m.n_sites < 2 || m.n_sites > MAX_SPIN_SITES {
            return Err(Error::Capacity(format!(
                "spin chains need 2..={MAX_SPIN_SITES} sites, got {}",
                m.n_sites
            )));
        }
        Ok(m)
    }

    fn spin(&self, index: usize, site: usize) -> bool {
        (index >> (self.n_sites - site)) & 1 == 1
    }

    /// Basis index of a configuration given as up/down per site.
    pub fn index_of(&self, up: &[bool]) -> usize {
        up.iter().fold(0, |acc, &u| (acc << 1) | usize::from(u))
    }

    /// `⟨σᶻ_n⟩` for every site.
    pub fn magnetization(&self, psi: &[Complex64]) -> Vec<f64> {
        (1..=self.n_sites)
            .map(|n| {
                psi.iter()
                    .enumerate()
                    .map(|(i, z)| if self.spin(i, n) { z.norm_sqr() } else { -z.norm_sqr() })
                    .sum()
            })
            .collect()
    }

    pub fn evolve(&self, psi: &[Complex64], times: &[f64], cfg: &KrylovConfig) -> Result<Vec<Vec<Complex64>>> {
        let mut out = Vec::with_capacity(times.len());
        let mut cur = psi.to_vec();
        let mut now = 0.0;
        for &t in times {
            if t < now {
                return Err(Error::param("time grid must be non-decreasing"));
            }
            if t > now {
                cur = expm_multiply(self, &cur, t - now, cfg)?.0;
                now = t;
            }
            out.push(cur.clone());
        }
        Ok(out)
    }
}

impl LinearOperator for SpinChainModel {
    fn dim(&self) -> usize {
        1 << self.n_sites
    }

    fn apply_into(&self, x: &[Complex64], y: &mut [Complex64]) {
        let n = self.n_sites;
        for (i, out) in y.iter_mut().enumerate() {
            let mut diag = 0.0;
            for s in 1..=n {
                let z = if self.spin(i, s) { 1.0 } else { -1.0 };
                let sign = if s % 2 == 0 { 1.0 } else { -1.0 };
                diag += self.staggered_field * sign * z;
                if s < n {
                    let z2 = if self.spin(i, s + 1) { 1.0 } else { -1.0 };
                    diag += self.j_z * z * z2;
                }
            }
            let mut acc = x[i] * diag;
            for s in 1..n {
                if self.spin(i, s) != self.spin(i, s + 1) {
                    let j = i ^ (0b11 << (n - s - 1));
                    acc += x[j] * self.j_xy;
                }
            }
            *out = acc;
        }
    }
}
