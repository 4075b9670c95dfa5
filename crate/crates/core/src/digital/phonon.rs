// Copyright 2026 The qudit-lgt Authors
// SPDX-License-Identifier: Apache-2.0

//! Phonon-resolved Mølmer–Sørensen gate.
//!
//! In the interaction picture and in units of the detuning, the gate
//! Hamiltonian is `H(τ) = (r/2) G ⊗ (a† e^{isτ} + a e^{−isτ})` for
//! `τ ∈ [0, 2πℓ]`, with `G` the single-ion generator, `s = sign(ν − δ)` and
//! `r = ηΩ/|ν − δ|`. A step `dt` fixes `r² = |dt|/(πℓ)`.
//!
//! `G` is diagonalized once; each eigenvalue `g` drives a forced oscillator
//! that is integrated with the fourth-order commutator-free Magnus scheme.
//! The phonon starts in the (optionally thermal) ground state before every
//! gate and is traced out afterwards, so the gate acts on the qudits as a
//! channel with Kraus operators `K_{k,n} = √p_n ⟨k|U|n⟩`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{expm_hermitian, HermitianEigen};
use crate::operator::CMatrix;

const SQRT3: f64 = 1.732_050_807_568_877_2;

/// Motional-mode settings of the phonon-resolved gates.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PhononConfig {
    /// Fock-space truncation (number of levels kept).
    pub n_max: usize,
    /// Number of closed loops `ℓ` in phase space per gate.
    pub loops: u32,
    /// `sign(ν − δ)`. The forward gate `exp(−i dt/2 G²)` with `dt > 0` needs
    /// `−1`; `+1` produces the time-reversed gate.
    pub detuning_sign: f64,
    /// Mean thermal occupation of the mode before each gate.
    pub thermal_nbar: f64,
    /// Largest change between substep doublings accepted by the integrator.
    pub tol: f64,
}

impl Default for PhononConfig {
    fn default() -> Self {
        PhononConfig { n_max: 8, loops: 1, detuning_sign: -1.0, thermal_nbar: 0.0, tol: 1e-9 }
    }
}

impl PhononConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_max < 4 {
            return Err(Error::param(format!("phonon truncation n_max={} is below 4", self.n_max)));
        }
        if self.loops == 0 {
            return Err(Error::param("phonon loop count must be positive"));
        }
        if self.detuning_sign.abs() != 1.0 {
            return Err(Error::param("detuning_sign must be +1 or -1"));
        }
        if !(self.thermal_nbar >= 0.0) {
            return Err(Error::param("thermal_nbar must be non-negative"));
        }
        Ok(())
    }

    /// Drive ratio `r = sqrt(|dt| / (πℓ))`.
    pub fn drive_ratio(&self, dt: f64) -> f64 {
        (dt.abs() / (std::f64::consts::PI * self.loops as f64)).sqrt()
    }

    /// Populations of the initial phonon state (truncated, renormalized).
    pub fn initial_populations(&self) -> Vec<f64> {
        if self.thermal_nbar == 0.0 {
            let mut p = vec![0.0; self.n_max];
            p[0] = 1.0;
            return p;
        }
        let q = self.thermal_nbar / (1.0 + self.thermal_nbar);
        let raw: Vec<f64> = (0..self.n_max).map(|n| q.powi(n as i32)).collect();
        let z: f64 = raw.iter().sum();
        raw.into_iter().map(|x| x / z).collect()
    }
}

fn ladder(n: usize) -> CMatrix {
    let mut a = CMatrix::zeros(n, n);
    for k in 1..n {
        a[(k - 1, k)] = Complex64::new((k as f64).sqrt(), 0.0);
    }
    a
}

/// Phonon propagator for a single generator eigenvalue `g`.
fn oscillator_propagator(g: f64, r: f64, sign: f64, loops: u32, n_max: usize, substeps: usize) -> CMatrix {
    let a = ladder(n_max);
    let ad = a.adjoint();
    let amp = 0.5 * r * g;
    let h_at = |tau: f64| -> CMatrix {
        let e = Complex64::from_polar(1.0, sign * tau);
        (&ad * e + &a * e.conj()) * Complex64::new(amp, 0.0)
    };
    let total = 2.0 * std::f64::consts::PI * loops as f64;
    let h = total / substeps as f64;
    let (c1, c2) = (0.5 - SQRT3 / 6.0, 0.5 + SQRT3 / 6.0);
    let (w1, w2) = ((3.0 - 2.0 * SQRT3) / 12.0, (3.0 + 2.0 * SQRT3) / 12.0);
    let mut u = CMatrix::identity(n_max, n_max);
    for step in 0..substeps {
        let t0 = step as f64 * h;
        let h1 = h_at(t0 + c1 * h);
        let h2 = h_at(t0 + c2 * h);
        let first = expm_hermitian(&(&h1 * Complex64::new(w2, 0.0) + &h2 * Complex64::new(w1, 0.0)), h);
        let second = expm_hermitian(&(&h1 * Complex64::new(w1, 0.0) + &h2 * Complex64::new(w2, 0.0)), h);
        u = second * first * u;
    }
    u
}

/// Result of integrating one phonon-resolved gate.
#[derive(Clone, Debug)]
pub struct MsChannel {
    /// Kraus operators on the two-qudit space.
    pub kraus: Vec<CMatrix>,
    /// Largest phonon excitation `1 − |⟨0|U_g|0⟩|²` over generator eigenvalues.
    pub residual_excitation: f64,
    /// Magnus substeps used per gate.
    pub substeps: usize,
    pub drive_ratio: f64,
    /// Eigenbasis `V` of the generator; every Kraus operator is diagonal in it.
    pub basis: CMatrix,
    /// `Σ_k c_{k,j} c*_{k,j'}` in that eigenbasis, so that the channel is
    /// `ϱ ↦ V [coherence ∘ (V†ϱV)] V†`.
    pub coherence: CMatrix,
}

impl MsChannel {
    pub fn dim(&self) -> usize {
        self.kraus[0].nrows()
    }

    /// `Σ K†K`, which should be the identity.
    pub fn completeness(&self) -> CMatrix {
        let d = self.dim();
        self.kraus.iter().fold(CMatrix::zeros(d, d), |acc, k| acc + k.adjoint() * k)
    }

    /// Entanglement infidelity `1 − Σ|tr(U†K)|²/d²` to a target unitary.
    pub fn infidelity_to(&self, target: &CMatrix) -> f64 {
        let d = self.dim() as f64;
        let f: f64 = self.kraus.iter().map(|k| (target.adjoint() * k).trace().norm_sqr()).sum::<f64>() / (d * d);
        (1.0 - f).max(0.0)
    }

    /// Applies the channel to the bond `(site, site+1)` of a chain.
    pub fn apply_to_bond(&self, rho: &mut crate::state::DensityMatrix, site: usize) {
        rho.conjugate_bond_in_place(site, &self.basis.adjoint());
        rho.hadamard_bond(site, &self.coherence);
        rho.conjugate_bond_in_place(site, &self.basis);
    }

    /// `Σ_k K ϱ K†` on a matrix of the gate's own dimension.
    pub fn apply(&self, rho: &CMatrix) -> CMatrix {
        let d = self.dim();
        self.kraus.iter().fold(CMatrix::zeros(d, d), |acc, k| acc + k * rho * k.adjoint())
    }
}

/// Integrates the MS gate with single-ion generator `generator` for a
/// Trotter step `dt`.
pub fn ms_channel(generator: &CMatrix, dt: f64, cfg: &PhononConfig) -> Result<MsChannel> {
    cfg.validate()?;
    let r = cfg.drive_ratio(dt);
    // a negative step reverses the detuning
    let sign = if dt < 0.0 { -cfg.detuning_sign } else { cfg.detuning_sign };
    let eig = HermitianEigen::new(generator);
    let n = cfg.n_max;
    let mut distinct: Vec<f64> = Vec::new();
    for &g in eig.values.iter() {
        if !distinct.iter().any(|&d| (d - g).abs() < 1e-10) {
            distinct.push(g);
        }
    }
    let mut substeps = 16 * cfg.loops as usize;
    let mut props = integrate_all(&distinct, r, sign, cfg, substeps);
    loop {
        let finer = integrate_all(&distinct, r, sign, cfg, 2 * substeps);
        let change = props
            .iter()
            .zip(&finer)
            .map(|(a, b)| (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max))
            .fold(0.0, f64::max);
        substeps *= 2;
        props = finer;
        if change < cfg.tol {
            break;
        }
        if substeps > 1 << 16 {
            return Err(Error::Numerical(format!("phonon integrator did not converge (change {change:e})")));
        }
    }
    let lookup = |g: f64| distinct.iter().position(|&d| (d - g).abs() < 1e-10).expect("eigenvalue present");
    let pops = cfg.initial_populations();
    let mut kraus = Vec::new();
    let d = eig.values.len();
    let mut coherence = CMatrix::zeros(d, d);
    for (n0, &p) in pops.iter().enumerate() {
        if p < 1e-14 {
            continue;
        }
        for kf in 0..n {
            let c: Vec<Complex64> = (0..d).map(|j| props[lookup(eig.values[j])][(kf, n0)]).collect();
            for j in 0..d {
                for jp in 0..d {
                    coherence[(j, jp)] += c[j] * c[jp].conj() * p;
                }
            }
            let mut scaled = eig.vectors.clone();
            for j in 0..eig.values.len() {
                let amp = props[lookup(eig.values[j])][(kf, n0)] * p.sqrt();
                scaled.column_mut(j).iter_mut().for_each(|z| *z *= amp);
            }
            let k = scaled * eig.vectors.adjoint();
            if k.iter().any(|z| z.norm() > 1e-15) {
                kraus.push(k);
            }
        }
    }
    let residual_excitation =
        props.iter().map(|u| 1.0 - u[(0, 0)].norm_sqr()).fold(0.0, f64::max).max(0.0);
    Ok(MsChannel { kraus, residual_excitation, substeps, drive_ratio: r, basis: eig.vectors, coherence })
}

fn integrate_all(values: &[f64], r: f64, sign: f64, cfg: &PhononConfig, substeps: usize) -> Vec<CMatrix> {
    values
        .iter()
        .map(|&g| oscillator_propagator(g, r, sign, cfg.loops, cfg.n_max, substeps))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digital::gates::{full_generator, gate_ideal};
    use crate::linalg::max_diff;

    #[test]
    fn forced_oscillator_closes_with_geometric_phase() {
        // a full loop leaves exp(+i s π ℓ r² g²/2) on the vacuum
        let (g, r) = (1.3, 0.2);
        let u = oscillator_propagator(g, r, -1.0, 1, 12, 256);
        let phase = -std::f64::consts::PI * r * r * g * g / 2.0;
        assert!((u[(0, 0)] - Complex64::from_polar(1.0, phase)).norm() < 1e-9);
    }

    #[test]
    fn zero_drive_is_identity() {
        let ch = ms_channel(&full_generator(1), 0.0, &PhononConfig::default()).unwrap();
        assert_eq!(ch.kraus.len(), 1);
        assert!(max_diff(&ch.kraus[0], &CMatrix::identity(36, 36)) < 1e-12);
    }

    #[test]
    fn channel_matches_effective_gate_at_small_drive() {
        let dt = 0.01 * std::f64::consts::PI;
        let ch = ms_channel(&full_generator(2), dt, &PhononConfig::default()).unwrap();
        assert!(max_diff(&ch.completeness(), &CMatrix::identity(36, 36)) < 1e-10);
        assert!(ch.infidelity_to(&gate_ideal(2, dt)) < 1e-6);
        assert!(ch.residual_excitation < 5.0 * ch.drive_ratio.powi(2));
        // wrong detuning sign gives the inverse gate
        let cfg = PhononConfig { detuning_sign: 1.0, ..Default::default() };
        let back = ms_channel(&full_generator(2), dt, &cfg).unwrap();
        assert!(back.infidelity_to(&gate_ideal(2, -dt)) < 1e-6);
    }

    #[test]
    fn thermal_populations_normalized() {
        let cfg = PhononConfig { thermal_nbar: 0.3, ..Default::default() };
        assert!((cfg.initial_populations().iter().sum::<f64>() - 1.0).abs() < 1e-15);
        let ch = ms_channel(&full_generator(1), 0.05, &cfg).unwrap();
        assert!(max_diff(&ch.completeness(), &CMatrix::identity(36, 36)) < 1e-8);
    }

    #[test]
    fn eigenbasis_form_matches_kraus_sum() {
        use crate::state::QuditState;
        let cfg = PhononConfig { thermal_nbar: 0.2, ..Default::default() };
        let ch = ms_channel(&full_generator(1), 0.4, &cfg).unwrap();
        let psi = QuditState::from_amplitudes(
            3,
            (0..216).map(|i| Complex64::new((i as f64 * 0.37).sin(), (i as f64 * 0.11).cos())).collect(),
        )
        .unwrap();
        let mut rho = psi.density_matrix();
        let mut kraus_sum = CMatrix::zeros(216, 216);
        for k in &ch.kraus {
            kraus_sum += rho.conjugate_bond(2, k);
        }
        ch.apply_to_bond(&mut rho, 2);
        assert!(max_diff(rho.matrix(), &kraus_sum) < 1e-9);
    }
}
