// Copyright 2026 The qudit-lgt Authors
// SPDX-License-Identifier: Apache-2.0

//! Exact time evolution under a many-body Hamiltonian.

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::krylov::{expm_multiply, KrylovConfig};
use crate::linalg::HermitianEigen;
use crate::operator::{LinearOperator, ManyBodyOperator};
use crate::state::QuditState;

/// Uniform grid `0, dt, …, n·dt`.
pub fn uniform_grid(dt: f64, n: usize) -> Vec<f64> {
    (0..=n).map(|k| k as f64 * dt).collect()
}

fn check_grid(times: &[f64]) -> Result<()> {
    if times.iter().any(|t| !t.is_finite()) || times.first().is_some_and(|&t| t < 0.0) {
        return Err(Error::param("time grid must be finite and start at t ≥ 0"));
    }
    if times.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::param("time grid must be non-decreasing"));
    }
    Ok(())
}

/// States `|Ψ(t)⟩ = e^{−iHt}|Ψ(0)⟩` at every point of `times`, where `state`
/// is taken at `t = 0`.
pub fn evolve(
    state: &QuditState,
    h: &ManyBodyOperator,
    times: &[f64],
    cfg: &KrylovConfig,
) -> Result<Vec<QuditState>> {
    check_grid(times)?;
    if h.dim() != state.dim() {
        return Err(Error::DimensionMismatch { expected: h.dim(), found: state.dim() });
    }
    let mut out = Vec::with_capacity(times.len());
    let mut current = state.amplitudes().to_vec();
    let mut t_now = 0.0;
    for &t in times {
        if t > t_now {
            current = expm_multiply(h, &current, t - t_now, cfg)?.0;
            t_now = t;
        }
        out.push(QuditState::from_amplitudes(state.n_sites(), current.clone())?);
    }
    Ok(out)
}

/// Dense spectral propagator for small chains; the reference for the Krylov
/// path and for digital-circuit fidelities.
#[derive(Clone, Debug)]
pub struct SpectralPropagator {
    n_sites: usize,
    eig: HermitianEigen,
}

impl SpectralPropagator {
    /// Diagonalizes `h` densely. Intended for `6^N ≤ 1296`.
    pub fn new(h: &ManyBodyOperator) -> Result<Self> {
        if h.n_sites() > 4 {
            return Err(Error::Capacity(format!(
                "dense diagonalization limited to 4 sites, got {}",
                h.n_sites()
            )));
        }
        Ok(SpectralPropagator { n_sites: h.n_sites(), eig: HermitianEigen::new(&h.to_dense()) })
    }

    pub fn eigenvalues(&self) -> &[f64] {
        self.eig.values.as_slice()
    }

    pub fn propagate(&self, state: &QuditState, t: f64) -> QuditState {
        let v = DVector::from_column_slice(state.amplitudes());
        let coeffs = self.eig.vectors.adjoint() * v;
        let phased = DVector::from_fn(coeffs.len(), |k, _| {
            coeffs[k] * Complex64::from_polar(1.0, -self.eig.values[k] * t)
        });
        let y = &self.eig.vectors * phased;
        QuditState::from_amplitudes(self.n_sites, y.as_slice().to_vec()).expect("dimension preserved")
    }

    pub fn evolve(&self, state: &QuditState, times: &[f64]) -> Result<Vec<QuditState>> {
        check_grid(times)?;
        Ok(times.iter().map(|&t| self.propagate(state, t)).collect())
    }
}
