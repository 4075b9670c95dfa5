// Copyright 2026 The qudit-lgt Authors
// SPDX-License-Identifier: Apache-2.0

//! Lanczos approximation of `exp(−i t H) v` for Hermitian `H`.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operator::LinearOperator;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KrylovConfig {
    /// Error bound per substep.
    pub tol: f64,
    /// Largest Krylov subspace.
    pub max_dim: usize,
    /// Memory budget for the stored Lanczos basis, in bytes.
    pub basis_bytes: usize,
    /// Give up after this many halvings of a substep.
    pub max_halvings: u32,
}

impl Default for KrylovConfig {
    fn default() -> Self {
        KrylovConfig { tol: 1e-10, max_dim: 40, basis_bytes: 768 << 20, max_halvings: 30 }
    }
}

impl KrylovConfig {
    fn effective_dim(&self, n: usize) -> usize {
        let per = n * std::mem::size_of::<Complex64>();
        let by_memory = (self.basis_bytes / per.max(1)).max(8);
        self.max_dim.min(by_memory).min(n.max(1))
    }
}

/// Statistics of one propagation call.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct KrylovStats {
    pub substeps: usize,
    pub matvecs: usize,
    pub max_error: f64,
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Lanczos basis and tridiagonal projection built from `v`.
struct Lanczos {
    basis: Vec<Vec<Complex64>>,
    alpha: Vec<f64>,
    beta: Vec<f64>,
    /// β after the last vector, used for the error estimate.
    residual: f64,
}

/// Builds at most `m` Lanczos vectors, stopping early once `enough(α, β, r)`
/// reports that the current subspace meets the caller's accuracy goal.
fn lanczos<O: LinearOperator + ?Sized>(
    h: &O,
    v: &[Complex64],
    m: usize,
    enough: impl Fn(&[f64], &[f64], f64) -> bool,
) -> Lanczos {
    let n = v.len();
    let nv = norm(v);
    let mut basis: Vec<Vec<Complex64>> = vec![v.iter().map(|z| z / nv).collect()];
    let mut alpha = Vec::with_capacity(m);
    let mut beta = Vec::with_capacity(m);
    let mut w = vec![ZERO; n];
    let mut residual = 0.0;
    for j in 0..m {
        h.apply_into(&basis[j], &mut w);
        // full reorthogonalization; a second pass only when the first one
        // cancelled most of the vector
        let mut a = 0.0;
        let mut before = norm(&w);
        for _ in 0..2 {
            for (k, q) in basis.iter().enumerate() {
                let c = dot(q, &w);
                if k == j {
                    a += c.re;
                }
                w.iter_mut().zip(q).for_each(|(x, y)| *x -= c * y);
            }
            let after = norm(&w);
            if after > 0.7 * before {
                break;
            }
            before = after;
        }
        alpha.push(a);
        let b = norm(&w);
        residual = b;
        if j + 1 == m || b < 1e-13 * nv.max(1.0) * (1.0 + a.abs()) || enough(&alpha, &beta, b) {
            break;
        }
        beta.push(b);
        basis.push(w.iter().map(|z| z / b).collect());
    }
    Lanczos { basis, alpha, beta, residual }
}

/// `exp(−i τ T) e₁` for the real symmetric tridiagonal `T`.
fn small_exp(alpha: &[f64], beta: &[f64], tau: f64) -> Vec<Complex64> {
    let m = alpha.len();
    let t = DMatrix::from_fn(m, m, |r, c| {
        if r == c {
            alpha[r]
        } else if r + 1 == c {
            beta[r]
        } else if c + 1 == r {
            beta[c]
        } else {
            0.0
        }
    });
    let eig = SymmetricEigen::new(t);
    (0..m)
        .map(|r| {
            (0..m)
                .map(|k| {
                    let phase = Complex64::from_polar(1.0, -eig.eigenvalues[k] * tau);
                    phase * eig.eigenvectors[(r, k)] * eig.eigenvectors[(0, k)]
                })
                .sum()
        })
        .collect()
}

/// Propagates `v` by `exp(−i t H)`, splitting `t` into adaptive substeps so
/// that each meets `cfg.tol`.
pub fn expm_multiply<O: LinearOperator + ?Sized>(
    h: &O,
    v: &[Complex64],
    t: f64,
    cfg: &KrylovConfig,
) -> Result<(Vec<Complex64>, KrylovStats)> {
    let mut stats = KrylovStats::default();
    let mut x = v.to_vec();
    if t == 0.0 || norm(v) == 0.0 {
        return Ok((x, stats));
    }
    let m = cfg.effective_dim(v.len());
    let mut remaining = t;
    let mut tau = t;
    let mut halvings = 0u32;
    while remaining.abs() > 0.0 {
        if tau.abs() > remaining.abs() {
            tau = remaining;
        }
        let nx = norm(&x);
        let lz = lanczos(h, &x, m, |alpha, beta, b| {
            alpha.len() >= 4 && b * small_exp(alpha, beta, tau).last().map_or(0.0, |z| z.norm()) * nx <= cfg.tol
        });
        stats.matvecs += lz.alpha.len();
        let happy = lz.alpha.len() < m && lz.residual < 1e-13 * nx.max(1.0) * (1.0 + lz.alpha.last().unwrap().abs());
        loop {
            let c = small_exp(&lz.alpha, &lz.beta, tau);
            let err = if happy { 0.0 } else { lz.residual * c[c.len() - 1].norm() * nx };
            if err <= cfg.tol {
                let mut y = vec![ZERO; x.len()];
                for (q, ck) in lz.basis.iter().zip(&c) {
                    y.iter_mut().zip(q).for_each(|(a, b)| *a += ck * b * nx);
                }
                x = y;
                remaining -= tau;
                stats.substeps += 1;
                stats.max_error = stats.max_error.max(err);
                if remaining.abs() < 1e-15 * t.abs() {
                    remaining = 0.0;
                }
                // grow when the subspace had room to spare
                if lz.alpha.len() < m / 2 {
                    tau *= 1.5;
                }
                break;
            }
            tau *= 0.5;
            halvings += 1;
            if halvings > cfg.max_halvings {
                return Err(Error::Numerical(format!(
                    "Krylov step did not reach tolerance {:e} with subspace {m}",
                    cfg.tol
                )));
            }
        }
    }
    Ok((x, stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::expm_hermitian;
    use crate::operator::CMatrix;

    #[test]
    fn matches_dense_exponential() {
        let n = 60;
        let h = CMatrix::from_fn(n, n, |r, c| {
            let x = ((r * 31 + c * 17) % 13) as f64 - 6.0;
            let y = ((r * 7 + c * 3) % 5) as f64 - 2.0;
            Complex64::new(x + ((c * 31 + r * 17) % 13) as f64 - 6.0, y - (((c * 7 + r * 3) % 5) as f64 - 2.0))
        });
        let v: Vec<Complex64> = (0..n).map(|i| Complex64::new((i as f64).sin(), (i as f64).cos())).collect();
        let nv = norm(&v);
        let v: Vec<Complex64> = v.iter().map(|z| z / nv).collect();
        let t = 0.8;
        let (x, stats) = expm_multiply(&h, &v, t, &KrylovConfig::default()).unwrap();
        let u = expm_hermitian(&h, t);
        let y = &u * nalgebra::DVector::from_column_slice(&v);
        let diff: f64 = x.iter().zip(y.iter()).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt();
        assert!(diff < 1e-9, "diff {diff}, stats {stats:?}");
        assert!((norm(&x) - 1.0).abs() < 1e-10);
    }
}
