// Copyright 2026 The qudit-lgt Authors
// SPDX-License-Identifier: Apache-2.0

//! Dense helpers for small Hermitian generators.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::operator::CMatrix;

/// Eigendecomposition `H = V diag(λ) V†` of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: DVector<f64>,
    pub vectors: CMatrix,
}

impl HermitianEigen {
    pub fn new(h: &CMatrix) -> Self {
        // symmetrize against rounding before handing to the solver
        let sym = (h + h.adjoint()) * Complex64::new(0.5, 0.0);
        let eig = SymmetricEigen::new(sym);
        HermitianEigen { values: eig.eigenvalues, vectors: eig.eigenvectors }
    }

    /// `f(H) = V diag(f(λ)) V†`.
    pub fn map(&self, f: impl Fn(f64) -> Complex64) -> CMatrix {
        let d = self.values.len();
        let mut scaled = self.vectors.clone();
        for j in 0..d {
            let fj = f(self.values[j]);
            scaled.column_mut(j).iter_mut().for_each(|z| *z *= fj);
        }
        scaled * self.vectors.adjoint()
    }

    /// `exp(−i t H)`.
    pub fn propagator(&self, t: f64) -> CMatrix {
        self.map(|l| Complex64::from_polar(1.0, -l * t))
    }
}

/// `exp(−i t H)` for a Hermitian `H`.
pub fn expm_hermitian(h: &CMatrix, t: f64) -> CMatrix {
    HermitianEigen::new(h).propagator(t)
}

/// Largest absolute entry of `a − b`.
pub fn max_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `‖U†U − 1‖_max`.
pub fn unitarity_defect(u: &CMatrix) -> f64 {
    let d = u.nrows();
    max_diff(&(u.adjoint() * u), &DMatrix::identity(d, d))
}

/// Kronecker product of two complex matrices.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}
