// Copyright 2026 The qudit-lgt Authors
// SPDX-License-Identifier: Apache-2.0

//! Constituent operators with a fermion grading and their Jordan-Wigner
//! embedding into a product of constituent spaces.

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type CMat = DMatrix<Complex64>;

pub(crate) fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub(crate) fn real(rows: usize, cols: usize, data: &[f64]) -> CMat {
    CMat::from_row_iterator(rows, cols, data.iter().map(|&x| c(x, 0.0)))
}

pub(crate) fn diag(values: &[f64]) -> CMat {
    CMat::from_diagonal(&nalgebra::DVector::from_iterator(values.len(), values.iter().map(|&x| c(x, 0.0))))
}

pub(crate) fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

pub(crate) fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Local action on one constituent together with that constituent's parity.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedOperator {
    pub local_action: CMat,
    pub parity: CMat,
    pub is_fermionic: bool,
}

impl GradedOperator {
    pub fn fermion(local_action: CMat, parity: CMat) -> Self {
        GradedOperator { local_action, parity, is_fermionic: true }
    }

    pub fn boson(local_action: CMat, parity: CMat) -> Self {
        GradedOperator { local_action, parity, is_fermionic: false }
    }

    pub fn adjoint(&self) -> Self {
        GradedOperator { local_action: self.local_action.adjoint(), ..self.clone() }
    }

    /// `‖P² − 1‖` plus, for fermions, `‖{P, F}‖`.
    pub fn grading_defect(&self) -> f64 {
        let p = &self.parity;
        let id = CMat::identity(p.nrows(), p.ncols());
        let mut d = max_abs(&(p * p - id));
        if self.is_fermionic {
            let anti = p * &self.local_action + &self.local_action * p;
            d = d.max(max_abs(&anti));
        }
        d
    }
}

/// Ordered product of constituent spaces; Jordan-Wigner strings run over
/// the constituents to the left of the target.
#[derive(Clone, Debug)]
pub struct ConstituentChain {
    pub parities: Vec<CMat>,
}

impl ConstituentChain {
    pub fn new(parities: Vec<CMat>) -> Self {
        ConstituentChain { parities }
    }

    pub fn dim(&self) -> usize {
        self.parities.iter().map(|p| p.nrows()).product()
    }

    /// Global action of `op` placed on constituent `slot`.
    pub fn embed(&self, slot: usize, op: &GradedOperator) -> CMat {
        let mut out = CMat::identity(1, 1);
        for (i, p) in self.parities.iter().enumerate() {
            let factor = if i == slot {
                op.local_action.clone()
            } else if i < slot && op.is_fermionic {
                p.clone()
            } else {
                CMat::identity(p.nrows(), p.ncols())
            };
            out = kron(&out, &factor);
        }
        out
    }

    pub fn total_parity(&self) -> CMat {
        self.parities.iter().fold(CMat::identity(1, 1), |acc, p| kron(&acc, p))
    }
}
