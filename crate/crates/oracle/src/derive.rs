// Copyright 2026 The qudit-lgt Authors
// SPDX-License-Identifier: Apache-2.0

//! Site matrices rebuilt from rishon and quark operators.

use num_complex::Complex64;
use qudit_lgt::site::Mat6;
use qudit_lgt::Symbol;

use crate::dressed::{build_dressed_basis, DressedSiteSpace, SLOT_L, SLOT_MATTER, SLOT_R};
use crate::graded::{c, CMat, GradedOperator};
use crate::rishon::{matter_number, matter_parity, psi, rishon_occupation, rishon_parity, zeta, Color};

/// Tolerance for a derived operator to count as staying inside the dressed
/// span.
pub const LEAK_TOL: f64 = 1e-12;

/// Operator ordering used for `Q_R`. The written definition pairs the right
/// rishon creator with the quark annihilator; the two orders differ by a
/// global sign since the operators anticommute.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum QrOrdering {
    /// `−i Σ_a ζ†_{R a} ψ_a`.
    RishonFirst,
    /// `−i Σ_a ψ_a ζ†_{R a}`.
    QuarkFirst,
}

#[derive(Clone, Debug)]
pub struct DerivedMatrix {
    pub symbol: Symbol,
    pub matrix: Mat6,
    /// Weight of the derived operator outside the dressed span.
    pub leakage: f64,
}

pub struct Derivation {
    pub space: DressedSiteSpace,
    pub matrices: Vec<DerivedMatrix>,
    pub qr_ordering: QrOrdering,
}

fn to_mat6(m: &CMat) -> Mat6 {
    Mat6::from_fn(|r, col| m[(r, col)])
}

fn dagger(op: &GradedOperator) -> GradedOperator {
    op.adjoint()
}

/// `Q_L = Σ_a ζ†_{L a} ψ_a`.
pub fn q_left_full(space: &DressedSiteSpace) -> CMat {
    Color::ALL
        .iter()
        .map(|&a| space.embed(SLOT_L, &dagger(&zeta(a))) * space.embed(SLOT_MATTER, &psi(a)))
        .fold(CMat::zeros(36, 36), |acc, x| acc + x)
}

pub fn q_right_full(space: &DressedSiteSpace, ordering: QrOrdering) -> CMat {
    let mi = Complex64::new(0.0, -1.0);
    Color::ALL
        .iter()
        .map(|&a| {
            let z = space.embed(SLOT_R, &dagger(&zeta(a)));
            let p = space.embed(SLOT_MATTER, &psi(a));
            match ordering {
                QrOrdering::RishonFirst => z * p,
                QrOrdering::QuarkFirst => p * z,
            }
        })
        .fold(CMat::zeros(36, 36), |acc, x| acc + x)
        * mi
}

fn project(space: &DressedSiteSpace, symbol: Symbol, full: &CMat) -> DerivedMatrix {
    let (m, leakage) = space.project(full);
    DerivedMatrix { symbol, matrix: to_mat6(&m), leakage }
}

/// Builds `Q_L, Q_R, A¹, A², B¹, B², M, C` and the link-parity operators
/// with `Q_R` in the requested ordering.
pub fn derive_with(ordering: QrOrdering) -> Derivation {
    let space = build_dressed_basis();
    let ql = project(&space, Symbol::QL, &q_left_full(&space));
    let qr = project(&space, Symbol::QR, &q_right_full(&space, ordering));
    let i = c(0.0, 1.0);
    let herm = |q: &Mat6| q + q.adjoint();
    let anti = |q: &Mat6| (q - q.adjoint()) * i;
    let occ = rishon_occupation();
    let number = GradedOperator::boson(matter_number(), matter_parity());
    let parity = GradedOperator::boson(rishon_parity(), rishon_parity());
    let c_full = space.embed(SLOT_R, &occ) + space.embed(SLOT_L, &occ);
    let matrices = vec![
        DerivedMatrix { symbol: Symbol::A1, matrix: herm(&ql.matrix), leakage: ql.leakage },
        DerivedMatrix { symbol: Symbol::A2, matrix: anti(&ql.matrix), leakage: ql.leakage },
        DerivedMatrix { symbol: Symbol::B1, matrix: herm(&qr.matrix), leakage: qr.leakage },
        DerivedMatrix { symbol: Symbol::B2, matrix: anti(&qr.matrix), leakage: qr.leakage },
        project(&space, Symbol::M, &space.embed(SLOT_MATTER, &number)),
        project(&space, Symbol::C, &c_full),
        // D^L and K live on the rishon of the right-hand link, D^R on the
        // rishon of the left-hand link
        project(&space, Symbol::DL, &space.embed(SLOT_L, &parity)),
        project(&space, Symbol::DR, &space.embed(SLOT_R, &parity)),
        project(&space, Symbol::K, &space.embed(SLOT_L, &occ)),
        ql,
        qr,
    ];
    Derivation { space, matrices, qr_ordering: ordering }
}
