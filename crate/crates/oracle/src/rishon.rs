// Copyright 2026 The qudit-lgt Authors
// SPDX-License-Identifier: Apache-2.0

//! Rishon and matter constituents of a dressed site.
//!
//! Rishon basis `{|0⟩, |r⟩, |g⟩}`, matter basis `{|0⟩, |r⟩, |g⟩, |d⟩}`
//! with `|d⟩ = ψ†_r ψ†_g |0⟩`.

use crate::graded::{c, diag, real, CMat, GradedOperator};

/// Color index of a rishon or quark mode.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Color {
    Red,
    Green,
}

impl Color {
    pub const ALL: [Color; 2] = [Color::Red, Color::Green];

    pub fn name(self) -> &'static str {
        match self {
            Color::Red => "r",
            Color::Green => "g",
        }
    }
}

pub fn rishon_parity() -> CMat {
    diag(&[1.0, -1.0, -1.0])
}

pub fn matter_parity() -> CMat {
    diag(&[1.0, -1.0, -1.0, 1.0])
}

/// Exotic fermion `ζ_a` on one rishon.
pub fn zeta(a: Color) -> GradedOperator {
    let m = match a {
        Color::Red => real(3, 3, &[0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0]),
        Color::Green => real(3, 3, &[0.0, 0.0, 1.0, -1.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
    };
    GradedOperator::fermion(m, rishon_parity())
}

/// Quark annihilator `ψ_a` on the four-dimensional matter space.
pub fn psi(a: Color) -> GradedOperator {
    // ψ†_r |g⟩ = |d⟩ and ψ†_g |r⟩ = −|d⟩ follow from |d⟩ = ψ†_r ψ†_g |0⟩
    let mut dag = CMat::zeros(4, 4);
    match a {
        Color::Red => {
            dag[(1, 0)] = c(1.0, 0.0);
            dag[(3, 2)] = c(1.0, 0.0);
        }
        Color::Green => {
            dag[(2, 0)] = c(1.0, 0.0);
            dag[(3, 1)] = c(-1.0, 0.0);
        }
    }
    GradedOperator::fermion(dag.adjoint(), matter_parity())
}

/// Rishon occupation `K = diag(0, 1, 1)`.
pub fn rishon_occupation() -> GradedOperator {
    GradedOperator::boson(diag(&[0.0, 1.0, 1.0]), rishon_parity())
}

/// Spin-½ generators on the colored rishon doublet, zero on `|0⟩`.
pub fn rishon_spin() -> [CMat; 3] {
    let half = 0.5;
    let mut sx = CMat::zeros(3, 3);
    let mut sy = CMat::zeros(3, 3);
    let mut sz = CMat::zeros(3, 3);
    sx[(1, 2)] = c(half, 0.0);
    sx[(2, 1)] = c(half, 0.0);
    sy[(1, 2)] = c(0.0, -half);
    sy[(2, 1)] = c(0.0, half);
    sz[(1, 1)] = c(half, 0.0);
    sz[(2, 2)] = c(-half, 0.0);
    [sx, sy, sz]
}

/// `|L|²` on a single rishon.
pub fn rishon_casimir() -> CMat {
    rishon_spin().iter().map(|s| s * s).fold(CMat::zeros(3, 3), |a, b| a + b)
}

/// Local action of `ψ†_a σ^ν_{ab} ψ_b / 2` on the matter space.
pub fn matter_spin() -> [CMat; 3] {
    let sigma = pauli();
    let ops: Vec<CMat> = Color::ALL.iter().map(|&a| psi(a).local_action).collect();
    std::array::from_fn(|nu| {
        let mut s = CMat::zeros(4, 4);
        for (i, pa) in ops.iter().enumerate() {
            for (j, pb) in ops.iter().enumerate() {
                s += pa.adjoint() * pb * (sigma[nu][(i, j)] * 0.5);
            }
        }
        s
    })
}

/// Number operator on matter.
pub fn matter_number() -> CMat {
    Color::ALL.iter().map(|&a| psi(a).local_action).fold(CMat::zeros(4, 4), |acc, p| acc + p.adjoint() * &p)
}

fn pauli() -> [CMat; 3] {
    [
        real(2, 2, &[0.0, 1.0, 1.0, 0.0]),
        CMat::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)]),
        real(2, 2, &[1.0, 0.0, 0.0, -1.0]),
    ]
}
