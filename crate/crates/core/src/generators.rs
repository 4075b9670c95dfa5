// Copyright 2026 The qudit-lgt Authors
// SPDX-License-Identifier: Apache-2.0

//! Two-level decomposition of the hopping factors.
//!
//! Each of `A¹, A², B¹, B²` is a sum of four two-level terms, two with unit
//! weight and two with weight √2. The disjoint-pair scheme splits each factor
//! into two halves whose transitions share no level.

use serde::{Deserialize, Serialize};

use crate::site::{c, Level, Mat6};

/// Pauli axis of a two-level term.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
}

/// `sign · weight · σ^{s1,s2}_axis`.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct TwoLevelGenerator {
    pub s1: Level,
    pub s2: Level,
    pub axis: Axis,
    pub weight: f64,
    pub sign: f64,
}

impl TwoLevelGenerator {
    fn new(s1: u8, s2: u8, axis: Axis, weight: f64, sign: f64) -> Self {
        debug_assert!(s1 < s2);
        TwoLevelGenerator {
            s1: Level::new(s1).expect("static level"),
            s2: Level::new(s2).expect("static level"),
            axis,
            weight,
            sign,
        }
    }

    /// The bare Pauli operator on the `(s1, s2)` pair, without weight or sign.
    pub fn pauli(&self) -> Mat6 {
        let (i, j) = (self.s1.index(), self.s2.index());
        let mut m = Mat6::zeros();
        match self.axis {
            Axis::X => {
                m[(i, j)] = c(1.0, 0.0);
                m[(j, i)] = c(1.0, 0.0);
            }
            Axis::Y => {
                m[(i, j)] = c(0.0, -1.0);
                m[(j, i)] = c(0.0, 1.0);
            }
        }
        m
    }

    pub fn matrix(&self) -> Mat6 {
        self.pauli() * c(self.sign * self.weight, 0.0)
    }

    /// Laser phase φ with `sign·σ_axis = cos φ σ_x + sin φ σ_y`.
    pub fn drive_phase(&self) -> f64 {
        use std::f64::consts::{FRAC_PI_2, PI};
        match (self.axis, self.sign > 0.0) {
            (Axis::X, true) => 0.0,
            (Axis::X, false) => PI,
            (Axis::Y, true) => FRAC_PI_2,
            (Axis::Y, false) => -FRAC_PI_2,
        }
    }

    /// Relative Rabi frequency of the transition, 1 or √2.
    pub fn rabi_ratio(&self) -> f64 {
        self.weight
    }
}

/// Which part of the hopping block a group of transitions implements.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Role {
    /// `A^{(k)}` on the left site of a bond.
    A(u8),
    /// `B^{(k)}` on the right site of a bond.
    B(u8),
    /// `α^{(k)}_q`.
    Alpha { k: u8, q: u8 },
    /// `β^{(k)}_q`.
    Beta { k: u8, q: u8 },
}

impl Role {
    pub fn k(self) -> u8 {
        match self {
            Role::A(k) | Role::B(k) | Role::Alpha { k, .. } | Role::Beta { k, .. } => k,
        }
    }

    pub fn acts_left(self) -> bool {
        matches!(self, Role::A(_) | Role::Alpha { .. })
    }
}

/// Transitions driven simultaneously on one ion.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorGroup {
    pub role: Role,
    pub terms: Vec<TwoLevelGenerator>,
}

impl GeneratorGroup {
    pub fn matrix(&self) -> Mat6 {
        self.terms.iter().fold(Mat6::zeros(), |acc, t| acc + t.matrix())
    }
}

/// How many transitions are driven simultaneously per entangling gate.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DriveScheme {
    /// One transition per ion: products of two-level Pauli terms.
    TwoLevel,
    /// Two disjoint transitions per ion.
    DisjointPair,
    /// All four transitions of a hopping factor at once.
    FullMs,
}

const R2: f64 = std::f64::consts::SQRT_2;

fn a_terms(k: u8) -> [TwoLevelGenerator; 4] {
    use Axis::*;
    let (axis, sign) = if k == 1 { (X, 1.0) } else { (Y, -1.0) };
    [
        TwoLevelGenerator::new(2, 3, axis, 1.0, sign),
        TwoLevelGenerator::new(1, 4, axis, R2, sign),
        TwoLevelGenerator::new(4, 5, axis, R2, sign),
        TwoLevelGenerator::new(3, 6, axis, 1.0, sign),
    ]
}

fn b_terms(k: u8) -> [TwoLevelGenerator; 4] {
    use Axis::*;
    let axis = if k == 1 { Y } else { X };
    [
        TwoLevelGenerator::new(2, 4, axis, 1.0, 1.0),
        TwoLevelGenerator::new(1, 3, axis, R2, 1.0),
        TwoLevelGenerator::new(3, 5, axis, R2, 1.0),
        TwoLevelGenerator::new(4, 6, axis, 1.0, 1.0),
    ]
}

/// `α^{(k)}_q`: q = 1 drives (2,3) and (1,4), q = 2 drives (3,6) and (4,5).
pub fn alpha(k: u8, q: u8) -> GeneratorGroup {
    let t = a_terms(k);
    let terms = if q == 1 { vec![t[0], t[1]] } else { vec![t[3], t[2]] };
    GeneratorGroup { role: Role::Alpha { k, q }, terms }
}

/// `β^{(k)}_q`: q = 1 drives (4,6) and (1,3), q = 2 drives (2,4) and (3,5).
pub fn beta(k: u8, q: u8) -> GeneratorGroup {
    let t = b_terms(k);
    let terms = if q == 1 { vec![t[3], t[1]] } else { vec![t[0], t[2]] };
    GeneratorGroup { role: Role::Beta { k, q }, terms }
}

pub fn a_group(k: u8) -> GeneratorGroup {
    GeneratorGroup { role: Role::A(k), terms: a_terms(k).to_vec() }
}

pub fn b_group(k: u8) -> GeneratorGroup {
    GeneratorGroup { role: Role::B(k), terms: b_terms(k).to_vec() }
}

/// Generator groups for a drive scheme, ordered by `k`.
pub fn hopping_generators(scheme: DriveScheme) -> Vec<GeneratorGroup> {
    let mut out = Vec::new();
    for k in [1u8, 2] {
        match scheme {
            DriveScheme::FullMs => {
                out.push(a_group(k));
                out.push(b_group(k));
            }
            DriveScheme::DisjointPair => {
                for q in [1u8, 2] {
                    out.push(alpha(k, q));
                }
                for q in [1u8, 2] {
                    out.push(beta(k, q));
                }
            }
            DriveScheme::TwoLevel => {
                for t in a_terms(k) {
                    out.push(GeneratorGroup { role: Role::A(k), terms: vec![t] });
                }
                for t in b_terms(k) {
                    out.push(GeneratorGroup { role: Role::B(k), terms: vec![t] });
                }
            }
        }
    }
    out
}
