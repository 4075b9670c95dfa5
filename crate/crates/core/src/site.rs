// Copyright 2026 The qudit-lgt Authors
// SPDX-License-Identifier: Apache-2.0

//! Single dressed-site operators.
//!
//! A dressed site fuses the right rishon of the link on its left, the two-colour
//! matter site, and the left rishon of the link on its right. Gauss's law leaves
//! six states, labelled `|1⟩ … |6⟩`:
//!
//! | level | content                      | matter | rishons |
//! |-------|------------------------------|--------|---------|
//! | 1     | empty                        | 0      | 0       |
//! | 2     | colour singlet of two rishons| 0      | 2       |
//! | 3     | quark + left-link rishon     | 1      | 1 (R)   |
//! | 4     | quark + right-link rishon    | 1      | 1 (L)   |
//! | 5     | doubly occupied matter       | 2      | 0       |
//! | 6     | doubly occupied + both links | 2      | 2       |
//!
//! Every matrix here is written out entry by entry; `qudit-lgt-oracle` rebuilds
//! them from the fermionic construction and checks them against this catalog.

use std::fmt;

use nalgebra::SMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// 6×6 complex matrix acting on one dressed site.
pub type Mat6 = SMatrix<Complex64, 6, 6>;

/// Local dimension of a dressed site.
pub const SITE_DIM: usize = 6;

/// Default ratio between the D5/2 and S1/2 magnetic moments.
pub const DEFAULT_MOMENT_RATIO: f64 = 0.6;

const SQRT2: f64 = std::f64::consts::SQRT_2;

#[inline]
pub(crate) fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// A dressed-site level, stored with its 1-based label.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct Level(u8);

impl Level {
    pub const ALL: [Level; 6] = [Level(1), Level(2), Level(3), Level(4), Level(5), Level(6)];

    pub fn new(label: u8) -> Result<Self> {
        if (1..=6).contains(&label) {
            Ok(Level(label))
        } else {
            Err(Error::InvalidLevel(label))
        }
    }

    /// Level from a 0-based index; panics outside `0..6`.
    pub fn from_index(index: usize) -> Self {
        assert!(index < SITE_DIM, "level index {index} out of range");
        Level(index as u8 + 1)
    }

    pub fn label(self) -> u8 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize - 1
    }

    /// Cyclic successor, `|6⟩ → |1⟩`.
    pub fn cycled(self) -> Self {
        Level(self.0 % 6 + 1)
    }
}

impl TryFrom<u8> for Level {
    type Error = Error;
    fn try_from(v: u8) -> Result<Self> {
        Level::new(v)
    }
}

impl From<Level> for u8 {
    fn from(l: Level) -> u8 {
        l.0
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{}⟩", self.0)
    }
}

/// Tag identifying a site matrix in the catalog.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Symbol {
    A1,
    A2,
    B1,
    B2,
    /// Matter occupation.
    M,
    /// Rishon occupation on both links, proportional to the electric energy.
    C,
    /// Fermion parity of the rishon on the right-hand link.
    DL,
    /// Fermion parity of the rishon on the left-hand link.
    DR,
    /// Zeeman moment at the default moment ratio.
    F,
    QL,
    QR,
    HA2,
    HB2,
    /// Basis rotation applied on even sites.
    Urot,
    /// Occupation of the right-hand-link rishon alone; `C − K` is the left one.
    K,
    /// Cyclic level shift `|j⟩ → |j+1 mod 6⟩`.
    X,
}

impl Symbol {
    pub const ALL: [Symbol; 16] = [
        Symbol::A1,
        Symbol::A2,
        Symbol::B1,
        Symbol::B2,
        Symbol::M,
        Symbol::C,
        Symbol::DL,
        Symbol::DR,
        Symbol::F,
        Symbol::QL,
        Symbol::QR,
        Symbol::HA2,
        Symbol::HB2,
        Symbol::Urot,
        Symbol::K,
        Symbol::X,
    ];

    pub fn is_hermitian(self) -> bool {
        !matches!(self, Symbol::QL | Symbol::QR | Symbol::Urot | Symbol::X)
    }

    pub fn is_diagonal(self) -> bool {
        matches!(
            self,
            Symbol::M
                | Symbol::C
                | Symbol::DL
                | Symbol::DR
                | Symbol::F
                | Symbol::HA2
                | Symbol::HB2
                | Symbol::K
        )
    }
}

/// A tagged dressed-site matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SiteMatrix {
    pub symbol: Symbol,
    pub entries: Mat6,
}

impl SiteMatrix {
    /// Entry at 1-based `(row, col)`, matching the printed tables.
    pub fn at(&self, row: usize, col: usize) -> Complex64 {
        self.entries[(row - 1, col - 1)]
    }

    pub fn diagonal(&self) -> [f64; 6] {
        std::array::from_fn(|i| self.entries[(i, i)].re)
    }
}

fn from_entries(entries: &[(usize, usize, Complex64)]) -> Mat6 {
    let mut m = Mat6::zeros();
    for &(r, col, v) in entries {
        m[(r - 1, col - 1)] = v;
    }
    m
}

pub fn diag(values: [f64; 6]) -> Mat6 {
    Mat6::from_fn(|r, col| if r == col { c(values[r], 0.0) } else { c(0.0, 0.0) })
}

pub fn a1() -> Mat6 {
    from_entries(&[
        (1, 4, c(SQRT2, 0.0)),
        (4, 1, c(SQRT2, 0.0)),
        (2, 3, c(1.0, 0.0)),
        (3, 2, c(1.0, 0.0)),
        (3, 6, c(1.0, 0.0)),
        (6, 3, c(1.0, 0.0)),
        (4, 5, c(SQRT2, 0.0)),
        (5, 4, c(SQRT2, 0.0)),
    ])
}

pub fn a2() -> Mat6 {
    from_entries(&[
        (1, 4, c(0.0, SQRT2)),
        (4, 1, c(0.0, -SQRT2)),
        (2, 3, c(0.0, 1.0)),
        (3, 2, c(0.0, -1.0)),
        (3, 6, c(0.0, 1.0)),
        (6, 3, c(0.0, -1.0)),
        (4, 5, c(0.0, SQRT2)),
        (5, 4, c(0.0, -SQRT2)),
    ])
}

pub fn b1() -> Mat6 {
    from_entries(&[
        (1, 3, c(0.0, -SQRT2)),
        (3, 1, c(0.0, SQRT2)),
        (2, 4, c(0.0, -1.0)),
        (4, 2, c(0.0, 1.0)),
        (3, 5, c(0.0, -SQRT2)),
        (5, 3, c(0.0, SQRT2)),
        (4, 6, c(0.0, -1.0)),
        (6, 4, c(0.0, 1.0)),
    ])
}

pub fn b2() -> Mat6 {
    from_entries(&[
        (1, 3, c(SQRT2, 0.0)),
        (3, 1, c(SQRT2, 0.0)),
        (2, 4, c(1.0, 0.0)),
        (4, 2, c(1.0, 0.0)),
        (3, 5, c(SQRT2, 0.0)),
        (5, 3, c(SQRT2, 0.0)),
        (4, 6, c(1.0, 0.0)),
        (6, 4, c(1.0, 0.0)),
    ])
}

pub fn q_left() -> Mat6 {
    from_entries(&[
        (1, 4, c(SQRT2, 0.0)),
        (2, 3, c(1.0, 0.0)),
        (3, 6, c(1.0, 0.0)),
        (4, 5, c(SQRT2, 0.0)),
    ])
}

pub fn q_right() -> Mat6 {
    from_entries(&[
        (1, 3, c(0.0, -SQRT2)),
        (2, 4, c(0.0, -1.0)),
        (3, 5, c(0.0, -SQRT2)),
        (4, 6, c(0.0, -1.0)),
    ])
}

pub const MATTER: [f64; 6] = [0.0, 0.0, 1.0, 1.0, 2.0, 2.0];
pub const CASIMIR: [f64; 6] = [0.0, 2.0, 1.0, 1.0, 0.0, 2.0];
pub const PARITY_L: [f64; 6] = [1.0, -1.0, 1.0, -1.0, 1.0, -1.0];
pub const PARITY_R: [f64; 6] = [1.0, -1.0, -1.0, 1.0, 1.0, -1.0];
/// Diagonal of `(A¹)² + (A²)²`, halved.
pub const HA2_DIAG: [f64; 6] = [2.0, 1.0, 2.0, 4.0, 2.0, 1.0];
/// Diagonal of `(B¹)² + (B²)²`, halved.
pub const HB2_DIAG: [f64; 6] = [2.0, 1.0, 4.0, 2.0, 2.0, 1.0];
pub const RISHON_RIGHT_LINK: [f64; 6] = [0.0, 1.0, 0.0, 1.0, 0.0, 1.0];

/// Zeeman moment `diag(−3w, −w, −1, 1, w, 3w)` in units of the S1/2 moment.
pub fn zeeman_diag(w: f64) -> [f64; 6] {
    [-3.0 * w, -w, -1.0, 1.0, w, 3.0 * w]
}

pub fn rotation() -> Mat6 {
    from_entries(&[
        (1, 1, c(0.0, 1.0)),
        (2, 2, c(0.0, 1.0)),
        (3, 4, c(1.0, 0.0)),
        (4, 3, c(1.0, 0.0)),
        (5, 5, c(0.0, -1.0)),
        (6, 6, c(0.0, -1.0)),
    ])
}

pub fn cyclic_shift() -> Mat6 {
    Mat6::from_fn(|r, col| if r == (col + 1) % SITE_DIM { c(1.0, 0.0) } else { c(0.0, 0.0) })
}

/// Matrix for `symbol` with the default moment ratio for `F`.
pub fn site_matrix(symbol: Symbol) -> SiteMatrix {
    let entries = match symbol {
        Symbol::A1 => a1(),
        Symbol::A2 => a2(),
        Symbol::B1 => b1(),
        Symbol::B2 => b2(),
        Symbol::M => diag(MATTER),
        Symbol::C => diag(CASIMIR),
        Symbol::DL => diag(PARITY_L),
        Symbol::DR => diag(PARITY_R),
        Symbol::F => diag(zeeman_diag(DEFAULT_MOMENT_RATIO)),
        Symbol::QL => q_left(),
        Symbol::QR => q_right(),
        Symbol::HA2 => diag(HA2_DIAG),
        Symbol::HB2 => diag(HB2_DIAG),
        Symbol::Urot => rotation(),
        Symbol::K => diag(RISHON_RIGHT_LINK),
        Symbol::X => cyclic_shift(),
    };
    SiteMatrix { symbol, entries }
}

/// Every tagged site matrix.
pub fn build_site_matrices() -> Vec<SiteMatrix> {
    Symbol::ALL.iter().map(|&s| site_matrix(s)).collect()
}

pub fn max_abs(m: &Mat6) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-12;

    #[test]
    fn printed_entries() {
        let a = site_matrix(Symbol::A1);
        assert!((a.at(1, 4) - c(SQRT2, 0.0)).norm() < TOL);
        assert_eq!(site_matrix(Symbol::M).diagonal(), [0.0, 0.0, 1.0, 1.0, 2.0, 2.0]);
        assert_eq!(site_matrix(Symbol::C).diagonal(), [0.0, 2.0, 1.0, 1.0, 0.0, 2.0]);
        assert_eq!(site_matrix(Symbol::HA2).diagonal(), [2.0, 1.0, 2.0, 4.0, 2.0, 1.0]);
        assert_eq!(site_matrix(Symbol::HB2).diagonal(), [2.0, 1.0, 4.0, 2.0, 2.0, 1.0]);
    }

    #[test]
    fn hermitian_and_diagonal_flags() {
        for m in build_site_matrices() {
            if m.symbol.is_hermitian() {
                assert!(max_abs(&(m.entries - m.entries.adjoint())) < TOL, "{:?}", m.symbol);
            }
            if m.symbol.is_diagonal() {
                let off = m.entries - Mat6::from_diagonal(&m.entries.diagonal());
                assert!(max_abs(&off) < TOL, "{:?}", m.symbol);
            }
        }
    }

    #[test]
    fn parities_are_involutions() {
        for s in [Symbol::DL, Symbol::DR] {
            let d = site_matrix(s).entries;
            assert!(max_abs(&(d * d - Mat6::identity())) < TOL);
        }
    }

    #[test]
    fn rotation_is_unitary() {
        let u = rotation();
        assert!(max_abs(&(u * u.adjoint() - Mat6::identity())) < TOL);
    }

    #[test]
    fn hermitian_parts_of_q() {
        let i = c(0.0, 1.0);
        let (ql, qr) = (q_left(), q_right());
        assert!(max_abs(&(ql + ql.adjoint() - a1())) < TOL);
        assert!(max_abs(&((ql - ql.adjoint()) * i - a2())) < TOL);
        assert!(max_abs(&(qr + qr.adjoint() - b1())) < TOL);
        assert!(max_abs(&((qr - qr.adjoint()) * i - b2())) < TOL);
    }

    #[test]
    fn squares_collapse_to_diagonal_corrections() {
        let sa = a1() * a1() + a2() * a2();
        let sb = b1() * b1() + b2() * b2();
        assert!(max_abs(&(sa - diag(HA2_DIAG) * c(2.0, 0.0))) < TOL);
        assert!(max_abs(&(sb - diag(HB2_DIAG) * c(2.0, 0.0))) < TOL);
    }

    #[test]
    fn zeeman_is_traceless() {
        let f = zeeman_diag(0.6);
        assert!(f.iter().sum::<f64>().abs() < TOL);
        assert_eq!(f[2], -1.0);
    }

    #[test]
    fn cyclic_shift_wraps() {
        let x = cyclic_shift();
        assert_eq!(x[(0, 5)], c(1.0, 0.0));
        assert_eq!(Level::new(6).unwrap().cycled(), Level::new(1).unwrap());
    }

    #[test]
    fn level_bounds() {
        assert!(Level::new(0).is_err());
        assert!(Level::new(7).is_err());
        assert_eq!(Level::new(3).unwrap().index(), 2);
    }
}
