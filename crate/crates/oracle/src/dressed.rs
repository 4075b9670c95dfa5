// Copyright 2026 The qudit-lgt Authors
// SPDX-License-Identifier: Apache-2.0

//! The six gauge-invariant dressed-site states inside
//! `(R rishon of the left link) ⊗ matter ⊗ (L rishon of the right link)`.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::graded::{c, max_abs, CMat, GradedOperator};
use crate::rishon::{matter_parity, rishon_parity};
use crate::graded::ConstituentChain;

pub const SLOT_R: usize = 0;
pub const SLOT_MATTER: usize = 1;
pub const SLOT_L: usize = 2;
pub const DRESSED_DIM: usize = 36;

/// Constituent labels used to spell product kets.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Rishon {
    Empty,
    Red,
    Green,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Matter {
    Empty,
    Red,
    Green,
    Double,
}

/// Index of `|R, matter, L⟩` in the 36-dimensional product space.
pub fn product_index(r: Rishon, m: Matter, l: Rishon) -> usize {
    (r as usize) * 12 + (m as usize) * 3 + l as usize
}

#[derive(Clone, Debug)]
pub struct DressedSiteSpace {
    /// 36 × 6 isometry whose columns are the dressed states `|1⟩ … |6⟩`.
    pub basis: CMat,
    pub chain: ConstituentChain,
}

pub fn constituent_chain() -> ConstituentChain {
    ConstituentChain::new(vec![rishon_parity(), matter_parity(), rishon_parity()])
}

pub fn build_dressed_basis() -> DressedSiteSpace {
    use Matter as M;
    use Rishon as R;
    let s = FRAC_1_SQRT_2;
    let kets: [&[(f64, R, M, R)]; 6] = [
        &[(1.0, R::Empty, M::Empty, R::Empty)],
        &[(s, R::Red, M::Empty, R::Green), (-s, R::Green, M::Empty, R::Red)],
        &[(s, R::Green, M::Red, R::Empty), (-s, R::Red, M::Green, R::Empty)],
        &[(s, R::Empty, M::Red, R::Green), (-s, R::Empty, M::Green, R::Red)],
        &[(1.0, R::Empty, M::Double, R::Empty)],
        &[(s, R::Red, M::Double, R::Green), (-s, R::Green, M::Double, R::Red)],
    ];
    let mut basis = CMat::zeros(DRESSED_DIM, 6);
    for (col, terms) in kets.iter().enumerate() {
        for &(amp, r, m, l) in terms.iter() {
            basis[(product_index(r, m, l), col)] = c(amp, 0.0);
        }
    }
    DressedSiteSpace { basis, chain: constituent_chain() }
}

impl DressedSiteSpace {
    pub fn embed(&self, slot: usize, op: &GradedOperator) -> CMat {
        self.chain.embed(slot, op)
    }

    /// `V† O V` and the norm of the part of `O V` outside the dressed span.
    pub fn project(&self, op: &CMat) -> (CMat, f64) {
        let v = &self.basis;
        let ov = op * v;
        let inside = v.adjoint() * &ov;
        let leak = max_abs(&(ov - v * &inside));
        (inside, leak)
    }

    pub fn overlap(&self) -> CMat {
        self.basis.adjoint() * &self.basis
    }

    /// `⟨k| P_total |k⟩` for every dressed state.
    pub fn parities(&self) -> Vec<f64> {
        let p = self.chain.total_parity();
        (0..6)
            .map(|k| {
                let col = self.basis.column(k);
                (col.adjoint() * (&p * col))[(0, 0)].re
            })
            .collect()
    }
}
