// Copyright 2026 The qudit-lgt Authors
// SPDX-License-Identifier: Apache-2.0

//! Benchmark fixtures shared by the criterion targets.

use qudit_lgt::{dirac_vacuum, ModelParams, QuditState};

/// Dirac vacuum of an `n`-site chain at `m = g² = 1`.
pub fn vacuum(n: usize) -> (ModelParams, QuditState) {
    let p = ModelParams::new(n, 1.0, 1.0).expect("valid size");
    let v = dirac_vacuum(&p).expect("vacuum");
    (p, v)
}
