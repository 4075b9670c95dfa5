// Copyright 2026 The qudit-lgt Authors
// SPDX-License-Identifier: Apache-2.0

//! Independent reconstruction of the dressed-site operators from rishon and
//! quark fermions.
//!
//! Nothing here feeds the simulation engines. The crate rebuilds the six
//! gauge-invariant site states inside a 36-dimensional constituent space,
//! derives every hopping, mass and electric operator by Jordan-Wigner
//! embedding and projection, and compares the result with the tables
//! hard-coded in `qudit-lgt`.

pub mod derive;
pub mod dressed;
pub mod graded;
pub mod rishon;
pub mod verify;

pub use derive::{derive_with, QrOrdering};
pub use dressed::{build_dressed_basis, DressedSiteSpace};
pub use graded::GradedOperator;
pub use verify::{
    run_all, verify_gauss_law, verify_link_casimir, verify_parallel_transporter, verify_tables, Convention,
    OracleSummary,
};
