// Copyright 2026 The qudit-lgt Authors
// SPDX-License-Identifier: Apache-2.0

//! Hardcore-gluon SU(2) lattice Yang-Mills on six-level qudits.
//!
//! Each lattice site is a six-level dressed site (matter plus the two
//! adjacent rishons). The crate builds the effective qudit Hamiltonian,
//! evolves states exactly with a Krylov propagator, simulates Trotterized
//! circuits built from generalized Mølmer–Sørensen gates (optionally with
//! the phonon mode resolved), and provides the noise, post-selection and
//! strong-coupling tools used to analyse those circuits.
//!
//! Units are the dimensionless ones of the effective Hamiltonian: hopping
//! amplitude 1, mass `m`, coupling `g²`.

// `!(x > 0.0)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod digital;
pub mod error;
pub mod exact;
pub mod generators;
pub mod hamiltonian;
pub mod krylov;
pub mod linalg;
pub mod noise;
pub mod observables;
pub mod operator;
pub mod params;
pub mod perturbation;
pub mod postselect;
pub mod rotation;
pub mod site;
pub mod state;

pub use digital::{gate_count, trotter_run, CircuitOptions, GateScheme, PhononConfig, TrotterPlan};
pub use error::{Error, Result};
pub use exact::{evolve, uniform_grid, SpectralPropagator};
pub use generators::{hopping_generators, DriveScheme, TwoLevelGenerator};
pub use hamiltonian::{bare_energy, build_hamiltonian, build_zeeman};
pub use krylov::KrylovConfig;
pub use observables::{measure, vacuum_subtract, ObservableSeries, StringWindow};
pub use operator::{LinearOperator, ManyBodyOperator};
pub use noise::{performance, NoiseEnsemble};
pub use params::ModelParams;
pub use perturbation::{effective_hopping_frequency, jeff};
pub use postselect::{parity_filter, ShotRecord};
pub use site::{build_site_matrices, Level, SiteMatrix, Symbol};
pub use state::{dirac_vacuum, fidelity, string_state, DensityMatrix, QuditState};
