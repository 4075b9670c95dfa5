// Copyright 2026 The qudit-lgt Authors
// SPDX-License-Identifier: Apache-2.0

//! Digital (Trotterized) simulation of the qudit model.

pub mod gates;
pub mod phonon;
pub mod trotter;

pub use gates::{correction_phases, gate_disjoint, gate_ideal, GateScheme};
pub use phonon::{ms_channel, MsChannel, PhononConfig};
pub use trotter::{gate_count, trotter_run, Circuit, CircuitOptions, CircuitReport, CircuitState, TrotterPlan};
