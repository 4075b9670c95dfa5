// Copyright 2026 The qudit-lgt Authors
// SPDX-License-Identifier: Apache-2.0

//! Library side of the `qlgt` scenario runner.

// `!(x > 0.0)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod error;
pub mod output;
pub mod run;
pub mod scenario;

pub use commands::{cmd_gates, cmd_run, cmd_sweep, cmd_verify, run_to_dir, set_axis};
pub use error::CliError;
pub use output::Table;
pub use run::{run_scenario, RunOutput};
pub use scenario::Scenario;
