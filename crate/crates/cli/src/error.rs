// Copyright 2026 The qudit-lgt Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Failures of a CLI invocation, each mapped to a documented exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Unparseable or inconsistent scenario.
    #[error("config error: {0}")]
    Config(String),
    #[error("capacity error: {0}")]
    Capacity(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Capacity(_) => 3,
            CliError::Numerical(_) => 4,
            CliError::Io(_) => 1,
        }
    }
}

impl From<qudit_lgt::Error> for CliError {
    fn from(e: qudit_lgt::Error) -> Self {
        use qudit_lgt::Error as E;
        match e {
            E::InvalidParameter(_) | E::InvalidLevel(_) | E::InvalidSite { .. } => CliError::Config(e.to_string()),
            E::Capacity(msg) => CliError::Capacity(msg),
            E::DimensionMismatch { .. } | E::ZeroNorm(_) | E::GridMismatch(_) | E::Numerical(_) => {
                CliError::Numerical(e.to_string())
            }
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
