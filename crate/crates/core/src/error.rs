// Copyright 2026 The qudit-lgt Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors raised by model construction, state preparation and the engines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("level {0} is outside the dressed-site range 1..=6")]
    InvalidLevel(u8),

    #[error("site {site} is outside a chain of {n_sites} sites")]
    InvalidSite { site: usize, n_sites: usize },

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("state has zero norm after {0}")]
    ZeroNorm(String),

    #[error("time grids differ: {0}")]
    GridMismatch(String),

    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
