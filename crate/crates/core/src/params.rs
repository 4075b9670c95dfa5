// Copyright 2026 The qudit-lgt Authors
// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::site::Level;

/// Largest chain handled by the exact state-vector engine (6⁸ amplitudes).
pub const MAX_EXACT_SITES: usize = 8;

/// Couplings of the effective qudit Hamiltonian, in hopping units.
///
/// Sites are numbered from 1. The staggered sign on site `n` is
/// `(−1)^(n + stagger_offset)`: with offset 0 odd sites carry `−1` and hold
/// `|5⟩` in the Dirac vacuum; offset 1 swaps the two sublattices.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub n_sites: usize,
    /// Dimensionless staggered mass `m`.
    pub mass: f64,
    /// Dimensionless coupling `g²`.
    pub g2: f64,
    #[serde(default)]
    pub stagger_offset: u8,
}

impl ModelParams {
    pub fn new(n_sites: usize, mass: f64, g2: f64) -> Result<Self> {
        let p = ModelParams { n_sites, mass, g2, stagger_offset: 0 };
        p.validate()?;
        Ok(p)
    }

    pub fn with_stagger_offset(mut self, offset: u8) -> Result<Self> {
        self.stagger_offset = offset;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_sites < 2 {
            return Err(Error::param(format!("need at least 2 sites, got {}", self.n_sites)));
        }
        if !self.mass.is_finite() || !self.g2.is_finite() {
            return Err(Error::param("mass and g2 must be finite"));
        }
        if self.stagger_offset > 1 {
            return Err(Error::param(format!("stagger_offset must be 0 or 1, got {}", self.stagger_offset)));
        }
        Ok(())
    }

    /// Fails with a capacity error when the exact engine cannot hold the chain.
    pub fn check_exact_capacity(&self) -> Result<()> {
        if self.n_sites > MAX_EXACT_SITES {
            return Err(Error::Capacity(format!(
                "{} sites exceed the exact-engine limit of {MAX_EXACT_SITES}",
                self.n_sites
            )));
        }
        Ok(())
    }

    /// `(−1)^(n + offset)` for the 1-based site `n`.
    pub fn site_sign(&self, site: usize) -> f64 {
        if (site + self.stagger_offset as usize) % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// Quark sublattice: positive staggered sign, empty in the Dirac vacuum.
    pub fn is_quark_site(&self, site: usize) -> bool {
        self.site_sign(site) > 0.0
    }

    /// Level occupied by `site` in the Dirac vacuum.
    pub fn vacuum_level(&self, site: usize) -> Level {
        if self.is_quark_site(site) {
            Level::new(1).unwrap()
        } else {
            Level::new(5).unwrap()
        }
    }

    pub fn vacuum_config(&self) -> Vec<Level> {
        (1..=self.n_sites).map(|n| self.vacuum_level(n)).collect()
    }

    pub fn dim(&self) -> usize {
        6usize.pow(self.n_sites as u32)
    }

    pub fn check_site(&self, site: usize) -> Result<()> {
        if site == 0 || site > self.n_sites {
            return Err(Error::InvalidSite { site, n_sites: self.n_sites });
        }
        Ok(())
    }
}
