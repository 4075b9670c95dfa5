// Copyright 2026 The qudit-lgt Authors
// SPDX-License-Identifier: Apache-2.0

//! Link-parity post-selection: destructive filtering of sampled shots and
//! the non-destructive ancilla check.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hamiltonian::link_parity_value;
use crate::operator::{digit, levels_of};
use crate::site::{cyclic_shift, Level, PARITY_L, PARITY_R};
use crate::state::QuditState;

/// One projective measurement of every qudit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ShotRecord {
    pub levels: Vec<Level>,
}

impl ShotRecord {
    pub fn new(levels: Vec<Level>) -> Self {
        ShotRecord { levels }
    }

    pub fn from_labels(labels: &[u8]) -> Result<Self> {
        Ok(ShotRecord { levels: labels.iter().map(|&l| Level::new(l)).collect::<Result<_>>()? })
    }

    /// `D^L[level_n]·D^R[level_{n+1}] = +1` for each bond.
    pub fn bond_flags(&self) -> Vec<bool> {
        self.levels.windows(2).map(|w| link_parity_value(w[0], w[1]) > 0.0).collect()
    }

    pub fn passes(&self) -> bool {
        self.bond_flags().into_iter().all(|f| f)
    }

    /// Copy with site `site` (1-based) replaced by `level`.
    pub fn with_level(&self, site: usize, level: Level) -> Self {
        let mut out = self.clone();
        out.levels[site - 1] = level;
        out
    }
}

/// Draws `n_shots` configurations from the Born distribution `probs`.
pub fn sample_shots<R: Rng>(probs: &[f64], n_sites: usize, n_shots: usize, rng: &mut R) -> Vec<ShotRecord> {
    let mut cdf = Vec::with_capacity(probs.len());
    let mut acc = 0.0;
    for p in probs {
        acc += p.max(0.0);
        cdf.push(acc);
    }
    (0..n_shots)
        .map(|_| {
            let u = rng.random::<f64>() * acc;
            let idx = cdf.partition_point(|&c| c <= u).min(probs.len() - 1);
            ShotRecord { levels: levels_of(idx, n_sites) }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FilterResult {
    pub accepted: Vec<ShotRecord>,
    pub rejected: usize,
    pub acceptance_rate: f64,
}

pub fn parity_filter(shots: &[ShotRecord]) -> FilterResult {
    let accepted: Vec<ShotRecord> = shots.iter().filter(|s| s.passes()).cloned().collect();
    let rate = if shots.is_empty() { 1.0 } else { accepted.len() as f64 / shots.len() as f64 };
    FilterResult { rejected: shots.len() - accepted.len(), accepted, acceptance_rate: rate }
}

/// Levels that flip the ancilla on the left qudit of a bond (`D^L = −1`).
pub fn left_flip_levels() -> Vec<Level> {
    Level::ALL.into_iter().filter(|l| PARITY_L[l.index()] < 0.0).collect()
}

/// Levels that flip the ancilla on the right qudit of a bond (`D^R = −1`).
pub fn right_flip_levels() -> Vec<Level> {
    Level::ALL.into_iter().filter(|l| PARITY_R[l.index()] < 0.0).collect()
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AncillaOutcome {
    /// Even link parity, physical sector.
    Down,
    /// Odd link parity, leakage detected.
    Up,
}

/// Both measurement branches of one ancilla round.
#[derive(Clone, Debug)]
pub struct AncillaBranches {
    pub p_down: f64,
    pub p_up: f64,
    pub down: Option<QuditState>,
    pub up: Option<QuditState>,
}

/// Runs the two CEX gates of bond `(site, site+1)` on an ancilla prepared in
/// `|↓⟩` and returns both normalized post-measurement branches.
pub fn ancilla_branches(state: &QuditState, site: usize) -> Result<AncillaBranches> {
    let n = state.n_sites();
    if site == 0 || site >= n {
        return Err(Error::InvalidSite { site, n_sites: n });
    }
    // ancilla ends in |↑⟩ iff exactly one CEX fired
    let mut down = state.clone();
    let mut up = state.clone();
    for (i, (d, u)) in down.amplitudes_mut().iter_mut().zip(up.amplitudes_mut()).enumerate() {
        let flips = PARITY_L[digit(i, site, n)] * PARITY_R[digit(i, site + 1, n)] < 0.0;
        if flips {
            *d = Complex64::new(0.0, 0.0);
        } else {
            *u = Complex64::new(0.0, 0.0);
        }
    }
    let p_down = down.norm().powi(2);
    let p_up = up.norm().powi(2);
    let branch = |mut s: QuditState, p: f64, what: &str| -> Result<Option<QuditState>> {
        if p <= 1e-300 {
            return Ok(None);
        }
        s.normalize(what)?;
        Ok(Some(s))
    };
    Ok(AncillaBranches {
        down: branch(down, p_down, "ancilla ↓ branch")?,
        up: branch(up, p_up, "ancilla ↑ branch")?,
        p_down,
        p_up,
    })
}

/// Trajectory-mode ancilla round: samples the outcome, returns the
/// post-measurement state and, on `Up`, optionally applies the cyclic `X`
/// gate to the first qudit of the bond.
pub fn ancilla_parity_round<R: Rng>(
    state: &QuditState,
    site: usize,
    correct_on_up: bool,
    rng: &mut R,
) -> Result<(QuditState, AncillaOutcome)> {
    let br = ancilla_branches(state, site)?;
    let u = rng.random::<f64>() * (br.p_down + br.p_up);
    if u < br.p_down {
        Ok((br.down.expect("sampled branch has weight"), AncillaOutcome::Down))
    } else {
        let mut s = br.up.ok_or_else(|| Error::ZeroNorm("ancilla ↑ branch".into()))?;
        if correct_on_up {
            s.apply_site(site, &cyclic_shift());
        }
        Ok((s, AncillaOutcome::Up))
    }
}

/// Post-measurement state for a forced outcome; zero-probability outcomes
/// are rejected.
pub fn ancilla_project(state: &QuditState, site: usize, outcome: AncillaOutcome) -> Result<(QuditState, f64)> {
    let br = ancilla_branches(state, site)?;
    match outcome {
        AncillaOutcome::Down => Ok((br.down.ok_or_else(|| Error::ZeroNorm("ancilla ↓ branch".into()))?, br.p_down)),
        AncillaOutcome::Up => Ok((br.up.ok_or_else(|| Error::ZeroNorm("ancilla ↑ branch".into()))?, br.p_up)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn truth_table_examples() {
        assert!(ShotRecord::from_labels(&[5, 1, 5]).unwrap().passes());
        assert!(!ShotRecord::from_labels(&[1, 2]).unwrap().passes());
        let labels = |v: Vec<Level>| v.iter().map(|l| l.label()).collect::<Vec<_>>();
        assert_eq!(labels(left_flip_levels()), vec![2, 4, 6]);
        assert_eq!(labels(right_flip_levels()), vec![2, 3, 6]);
    }

    #[test]
    fn ancilla_on_mixed_sector_superposition() {
        let a = QuditState::product_labels(&[5, 1]).unwrap();
        let b = QuditState::product_labels(&[1, 2]).unwrap();
        let amps: Vec<Complex64> =
            a.amplitudes().iter().zip(b.amplitudes()).map(|(x, y)| (x + y) / 2f64.sqrt()).collect();
        let psi = QuditState::from_amplitudes(2, amps).unwrap();
        let br = ancilla_branches(&psi, 1).unwrap();
        assert!((br.p_down - 0.5).abs() < 1e-12 && (br.p_up - 0.5).abs() < 1e-12);
        assert!(br.down.unwrap().distance(&a) < 1e-12);
        assert!(ancilla_project(&a, 1, AncillaOutcome::Up).is_err());
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
        let (s, o) = ancilla_parity_round(&a, 1, true, &mut rng).unwrap();
        assert_eq!(o, AncillaOutcome::Down);
        assert!(s.distance(&a) < 1e-15);
    }

    #[test]
    fn cyclic_shift_wraps() {
        let s = QuditState::product_labels(&[6, 1]).unwrap();
        let mut t = s.clone();
        t.apply_site(1, &cyclic_shift());
        assert!(t.distance(&QuditState::product_labels(&[1, 1]).unwrap()) < 1e-15);
    }
}
