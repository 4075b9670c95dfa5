// Copyright 2026 The qudit-lgt Authors
// SPDX-License-Identifier: Apache-2.0

//! Pure states on the qudit chain, density operators and initial-state
//! constructors.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::hamiltonian::link_parity_value;
use crate::operator::{apply_local, digit, levels_of, product_index, CMatrix};
use crate::params::ModelParams;
use crate::site::{Level, Mat6, SITE_DIM};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Amplitudes over the `6^N` dressed-site product basis.
#[derive(Clone, Debug, PartialEq)]
pub struct QuditState {
    n_sites: usize,
    amps: Vec<Complex64>,
}

impl QuditState {
    pub fn from_amplitudes(n_sites: usize, amps: Vec<Complex64>) -> Result<Self> {
        let dim = SITE_DIM.pow(n_sites as u32);
        if amps.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: amps.len() });
        }
        Ok(QuditState { n_sites, amps })
    }

    pub fn product(levels: &[Level]) -> Self {
        let n_sites = levels.len();
        let mut amps = vec![ZERO; SITE_DIM.pow(n_sites as u32)];
        amps[product_index(levels)] = ONE;
        QuditState { n_sites, amps }
    }

    pub fn product_labels(labels: &[u8]) -> Result<Self> {
        let levels = labels.iter().map(|&l| Level::new(l)).collect::<Result<Vec<_>>>()?;
        Ok(Self::product(&levels))
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalize(&mut self, context: &str) -> Result<f64> {
        let n = self.norm();
        if !(n > 1e-300) {
            return Err(Error::ZeroNorm(context.to_string()));
        }
        let inv = 1.0 / n;
        self.amps.iter_mut().for_each(|z| *z *= inv);
        Ok(n)
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &QuditState) -> Complex64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn distance(&self, other: &QuditState) -> f64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt()
    }

    /// Applies a single-site matrix in place.
    pub fn apply_site(&mut self, site: usize, m: &Mat6) {
        let local = CMatrix::from_fn(SITE_DIM, SITE_DIM, |r, c| m[(r, c)]);
        apply_local(&mut self.amps, self.n_sites, 1, site, 1, &crate::operator::sparse_entries(&local));
    }

    /// Applies a two-site (36×36) matrix on `(site, site+1)` in place.
    pub fn apply_bond(&mut self, site: usize, m: &CMatrix) {
        apply_local(&mut self.amps, self.n_sites, 1, site, 2, &crate::operator::sparse_entries(m));
    }

    /// Multiplies every amplitude by a per-site diagonal phase table:
    /// `phases[n-1][k]` multiplies level `k+1` on site `n`.
    pub fn apply_site_diagonals(&mut self, phases: &[[Complex64; 6]]) {
        assert_eq!(phases.len(), self.n_sites);
        let n = self.n_sites;
        for (i, z) in self.amps.iter_mut().enumerate() {
            let mut f = ONE;
            for (s, row) in phases.iter().enumerate() {
                f *= row[digit(i, s + 1, n)];
            }
            *z *= f;
        }
    }

    /// `Σ_s P(site = s)` for each site: a `N × 6` table of marginals.
    pub fn marginals(&self) -> Vec<[f64; 6]> {
        let n = self.n_sites;
        let mut out = vec![[0.0; 6]; n];
        for (i, z) in self.amps.iter().enumerate() {
            let p = z.norm_sqr();
            if p == 0.0 {
                continue;
            }
            for (s, row) in out.iter_mut().enumerate() {
                row[digit(i, s + 1, n)] += p;
            }
        }
        out
    }

    /// Born probabilities over product configurations.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|z| z.norm_sqr()).collect()
    }

    /// `S^n_{to,from} = |to⟩⟨from|_n`, renormalized.
    pub fn apply_site_flip(&self, site: usize, from: Level, to: Level) -> Result<QuditState> {
        if site == 0 || site > self.n_sites {
            return Err(Error::InvalidSite { site, n_sites: self.n_sites });
        }
        let mut m = Mat6::zeros();
        m[(to.index(), from.index())] = ONE;
        let mut out = self.clone();
        out.apply_site(site, &m);
        out.normalize(&format!("flip {}→{} on site {site}", from.label(), to.label()))?;
        Ok(out)
    }

    pub fn density_matrix(&self) -> DensityMatrix {
        let v = nalgebra::DVector::from_column_slice(&self.amps);
        DensityMatrix { n_sites: self.n_sites, rho: &v * v.adjoint() }
    }
}

/// Dirac vacuum of the given parameters: `|5⟩|1⟩|5⟩…` for the default
/// staggering.
pub fn dirac_vacuum(params: &ModelParams) -> Result<QuditState> {
    params.validate()?;
    params.check_exact_capacity()?;
    Ok(QuditState::product(&params.vacuum_config()))
}

/// Level pattern of a length-`l` string starting at `n_s` on top of the
/// vacuum.
pub fn string_config(params: &ModelParams, n_s: usize, l: usize) -> Result<Vec<Level>> {
    params.check_site(n_s)?;
    if l == 0 || n_s + l > params.n_sites {
        return Err(Error::param(format!(
            "string of length {l} from site {n_s} does not fit {} sites",
            params.n_sites
        )));
    }
    if !params.is_quark_site(n_s) {
        return Err(Error::param(format!("string must start on a quark site, site {n_s} is not")));
    }
    if l % 2 == 0 {
        return Err(Error::param(format!("string length {l} ends on a quark site; use odd l")));
    }
    let lv = |x: u8| Level::new(x).expect("static level");
    let mut config = params.vacuum_config();
    config[n_s - 1] = lv(4);
    for n in n_s + 1..n_s + l {
        config[n - 1] = if params.is_quark_site(n) { lv(2) } else { lv(6) };
    }
    config[n_s + l - 1] = lv(3);
    Ok(config)
}

pub fn string_state(params: &ModelParams, n_s: usize, l: usize) -> Result<QuditState> {
    params.check_exact_capacity()?;
    Ok(QuditState::product(&string_config(params, n_s, l)?))
}

/// Whether every bond of a configuration obeys the link law.
pub fn satisfies_link_law(levels: &[Level]) -> bool {
    levels.windows(2).all(|w| link_parity_value(w[0], w[1]) > 0.0)
}

/// Random normalized superposition of all link-law-respecting product states.
pub fn random_physical_state<R: Rng>(n_sites: usize, rng: &mut R) -> QuditState {
    let dim = SITE_DIM.pow(n_sites as u32);
    let mut amps = vec![ZERO; dim];
    for (i, z) in amps.iter_mut().enumerate() {
        if satisfies_link_law(&levels_of(i, n_sites)) {
            *z = Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5);
        }
    }
    let mut s = QuditState { n_sites, amps };
    s.normalize("random state").expect("nonempty physical sector");
    s
}

/// Density operator on the qudit chain.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    n_sites: usize,
    rho: CMatrix,
}

impl DensityMatrix {
    pub fn from_matrix(n_sites: usize, rho: CMatrix) -> Result<Self> {
        let dim = SITE_DIM.pow(n_sites as u32);
        if rho.nrows() != dim || rho.ncols() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: rho.nrows() });
        }
        Ok(DensityMatrix { n_sites, rho })
    }

    pub fn maximally_mixed(n_sites: usize) -> Self {
        let dim = SITE_DIM.pow(n_sites as u32);
        let rho = CMatrix::identity(dim, dim) * Complex64::new(1.0 / dim as f64, 0.0);
        DensityMatrix { n_sites, rho }
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.rho
    }

    pub fn matrix_mut(&mut self) -> &mut CMatrix {
        &mut self.rho
    }

    pub fn trace(&self) -> f64 {
        self.rho.trace().re
    }

    /// `K ϱ K†` for a two-site operator on `(site, site+1)`; used to apply
    /// Kraus operators of a gate.
    pub fn conjugate_bond(&self, site: usize, k: &CMatrix) -> CMatrix {
        let mut out = self.clone();
        out.conjugate_bond_in_place(site, k);
        out.rho
    }

    /// `ϱ ← K ϱ K†` in place.
    pub fn conjugate_bond_in_place(&mut self, site: usize, k: &CMatrix) {
        let n = self.n_sites;
        let entries = crate::operator::sparse_entries(k);
        let dim = self.rho.nrows();
        // columns are contiguous: K ϱ column by column, then the same on
        // (Kϱ)† gives K ϱ K† after a final adjoint
        for col in self.rho.as_mut_slice().chunks_mut(dim) {
            apply_local(col, n, 1, site, 2, &entries);
        }
        self.rho.adjoint_mut();
        for col in self.rho.as_mut_slice().chunks_mut(dim) {
            apply_local(col, n, 1, site, 2, &entries);
        }
        self.rho.adjoint_mut();
    }

    /// `ϱ_{ij} ← m_{b(i), b(j)} ϱ_{ij}`, where `b` is the two-site index of
    /// the bond `(site, site+1)`.
    pub fn hadamard_bond(&mut self, site: usize, m: &CMatrix) {
        let n = self.n_sites;
        let dim = self.rho.nrows();
        let bond: Vec<usize> =
            (0..dim).map(|i| digit(i, site, n) * SITE_DIM + digit(i, site + 1, n)).collect();
        for (j, col) in self.rho.as_mut_slice().chunks_mut(dim).enumerate() {
            let bj = bond[j];
            for (z, &bi) in col.iter_mut().zip(&bond) {
                *z *= m[(bi, bj)];
            }
        }
    }

    /// `ϱ ← D ϱ D†` with `D` diagonal in the product basis.
    pub fn conjugate_diagonal(&mut self, d: &[Complex64]) {
        let dim = self.rho.nrows();
        for (col, dc) in d.iter().enumerate().take(dim) {
            let dc = dc.conj();
            for (r, dr) in d.iter().enumerate().take(dim) {
                self.rho[(r, col)] *= dr * dc;
            }
        }
    }

    /// Diagonal of `ϱ`: Born probabilities.
    pub fn probabilities(&self) -> Vec<f64> {
        (0..self.rho.nrows()).map(|i| self.rho[(i, i)].re).collect()
    }

    pub fn marginals(&self) -> Vec<[f64; 6]> {
        let n = self.n_sites;
        let mut out = vec![[0.0; 6]; n];
        for (i, p) in self.probabilities().into_iter().enumerate() {
            for (s, row) in out.iter_mut().enumerate() {
                row[digit(i, s + 1, n)] += p;
            }
        }
        out
    }
}

/// `F = ⟨ψ|ϱ|ψ⟩`.
pub fn fidelity(psi: &QuditState, rho: &DensityMatrix) -> Result<f64> {
    if psi.dim() != rho.rho.nrows() {
        return Err(Error::DimensionMismatch { expected: rho.rho.nrows(), found: psi.dim() });
    }
    let v = nalgebra::DVector::from_column_slice(psi.amplitudes());
    Ok((v.adjoint() * &rho.rho * &v)[(0, 0)].re)
}

/// `|⟨a|b⟩|²` for two pure states.
pub fn pure_fidelity(a: &QuditState, b: &QuditState) -> f64 {
    a.inner(b).norm_sqr()
}

/// Traces out a trailing factor of dimension `tail` from a pure vector laid
/// out as `(system, tail)` with the tail index fastest.
pub fn partial_trace_tail(n_sites: usize, amps: &[Complex64], tail: usize) -> Result<DensityMatrix> {
    let dim = SITE_DIM.pow(n_sites as u32);
    if amps.len() != dim * tail {
        return Err(Error::DimensionMismatch { expected: dim * tail, found: amps.len() });
    }
    let m = DMatrix::from_fn(dim, tail, |i, k| amps[i * tail + k]);
    Ok(DensityMatrix { n_sites, rho: &m * m.adjoint() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn lv(x: u8) -> Level {
        Level::new(x).unwrap()
    }

    #[test]
    fn vacuum_two_sites() {
        let p = ModelParams::new(2, 1.0, 1.0).unwrap();
        let v = dirac_vacuum(&p).unwrap();
        assert_eq!(v.amplitudes()[product_index(&[lv(5), lv(1)])], ONE);
        assert!((v.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn flip_round_trip_and_zero_norm() {
        let p = ModelParams::new(3, 1.0, 1.0).unwrap();
        let v = dirac_vacuum(&p).unwrap();
        let f = v.apply_site_flip(1, lv(5), lv(1)).unwrap();
        let back = f.apply_site_flip(1, lv(1), lv(5)).unwrap();
        assert!(back.distance(&v) < 1e-15);
        assert!(matches!(v.apply_site_flip(1, lv(2), lv(3)), Err(Error::ZeroNorm(_))));
    }

    #[test]
    fn string_patterns() {
        let p = ModelParams::new(4, 1.0, 1.0).unwrap().with_stagger_offset(1).unwrap();
        let labels = |c: Vec<Level>| c.iter().map(|l| l.label()).collect::<Vec<_>>();
        assert_eq!(labels(string_config(&p, 1, 3).unwrap()), vec![4, 6, 2, 3]);
        assert_eq!(labels(string_config(&p, 1, 1).unwrap()), vec![4, 3, 1, 5]);
        assert!(string_config(&p, 1, 2).is_err());
        assert!(string_config(&p, 2, 1).is_err());
        assert!(string_config(&p, 3, 3).is_err());
        let q = ModelParams::new(4, 1.0, 1.0).unwrap();
        assert_eq!(labels(string_config(&q, 2, 1).unwrap()), vec![5, 4, 3, 1]);
    }

    #[test]
    fn fidelity_cases() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let psi = random_physical_state(2, &mut rng);
        assert!((fidelity(&psi, &psi.density_matrix()).unwrap() - 1.0).abs() < 1e-12);
        let mixed = DensityMatrix::maximally_mixed(2);
        assert!((fidelity(&psi, &mixed).unwrap() - 1.0 / 36.0).abs() < 1e-12);
        // product with a phonon factor traces out to the pure projector
        let ph = [Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)];
        let joint: Vec<Complex64> =
            psi.amplitudes().iter().flat_map(|a| ph.iter().map(move |b| a * b)).collect();
        let red = partial_trace_tail(2, &joint, 2).unwrap();
        assert!((fidelity(&psi, &red).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn marginals_sum_to_one() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let psi = random_physical_state(3, &mut rng);
        for row in psi.marginals() {
            assert!((row.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn kraus_conjugation_matches_dense() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let psi = random_physical_state(3, &mut rng);
        let k = CMatrix::from_fn(36, 36, |r, c| Complex64::new(((r * 3 + c) % 7) as f64, (r % 2) as f64));
        let out = psi.density_matrix().conjugate_bond(2, &k);
        let mut v = psi.clone();
        v.apply_bond(2, &k);
        let expected = v.density_matrix();
        assert!((out - expected.matrix()).iter().all(|z| z.norm() < 1e-9));
    }
}
