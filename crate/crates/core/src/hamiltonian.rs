// Copyright 2026 The qudit-lgt Authors
// SPDX-License-Identifier: Apache-2.0

//! Many-body Hamiltonian, Zeeman noise term, conserved charges and bare
//! energies of product configurations.

use crate::error::{Error, Result};
use crate::operator::ManyBodyOperator;
use crate::params::ModelParams;
use crate::site::{self, diag, Level, Mat6, CASIMIR, MATTER, PARITY_L, PARITY_R};

/// Nearest-neighbour hopping `Σₙ A⁽¹⁾ₙB⁽¹⁾ₙ₊₁ + A⁽²⁾ₙB⁽²⁾ₙ₊₁`.
pub fn build_hopping(n_sites: usize) -> ManyBodyOperator {
    let mut h = ManyBodyOperator::new(n_sites);
    let (a1, a2, b1, b2) = (site::a1(), site::a2(), site::b1(), site::b2());
    for n in 1..n_sites {
        h.add_bond_term(n, &a1, &b1, 1.0);
        h.add_bond_term(n, &a2, &b2, 1.0);
    }
    h
}

/// Mass and gauge terms `m Σ(−1)ⁿMₙ + g² ΣCₙ`.
pub fn build_diagonal(params: &ModelParams) -> ManyBodyOperator {
    let mut h = ManyBodyOperator::new(params.n_sites);
    for n in 1..=params.n_sites {
        h.add_site_term(n, &site_energy_matrix(params, n), 1.0);
    }
    h
}

/// `m(−1)ⁿM + g²C` on one site.
pub fn site_energy_matrix(params: &ModelParams, site: usize) -> Mat6 {
    diag(site_energy_diag(params, site))
}

pub fn site_energy_diag(params: &ModelParams, site: usize) -> [f64; 6] {
    let s = params.site_sign(site);
    std::array::from_fn(|k| params.mass * s * MATTER[k] + params.g2 * CASIMIR[k])
}

pub fn build_hamiltonian(params: &ModelParams) -> Result<ManyBodyOperator> {
    params.validate()?;
    build_hopping(params.n_sites).plus(&build_diagonal(params))
}

/// `H_Z = −b Σₙ Fₙ` with `F = diag(−3w, −w, −1, 1, w, 3w)`.
pub fn build_zeeman(n_sites: usize, b: f64, w: f64) -> Result<ManyBodyOperator> {
    if !b.is_finite() || !(w > 0.0) || !w.is_finite() {
        return Err(Error::param(format!("zeeman needs finite b and w > 0, got b={b}, w={w}")));
    }
    let mut h = ManyBodyOperator::new(n_sites);
    let f = diag(site::zeeman_diag(w));
    for n in 1..=n_sites {
        h.add_site_term(n, &f, -b);
    }
    Ok(h)
}

/// `N_b = ½ Σₙ (Mₙ − 1)`.
pub fn baryon_number(n_sites: usize) -> ManyBodyOperator {
    let mut op = ManyBodyOperator::new(n_sites);
    let shifted = diag(MATTER.map(|v| 0.5 * (v - 1.0)));
    for n in 1..=n_sites {
        op.add_site_term(n, &shifted, 1.0);
    }
    op
}

/// `D^L_n D^R_{n+1}` on the bond starting at `site`.
pub fn link_parity(n_sites: usize, site: usize) -> ManyBodyOperator {
    let mut op = ManyBodyOperator::new(n_sites);
    op.add_bond_term(site, &diag(PARITY_L), &diag(PARITY_R), 1.0);
    op
}

/// Truth-table value `D^L[left]·D^R[right]` of a link.
pub fn link_parity_value(left: Level, right: Level) -> f64 {
    PARITY_L[left.index()] * PARITY_R[right.index()]
}

/// Diagonal energy `⟨c| m Σ(−1)ⁿM + g²ΣC |c⟩` of a product configuration.
pub fn diagonal_energy(config: &[Level], params: &ModelParams) -> Result<f64> {
    if config.len() != params.n_sites {
        return Err(Error::DimensionMismatch { expected: params.n_sites, found: config.len() });
    }
    Ok(config
        .iter()
        .enumerate()
        .map(|(i, l)| site_energy_diag(params, i + 1)[l.index()])
        .sum())
}

/// Diagonal energy measured from the Dirac vacuum.
pub fn bare_energy(config: &[Level], params: &ModelParams) -> Result<f64> {
    Ok(diagonal_energy(config, params)? - diagonal_energy(&params.vacuum_config(), params)?)
}

/// Same as [`bare_energy`] for raw level labels.
pub fn bare_energy_labels(labels: &[u8], params: &ModelParams) -> Result<f64> {
    let config = labels.iter().map(|&l| Level::new(l)).collect::<Result<Vec<_>>>()?;
    bare_energy(&config, params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::{product_index, LinearOperator};
    use num_complex::Complex64;

    fn levels(labels: &[u8]) -> Vec<Level> {
        labels.iter().map(|&l| Level::new(l).unwrap()).collect()
    }

    #[test]
    fn hamiltonian_is_hermitian() {
        let p = ModelParams::new(3, 0.7, 1.3).unwrap();
        let h = build_hamiltonian(&p).unwrap();
        assert!(h.hermiticity_defect() < 1e-12);
        let d = h.to_dense();
        assert!((&d - d.adjoint()).iter().all(|z| z.norm() < 1e-12));
    }

    #[test]
    fn vacuum_diagonal_expectation_two_sites() {
        let p = ModelParams::new(2, 1.0, 1.0).unwrap();
        let h = build_hamiltonian(&p).unwrap();
        let mut x = vec![Complex64::new(0.0, 0.0); 36];
        x[product_index(&levels(&[5, 1]))] = Complex64::new(1.0, 0.0);
        assert!((h.expectation(&x).re + 2.0).abs() < 1e-12);
    }

    #[test]
    fn zero_couplings_leave_pure_hopping() {
        let p = ModelParams::new(2, 0.0, 0.0).unwrap();
        let h = build_hamiltonian(&p).unwrap().to_dense();
        let hop = build_hopping(2).to_dense();
        assert!((h - hop).iter().all(|z| z.norm() < 1e-15));
    }

    #[test]
    fn zeeman_level_three() {
        let h = build_zeeman(2, 1.0, 0.6).unwrap();
        let mut x = vec![Complex64::new(0.0, 0.0); 36];
        x[product_index(&levels(&[3, 1]))] = Complex64::new(1.0, 0.0);
        // site 1 contributes +1, site 2 (level 1) contributes −b·(−3w)
        assert!((h.expectation(&x).re - (1.0 + 1.8)).abs() < 1e-12);
        assert!(build_zeeman(2, 0.0, 0.6).unwrap().to_dense().iter().all(|z| z.norm() == 0.0));
        assert!(build_zeeman(2, 1.0, 0.0).is_err());
    }

    #[test]
    fn bare_energies_of_excitations() {
        let p = ModelParams::new(4, 0.8, 1.7).unwrap();
        // vacuum 5 1 5 1, quark sites are even
        assert_eq!(bare_energy(&p.vacuum_config(), &p).unwrap(), 0.0);
        let meson = bare_energy_labels(&[5, 4, 3, 1], &p).unwrap();
        assert!((meson - (2.0 * 0.8 + 2.0 * 1.7)).abs() < 1e-12);
        let baryon = bare_energy_labels(&[5, 5, 5, 1], &p).unwrap();
        assert!((baryon - 1.6).abs() < 1e-12);
    }

    #[test]
    fn charges_commute_with_h() {
        let p = ModelParams::new(3, 0.9, 1.1).unwrap();
        let h = build_hamiltonian(&p).unwrap().to_dense();
        let mut ops = vec![baryon_number(3).to_dense()];
        for n in 1..3 {
            ops.push(link_parity(3, n).to_dense());
        }
        for q in ops {
            let c = &h * &q - &q * &h;
            assert!(c.iter().all(|z| z.norm() < 1e-12));
        }
        assert_eq!(build_hopping(3).dim(), 216);
    }
}
