// Copyright 2026 The qudit-lgt Authors
// SPDX-License-Identifier: Apache-2.0

//! Two-qudit entangling gates in their effective (phonon-eliminated) form and
//! the diagonal single-qudit correction layer.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::generators::{alpha, beta, hopping_generators, DriveScheme, GeneratorGroup, Role};
use crate::hamiltonian::site_energy_diag;
use crate::linalg::expm_hermitian;
use crate::operator::CMatrix;
use crate::params::ModelParams;
use crate::site::{self, Mat6, HA2_DIAG, HB2_DIAG, SITE_DIM};

/// Entangling-gate back-end of a Trotter circuit.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GateScheme {
    /// `exp(−i dt/2 (A⁽ᵏ⁾ + B⁽ᵏ⁾)²)` applied directly.
    IdealEffective,
    /// Four disjoint double-transition gates per `k`.
    DisjointPair,
    /// Four-transition MS gate with the phonon mode integrated explicitly.
    FullMs,
    /// One transition per ion: 32 gates per bond.
    TwoLevel,
}

impl GateScheme {
    pub const ALL: [GateScheme; 4] =
        [GateScheme::IdealEffective, GateScheme::DisjointPair, GateScheme::FullMs, GateScheme::TwoLevel];

    /// Circuit depth `D` per three-site cell for a first-order step.
    pub fn depth_first_order(self) -> usize {
        match self {
            GateScheme::IdealEffective | GateScheme::FullMs => 4,
            GateScheme::DisjointPair => 16,
            GateScheme::TwoLevel => 64,
        }
    }

    /// Depth for the given Trotter order; the symmetric second-order cell
    /// has `2D − 2` gates once boundary gates of adjacent steps are merged.
    pub fn depth(self, order: u8) -> usize {
        let d = self.depth_first_order();
        if order == 2 {
            2 * d - 2
        } else {
            d
        }
    }

    /// How many copies of `H_{A²}`, `H_{B²}` the entangling layer adds.
    pub fn correction_multiplicity(self) -> f64 {
        match self {
            GateScheme::IdealEffective | GateScheme::FullMs => 1.0,
            GateScheme::DisjointPair => 2.0,
            GateScheme::TwoLevel => 0.0,
        }
    }

    pub fn drive(self) -> DriveScheme {
        match self {
            GateScheme::IdealEffective | GateScheme::FullMs => DriveScheme::FullMs,
            GateScheme::DisjointPair => DriveScheme::DisjointPair,
            GateScheme::TwoLevel => DriveScheme::TwoLevel,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GateScheme::IdealEffective => "ideal_effective",
            GateScheme::DisjointPair => "disjoint_pair",
            GateScheme::FullMs => "full_ms",
            GateScheme::TwoLevel => "two_level",
        }
    }
}

impl std::str::FromStr for GateScheme {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        GateScheme::ALL
            .into_iter()
            .find(|g| g.name() == s.to_ascii_lowercase().replace('-', "_"))
            .ok_or_else(|| crate::Error::param(format!("unknown gate scheme '{s}'")))
    }
}

/// `left ⊗ 1 + 1 ⊗ right` on a bond.
pub fn bond_sum(left: &Mat6, right: &Mat6) -> CMatrix {
    let d = SITE_DIM;
    CMatrix::from_fn(d * d, d * d, |r, c| {
        let (l1, r1, l2, r2) = (r / d, r % d, c / d, c % d);
        let mut v = Complex64::new(0.0, 0.0);
        if r1 == r2 {
            v += left[(l1, l2)];
        }
        if l1 == l2 {
            v += right[(r1, r2)];
        }
        v
    })
}

pub fn bond_product(left: &Mat6, right: &Mat6) -> CMatrix {
    let d = SITE_DIM;
    CMatrix::from_fn(d * d, d * d, |r, c| left[(r / d, c / d)] * right[(r % d, c % d)])
}

/// Single-ion generator `G` of a gate; the effective gate is
/// `exp(−i dt/2 G²)`.
pub fn full_generator(k: u8) -> CMatrix {
    let (a, b) = if k == 1 { (site::a1(), site::b1()) } else { (site::a2(), site::b2()) };
    bond_sum(&a, &b)
}

pub fn disjoint_generator(k: u8, q: u8, qp: u8) -> CMatrix {
    bond_sum(&alpha(k, q).matrix(), &beta(k, qp).matrix())
}

/// `exp(−i (dt/2) G²)`.
pub fn squared_gate(generator: &CMatrix, dt: f64) -> CMatrix {
    expm_hermitian(&(generator * generator), dt / 2.0)
}

pub fn gate_ideal(k: u8, dt: f64) -> CMatrix {
    squared_gate(&full_generator(k), dt)
}

pub fn gate_disjoint(k: u8, q: u8, qp: u8, dt: f64) -> CMatrix {
    squared_gate(&disjoint_generator(k, q, qp), dt)
}

/// `exp(−i dt · σ ⊗ σ')` for weighted two-level terms.
pub fn gate_two_level(left: &GeneratorGroup, right: &GeneratorGroup, dt: f64) -> CMatrix {
    expm_hermitian(&bond_product(&left.matrix(), &right.matrix()), dt)
}

/// One entangling gate of a scheme, before it is turned into a unitary or
/// a phonon-resolved channel.
#[derive(Clone, Debug)]
pub enum GateSpec {
    /// `exp(−i dt/2 G²)` with the given single-ion generator.
    Squared { generator: CMatrix, label: String },
    /// `exp(−i dt H)` with a fixed two-ion product Hamiltonian.
    Product { hamiltonian: CMatrix, label: String },
}

impl GateSpec {
    pub fn label(&self) -> &str {
        match self {
            GateSpec::Squared { label, .. } | GateSpec::Product { label, .. } => label,
        }
    }

    pub fn effective_unitary(&self, dt: f64) -> CMatrix {
        match self {
            GateSpec::Squared { generator, .. } => squared_gate(generator, dt),
            GateSpec::Product { hamiltonian, .. } => expm_hermitian(hamiltonian, dt),
        }
    }
}

/// Gates applied to one bond during a first-order step, in order.
pub fn bond_gate_specs(scheme: GateScheme) -> Vec<GateSpec> {
    let mut out = Vec::new();
    for k in [1u8, 2] {
        match scheme {
            GateScheme::IdealEffective | GateScheme::FullMs => {
                out.push(GateSpec::Squared { generator: full_generator(k), label: format!("ms k={k}") })
            }
            GateScheme::DisjointPair => {
                for q in [1u8, 2] {
                    for qp in [1u8, 2] {
                        out.push(GateSpec::Squared {
                            generator: disjoint_generator(k, q, qp),
                            label: format!("disjoint k={k} q={q} q'={qp}"),
                        });
                    }
                }
            }
            GateScheme::TwoLevel => {
                let groups = hopping_generators(DriveScheme::TwoLevel);
                let lefts: Vec<_> = groups.iter().filter(|g| g.role == Role::A(k)).collect();
                let rights: Vec<_> = groups.iter().filter(|g| g.role == Role::B(k)).collect();
                for l in &lefts {
                    for r in &rights {
                        let (tl, tr) = (l.terms[0], r.terms[0]);
                        out.push(GateSpec::Product {
                            hamiltonian: bond_product(&l.matrix(), &r.matrix()),
                            label: format!(
                                "two-level k={k} ({},{})x({},{})",
                                tl.s1.label(),
                                tl.s2.label(),
                                tr.s1.label(),
                                tr.s2.label()
                            ),
                        });
                    }
                }
            }
        }
    }
    out
}

/// Diagonal of the single-qudit Hamiltonian `Hₙ` of the correction layer,
/// optionally including the Zeeman term `−b F`.
pub fn correction_diag(params: &ModelParams, scheme: GateScheme, site: usize, zeeman: Option<(f64, f64)>) -> [f64; 6] {
    let c = scheme.correction_multiplicity();
    let mut h = site_energy_diag(params, site);
    for k in 0..6 {
        if site < params.n_sites {
            h[k] -= c * HA2_DIAG[k];
        }
        if site > 1 {
            h[k] -= c * HB2_DIAG[k];
        }
    }
    if let Some((b, w)) = zeeman {
        let f = site::zeeman_diag(w);
        for k in 0..6 {
            h[k] -= b * f[k];
        }
    }
    h
}

/// Phases `exp(−i dt Hₙ)` of the correction layer, one row per site.
pub fn correction_phases(
    params: &ModelParams,
    scheme: GateScheme,
    dt: f64,
    zeeman: Option<(f64, f64)>,
) -> Vec<[Complex64; 6]> {
    (1..=params.n_sites)
        .map(|n| correction_diag(params, scheme, n, zeeman).map(|e| Complex64::from_polar(1.0, -dt * e)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{max_diff, unitarity_defect};
    use crate::operator::product_index;
    use crate::site::Level;

    #[test]
    fn zero_step_is_identity() {
        let id = CMatrix::identity(36, 36);
        for spec in GateScheme::ALL.iter().flat_map(|&s| bond_gate_specs(s)) {
            assert!(max_diff(&spec.effective_unitary(0.0), &id) < 1e-12);
        }
    }

    #[test]
    fn forward_then_backward() {
        for spec in bond_gate_specs(GateScheme::DisjointPair) {
            let u = spec.effective_unitary(0.3) * spec.effective_unitary(-0.3);
            assert!(max_diff(&u, &CMatrix::identity(36, 36)) < 1e-12);
            assert!(unitarity_defect(&spec.effective_unitary(0.3)) < 1e-12);
        }
    }

    #[test]
    fn gate_counts_per_bond() {
        assert_eq!(bond_gate_specs(GateScheme::IdealEffective).len(), 2);
        assert_eq!(bond_gate_specs(GateScheme::DisjointPair).len(), 8);
        assert_eq!(bond_gate_specs(GateScheme::TwoLevel).len(), 32);
    }

    #[test]
    fn squared_generators_reproduce_hopping_and_corrections() {
        // Σ_gates dt·(generator²/2) = dt·(hop + c·(HA2 ⊗ 1 + 1 ⊗ HB2))
        let hop = bond_product(&site::a1(), &site::b1()) + bond_product(&site::a2(), &site::b2());
        let corr = bond_sum(&site::diag(HA2_DIAG), &site::diag(HB2_DIAG));
        for scheme in GateScheme::ALL {
            let mut total = CMatrix::zeros(36, 36);
            for spec in bond_gate_specs(scheme) {
                total += match spec {
                    GateSpec::Squared { generator, .. } => &generator * &generator * Complex64::new(0.5, 0.0),
                    GateSpec::Product { hamiltonian, .. } => hamiltonian,
                };
            }
            let expected = &hop + &corr * Complex64::new(scheme.correction_multiplicity(), 0.0);
            assert!(max_diff(&total, &expected) < 1e-12, "{scheme:?}");
        }
    }

    #[test]
    fn correction_edges_and_values() {
        let p = ModelParams::new(3, 0.0, 0.0).unwrap();
        let h = correction_diag(&p, GateScheme::IdealEffective, 2, None);
        assert_eq!(h[0], -4.0);
        let phases = correction_phases(&p, GateScheme::IdealEffective, 0.1, None);
        assert!((phases[1][0] - Complex64::from_polar(1.0, 0.4)).norm() < 1e-15);
        let first = correction_diag(&p, GateScheme::IdealEffective, 1, None);
        assert_eq!(first, HA2_DIAG.map(|x| -x));
        let last = correction_diag(&p, GateScheme::IdealEffective, 3, None);
        assert_eq!(last, HB2_DIAG.map(|x| -x));
        let q = ModelParams::new(3, 0.7, 1.1).unwrap();
        let d = correction_diag(&q, GateScheme::DisjointPair, 2, None);
        let e = site_energy_diag(&q, 2);
        assert!((d[3] - (e[3] - 2.0 * (HA2_DIAG[3] + HB2_DIAG[3]))).abs() < 1e-15);
    }

    #[test]
    fn ideal_gate_on_vacuum_bond_matches_dense_oracle() {
        let g = full_generator(1);
        let u = gate_ideal(1, 0.2);
        let idx = product_index(&[Level::new(5).unwrap(), Level::new(1).unwrap()]);
        // Taylor oracle: exp(−iX) = Σ (−iX)^j / j!
        let x = &g * &g * Complex64::new(0.1, 0.0);
        let mut term = CMatrix::identity(36, 36);
        let mut sum = term.clone();
        for j in 1..40 {
            term = &term * &x * Complex64::new(0.0, -1.0 / j as f64);
            sum += &term;
        }
        assert!(max_diff(&u, &sum) < 1e-12);
        assert!((x[(idx, idx)].re - 0.1 * (HA2_DIAG[4] + HB2_DIAG[0])).abs() < 1e-12);
    }
}
