// Copyright 2026 The qudit-lgt Authors
// SPDX-License-Identifier: Apache-2.0

//! Local basis change on even sites that maps `A⁽ᵏ⁾ → −B⁽ᵏ⁾` and
//! `B⁽ᵏ⁾ → A⁽ᵏ⁾`, leaving `M` and `C` untouched.
//!
//! `Urot² = diag(−1,−1,1,1,−1,−1)`, i.e. `−(−1)^M`. Rotating a state twice
//! therefore multiplies each product configuration by
//! `Π_{n even} −(−1)^{M_n}`; [`rotation_squared_sign`] returns that sign so
//! callers can undo it. On states of fixed matter parity per even site it is
//! a global phase.

use crate::operator::ManyBodyOperator;
use crate::site::{rotation, Level, Mat6, MATTER};
use crate::state::QuditState;

fn is_even(site: usize) -> bool {
    site % 2 == 0
}

/// `U ⊗ … ⊗ U` on even sites applied to a state.
pub fn rotate_state_even_sites(state: &QuditState) -> QuditState {
    apply_on_even(state, &rotation())
}

/// Inverse of [`rotate_state_even_sites`].
pub fn unrotate_state_even_sites(state: &QuditState) -> QuditState {
    apply_on_even(state, &rotation().adjoint())
}

fn apply_on_even(state: &QuditState, u: &Mat6) -> QuditState {
    let mut out = state.clone();
    for n in (1..=state.n_sites()).filter(|&n| is_even(n)) {
        out.apply_site(n, u);
    }
    out
}

/// `U O U†` with `U` acting on even sites.
pub fn rotate_operator_even_sites(op: &ManyBodyOperator) -> ManyBodyOperator {
    op.conjugate_sites(&rotation(), is_even)
}

/// Sign picked up by a product configuration under two rotations.
pub fn rotation_squared_sign(levels: &[Level]) -> f64 {
    levels
        .iter()
        .enumerate()
        .filter(|(i, _)| is_even(i + 1))
        .map(|(_, l)| if MATTER[l.index()] as i64 % 2 == 0 { -1.0 } else { 1.0 })
        .product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::{build_diagonal, build_hamiltonian};
    use crate::operator::levels_of;
    use crate::params::ModelParams;
    use crate::site::{self, max_abs};
    use crate::state::{dirac_vacuum, random_physical_state};
    use num_complex::Complex64;
    use rand::SeedableRng;

    fn conj(m: &Mat6) -> Mat6 {
        rotation() * m * rotation().adjoint()
    }

    #[test]
    fn conjugation_identities() {
        assert!(max_abs(&(conj(&site::a1()) + site::b1())) < 1e-12);
        assert!(max_abs(&(conj(&site::a2()) + site::b2())) < 1e-12);
        assert!(max_abs(&(conj(&site::b1()) - site::a1())) < 1e-12);
        assert!(max_abs(&(conj(&site::b2()) - site::a2())) < 1e-12);
        let m = site::diag(site::MATTER);
        let c = site::diag(site::CASIMIR);
        assert!(max_abs(&(conj(&m) - m)) < 1e-12);
        assert!(max_abs(&(conj(&c) - c)) < 1e-12);
    }

    #[test]
    fn diagonal_part_is_invariant() {
        let p = ModelParams::new(3, 0.4, 0.9).unwrap();
        let d = build_diagonal(&p);
        let r = rotate_operator_even_sites(&d);
        assert!((r.to_dense() - d.to_dense()).iter().all(|z| z.norm() < 1e-12));
        let h = build_hamiltonian(&p).unwrap();
        let hr = rotate_operator_even_sites(&h);
        assert!(hr.hermiticity_defect() < 1e-12);
    }

    #[test]
    fn double_rotation_with_sign_bookkeeping() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let psi = random_physical_state(3, &mut rng);
        let twice = rotate_state_even_sites(&rotate_state_even_sites(&psi));
        for (i, (a, b)) in twice.amplitudes().iter().zip(psi.amplitudes()).enumerate() {
            let s = rotation_squared_sign(&levels_of(i, 3));
            assert!((a - b * Complex64::new(s, 0.0)).norm() < 1e-12);
        }
        let p = ModelParams::new(4, 1.0, 1.0).unwrap();
        let vac = dirac_vacuum(&p).unwrap();
        let v2 = rotate_state_even_sites(&rotate_state_even_sites(&vac));
        assert!((v2.inner(&vac).norm() - 1.0).abs() < 1e-12);
        let back = unrotate_state_even_sites(&rotate_state_even_sites(&psi));
        assert!(back.distance(&psi) < 1e-12);
    }
}
