// Copyright 2026 The qudit-lgt Authors
// SPDX-License-Identifier: Apache-2.0

use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qudit_lgt::digital::{gate_disjoint, gate_ideal, CircuitState};
use qudit_lgt::hamiltonian::{baryon_number, link_parity, link_parity_value};
use qudit_lgt::linalg::unitarity_defect;
use qudit_lgt::postselect::{ancilla_branches, left_flip_levels, right_flip_levels};
use qudit_lgt::rotation::{rotate_operator_even_sites, rotate_state_even_sites, unrotate_state_even_sites};
use qudit_lgt::state::random_physical_state;
use qudit_lgt::*;

fn random_state(n: usize, seed: u64) -> QuditState {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_physical_state(n, &mut rng)
}

fn levels(labels: &[u8]) -> Vec<Level> {
    labels.iter().map(|&l| Level::new(l).unwrap()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hamiltonian_is_hermitian(n in 2usize..=3, m in -2.0f64..2.0, g2 in 0.0f64..3.0) {
        let p = ModelParams::new(n, m, g2).unwrap();
        let h = build_hamiltonian(&p).unwrap();
        prop_assert!(h.hermiticity_defect() < 1e-12);
    }

    #[test]
    fn exact_evolution_preserves_norm_and_link_law(seed in any::<u64>(), t in 0.0f64..2.0) {
        let p = ModelParams::new(3, 0.8, 1.1).unwrap();
        let h = build_hamiltonian(&p).unwrap();
        let psi = random_state(3, seed);
        let out = evolve(&psi, &h, &[t], &KrylovConfig::default()).unwrap();
        prop_assert!((out[0].norm() - 1.0).abs() < 1e-9);
        for site in 1..3 {
            let d = link_parity(3, site);
            let before = d.expectation(psi.amplitudes()).re;
            let after = d.expectation(out[0].amplitudes()).re;
            prop_assert!((before - after).abs() < 1e-9);
        }
        let nb = baryon_number(3);
        prop_assert!((nb.expectation(psi.amplitudes()).re - nb.expectation(out[0].amplitudes()).re).abs() < 1e-9);
    }

    #[test]
    fn trotter_circuits_preserve_norm_and_link_law(seed in any::<u64>(), scheme_idx in 0usize..4, order in 1u8..=2) {
        let scheme = GateScheme::ALL[scheme_idx];
        let p = ModelParams::new(3, 0.7, 0.7).unwrap();
        let psi = random_state(3, seed);
        let plan = TrotterPlan::new(order, 0.07, 3).unwrap();
        let (states, report) = trotter_run(&psi, &p, plan, scheme, CircuitOptions::default()).unwrap();
        // second-order runs are simulated unmerged, so they apply at least the merged count
        let merged = gate_count(3, 3, scheme, order).unwrap();
        if order == 1 {
            prop_assert_eq!(report.gates_applied, merged);
        } else {
            prop_assert!(report.gates_applied >= merged);
        }
        let CircuitState::Pure(last) = states.last().unwrap() else { panic!("pure run") };
        prop_assert!((last.norm() - 1.0).abs() < 1e-10);
        for site in 1..3 {
            let d = link_parity(3, site);
            prop_assert!((d.expectation(last.amplitudes()).re - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn bond_gates_are_unitary(dt in -1.0f64..1.0, k in 1u8..=2, q in 1u8..=2, qp in 1u8..=2) {
        prop_assert!(unitarity_defect(&gate_ideal(k, dt)) < 1e-12);
        prop_assert!(unitarity_defect(&gate_disjoint(k, q, qp, dt)) < 1e-12);
    }

    #[test]
    fn flip_round_trip(labels in proptest::collection::vec(1u8..=6, 2..=4), site_pick in 0usize..4, to in 1u8..=6) {
        let n = labels.len();
        let site = site_pick % n + 1;
        let psi = QuditState::product_labels(&labels).unwrap();
        let from = Level::new(labels[site - 1]).unwrap();
        let to = Level::new(to).unwrap();
        let there = psi.apply_site_flip(site, from, to).unwrap();
        let back = there.apply_site_flip(site, to, from).unwrap();
        prop_assert!(back.distance(&psi) < 1e-15);
    }

    #[test]
    fn rotation_round_trip_and_operator_conjugation(seed in any::<u64>()) {
        let psi = random_state(3, seed);
        let r = rotate_state_even_sites(&psi);
        prop_assert!(unrotate_state_even_sites(&r).distance(&psi) < 1e-12);
        let p = ModelParams::new(3, 0.4, 0.9).unwrap();
        let h = build_hamiltonian(&p).unwrap();
        let hr = rotate_operator_even_sites(&h);
        let lhs = hr.expectation(r.amplitudes());
        let rhs = h.expectation(psi.amplitudes());
        prop_assert!((lhs - rhs).norm() < 1e-10);
    }

    #[test]
    fn double_rotation_is_a_configuration_sign(labels in proptest::collection::vec(1u8..=6, 2..=4)) {
        let psi = QuditState::product_labels(&labels).unwrap();
        let twice = rotate_state_even_sites(&rotate_state_even_sites(&psi));
        let sign = qudit_lgt::rotation::rotation_squared_sign(&levels(&labels));
        let overlap = psi.inner(&twice);
        prop_assert!((overlap - Complex64::new(sign, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn performance_is_monotone(f in 0.0f64..1.0, fa in 0.9f64..1.0, fb in 0.9f64..1.0, n in 0usize..200) {
        let (lo, hi) = if fa < fb { (fa, fb) } else { (fb, fa) };
        prop_assert!(performance(f, lo, n).unwrap() <= performance(f, hi, n).unwrap() + 1e-15);
        prop_assert!(performance(f, hi, n + 1).unwrap() <= performance(f, hi, n).unwrap() + 1e-15);
    }

    #[test]
    fn ancilla_weights_match_link_parity(seed in any::<u64>(), site in 1usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let amps: Vec<Complex64> = (0..216)
            .map(|_| Complex64::new(rand::Rng::random::<f64>(&mut rng) - 0.5, rand::Rng::random::<f64>(&mut rng) - 0.5))
            .collect();
        let mut psi = QuditState::from_amplitudes(3, amps).unwrap();
        psi.normalize("test").unwrap();
        let br = ancilla_branches(&psi, site).unwrap();
        let d = link_parity(3, site).expectation(psi.amplitudes()).re;
        prop_assert!((br.p_down + br.p_up - 1.0).abs() < 1e-12);
        prop_assert!((br.p_down - br.p_up - d).abs() < 1e-12);
    }

    #[test]
    fn noise_couplings_stay_in_band(delta in 0.0f64..1.0, seed in any::<u64>()) {
        let e = NoiseEnsemble { delta_b: delta, realizations: 16, seed, ..Default::default() };
        prop_assert!(e.couplings().iter().all(|b| b.abs() <= delta));
        let e2 = NoiseEnsemble { delta_b: 2.0 * delta, ..e };
        for (a, b) in e.couplings().iter().zip(e2.couplings()) {
            prop_assert!((2.0 * a - b).abs() < 1e-12);
        }
    }
}

#[test]
fn parity_filter_truth_table_all_pairs() {
    let left = left_flip_levels();
    let right = right_flip_levels();
    for a in Level::ALL {
        for b in Level::ALL {
            let flips = left.contains(&a) != right.contains(&b);
            let shot = ShotRecord::new(vec![a, b]);
            assert_eq!(shot.passes(), !flips, "pair {} {}", a.label(), b.label());
            assert_eq!(link_parity_value(a, b) > 0.0, !flips);
            let filtered = parity_filter(std::slice::from_ref(&shot));
            assert_eq!(filtered.accepted.len(), usize::from(!flips));
        }
    }
    assert_eq!(left.iter().map(|l| l.label()).collect::<Vec<_>>(), vec![2, 4, 6]);
    assert_eq!(right.iter().map(|l| l.label()).collect::<Vec<_>>(), vec![2, 3, 6]);
}

#[test]
fn dirac_vacuum_and_string_configurations() {
    let p = ModelParams::new(4, 1.0, 1.0).unwrap();
    let v = dirac_vacuum(&p).unwrap();
    assert!((v.inner(&QuditState::product_labels(&[5, 1, 5, 1]).unwrap()).norm() - 1.0).abs() < 1e-15);
    let q = ModelParams::new(4, 5.0, 5.0).unwrap().with_stagger_offset(1).unwrap();
    let s = string_state(&q, 1, 3).unwrap();
    assert!((s.inner(&QuditState::product_labels(&[4, 6, 2, 3]).unwrap()).norm() - 1.0).abs() < 1e-15);
}
