// Copyright 2026 The qudit-lgt Authors
// SPDX-License-Identifier: Apache-2.0

use std::time::Instant;

use num_complex::Complex64;
use qudit_lgt::Symbol;
use qudit_lgt_oracle::derive::{derive_with, QrOrdering};
use qudit_lgt_oracle::dressed::{build_dressed_basis, constituent_chain, product_index, Matter, Rishon};
use qudit_lgt_oracle::graded::{CMat, ConstituentChain};
use qudit_lgt_oracle::rishon::{psi, rishon_casimir, zeta, Color};
use qudit_lgt_oracle::verify::*;

fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[test]
fn dressed_basis_examples() {
    let space = build_dressed_basis();
    let b = &space.basis;
    assert_eq!(b[(product_index(Rishon::Empty, Matter::Empty, Rishon::Empty), 0)], Complex64::new(1.0, 0.0));
    assert!((b.column(1).norm() - 1.0).abs() < 1e-15);
    assert!(max_abs(&(space.overlap() - CMat::identity(6, 6))) < 1e-15);
    assert!(space.parities().iter().all(|p| (p - 1.0).abs() < 1e-12));
}

#[test]
fn constituent_operators_are_graded() {
    for a in Color::ALL {
        assert!(zeta(a).grading_defect() < 1e-15);
        assert!(psi(a).grading_defect() < 1e-15);
    }
    // embedded fermions on distinct constituents anticommute
    let chain = constituent_chain();
    let ops = [(0, zeta(Color::Red)), (1, psi(Color::Green)), (2, zeta(Color::Green).adjoint())];
    for (i, (si, oi)) in ops.iter().enumerate() {
        for (sj, oj) in ops.iter().skip(i + 1) {
            let x = chain.embed(*si, oi);
            let y = chain.embed(*sj, oj);
            assert!(max_abs(&(&x * &y + &y * &x)) < 1e-15);
        }
    }
}

#[test]
fn doubly_occupied_state_sign_depends_on_creation_order() {
    let chain = ConstituentChain::new(vec![qudit_lgt_oracle::rishon::matter_parity()]);
    let r = chain.embed(0, &psi(Color::Red)).adjoint();
    let g = chain.embed(0, &psi(Color::Green)).adjoint();
    let mut vac = CMat::zeros(4, 1);
    vac[(0, 0)] = Complex64::new(1.0, 0.0);
    assert_eq!((&r * &g * &vac)[(3, 0)], Complex64::new(1.0, 0.0));
    assert_eq!((&g * &r * &vac)[(3, 0)], Complex64::new(-1.0, 0.0));
}

#[test]
fn derived_tables_match_the_catalog() {
    let report = verify_tables();
    assert!(report.passed(), "{:?}", report.entries);
    assert!(report.max_deviation() < 1e-12);
    // the dressed states |3⟩ and |6⟩ carry the opposite antisymmetrization
    // sign relative to the literal product kets
    match report.convention {
        Convention::Rephased { ordering, phases } => {
            assert_eq!(ordering, QrOrdering::RishonFirst);
            let signs: Vec<f64> = phases.iter().map(|p| p.re).collect();
            assert_eq!(signs, vec![1.0, 1.0, -1.0, 1.0, 1.0, -1.0]);
        }
        other => panic!("unexpected convention {other:?}"),
    }
}

#[test]
fn derived_operators_stay_in_the_dressed_span() {
    let d = derive_with(QrOrdering::RishonFirst);
    for m in &d.matrices {
        assert!(m.leakage < 1e-12, "{:?} leaks {}", m.symbol, m.leakage);
    }
    let c = d.matrices.iter().find(|m| m.symbol == Symbol::C).unwrap();
    for (k, want) in [0.0, 2.0, 1.0, 1.0, 0.0, 2.0].into_iter().enumerate() {
        assert!((c.matrix[(k, k)].re - want).abs() < 1e-12);
    }
}

#[test]
fn gauss_law_and_triplet_anti_test() {
    let g = verify_gauss_law();
    assert!(g.passed(), "{g:?}");
    assert!(g.casimir_norms[1] < 1e-12);
    assert!((g.triplet_casimir - 2.0).abs() < 1e-12);
}

#[test]
fn link_casimir() {
    let r = verify_link_casimir();
    assert!(r.passed(), "{r:?}");
    let k = rishon_casimir();
    assert_eq!(k[(0, 0)].re, 0.0);
    assert!((k[(1, 1)].re - 0.75).abs() < 1e-15);
}

#[test]
fn parallel_transporter_all_color_pairs() {
    let r = verify_parallel_transporter();
    assert!(r.passed(), "{:?}", r.failures());
    assert_eq!(r.entries.len(), 4);
}

#[test]
fn full_suite_is_fast() {
    let t = Instant::now();
    assert!(run_all().passed());
    assert!(t.elapsed().as_secs_f64() < 1.0);
}
