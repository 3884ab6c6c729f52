mod common;

use common::*;
use locc_core::{
    analysis::*,
    qstate::{ gates, random, HermitianGenerator, PureState, Unitary, C64 },
};
use nalgebra as na;

#[test]
fn generator_round_trip() {
    let mut rng = random::seeded(100);
    for _ in 0..100 {
        let v = random::unitary(&mut rng, 4);
        let h = generator_of(&v).unwrap();
        assert!(h.exp_i().max_abs_diff(&v) < 1e-9);
        assert!(h.spectrum().iter().all(|&x| x > -std::f64::consts::PI && x <= std::f64::consts::PI + 1e-12));
    }
}

#[test]
fn swap_conjugation_preserves_spectrum_and_is_involutive() {
    let mut rng = random::seeded(101);
    for _ in 0..50 {
        let h = generator_of(&random::unitary(&mut rng, 4)).unwrap();
        let s = swap_conjugate_generator(&h).unwrap();
        for (a, b) in h.spectrum().iter().zip(s.spectrum()) {
            assert!((a - b).abs() < 1e-9);
        }
        assert!(swap_conjugate_generator(&s).unwrap().max_abs_diff(&h) < 1e-12);
    }
}

#[test]
fn cnot_swapped_is_reversed_cnot() {
    // Oracle: CNOT with the second qubit as control, written out.
    let reversed = real(&[
        &[1.0, 0.0, 0.0, 0.0],
        &[0.0, 0.0, 0.0, 1.0],
        &[0.0, 0.0, 1.0, 0.0],
        &[0.0, 1.0, 0.0, 0.0],
    ]);
    let got = to_mat(swap_conjugate(&gates::cnot()).unwrap().matrix());
    for (r, s) in got.iter().zip(&reversed) {
        assert!(max_diff(r, s) < 1e-15);
    }
    assert!(cnot_hadamard_identity());
}

#[test]
fn hadamard_identity_on_states() {
    let hh = gates::hadamard().kron(&gates::hadamard());
    let lhs = hh.compose(&gates::cnot()).unwrap().compose(&hh).unwrap();
    let rhs = swap_conjugate(&gates::cnot()).unwrap();
    let plus_minus = PureState::new(vec!["a", "b"], vec![c(0.5), c(-0.5), c(0.5), c(-0.5)]).unwrap();
    let zero_one = PureState::basis(vec!["a", "b"], &[0, 1]).unwrap();
    for s in [plus_minus, zero_one] {
        let x = s.apply_unitary(&lhs, &["a", "b"]).unwrap();
        let y = s.apply_unitary(&rhs, &["a", "b"]).unwrap();
        assert!(x.max_abs_diff(&y).unwrap() < 1e-12);
    }
}

#[test]
fn lemma5_random_pairs() {
    let mut rng = random::seeded(102);
    for _ in 0..100 {
        let l3 = random::uniform(&mut rng, -std::f64::consts::PI, std::f64::consts::PI);
        let l4 = random::uniform(&mut rng, -std::f64::consts::PI, std::f64::consts::PI);
        assert!(check_condition(&controlled_phase_gate(l3, l4), &lemma5_unitaries(l3, l4)).unwrap());
    }
    let cz = controlled_phase_gate(0.0, std::f64::consts::PI);
    assert!(check_condition(&cz, &SymmetrizerQuad::identities()).unwrap());
}

#[test]
fn lemma5_gate_matches_literal_diagonal() {
    let (l3, l4) = (0.7, 2.1);
    let g = controlled_phase_gate(l3, l4);
    let want = [c(1.0), c(1.0), C64::from_polar(1.0, l3), C64::from_polar(1.0, l4)];
    for i in 0..4 {
        for j in 0..4 {
            let w = if i == j { want[i] } else { c(0.0) };
            assert!((g.matrix()[(i, j)] - w).norm() < 1e-15);
        }
    }
}

#[test]
fn rank1_random_generators() {
    let mut rng = random::seeded(103);
    for _ in 0..100 {
        let v = random::amplitudes(&mut rng, 4);
        let l = random::uniform(&mut rng, 0.1, 3.0) * if rng_sign(&mut rng) { 1.0 } else { -1.0 };
        let h = HermitianGenerator::from_spectrum(&[(l, v)]).unwrap();
        let q = rank1_symmetrizers(&h).unwrap();
        assert!(check_condition(&h.exp_i(), &q).unwrap());
    }
}

fn rng_sign(rng: &mut random::SeededRng) -> bool { random::uniform(rng, 0.0, 1.0) < 0.5 }

#[test]
fn rank1_on_phi_plus_accepts_identities() {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let h = HermitianGenerator::from_spectrum(&[(1.2, vec![c(r), c(0.0), c(0.0), c(r)])]).unwrap();
    assert!(check_condition(&h.exp_i(), &SymmetrizerQuad::identities()).unwrap());
    assert!(check_condition(&h.exp_i(), &rank1_symmetrizers(&h).unwrap()).unwrap());
}

#[test]
fn bell_projectors_are_swap_invariant() {
    for b in bell_basis() {
        let p = HermitianGenerator::from_spectrum(&[(1.0, b.to_vec())]).unwrap();
        assert!(swap_conjugate_generator(&p).unwrap().max_abs_diff(&p) < 1e-12);
        let zz = gates::pauli_z().kron(&gates::pauli_z());
        assert!(p.conjugate(&zz).unwrap().max_abs_diff(&p) < 1e-12);
    }
}

#[test]
fn bell_diagonal_random() {
    let mut rng = random::seeded(104);
    for _ in 0..100 {
        let pairs: Vec<(f64, Vec<C64>)> =
            bell_basis().iter().map(|b| (random::uniform(&mut rng, -3.0, 3.0), b.to_vec())).collect();
        let h = HermitianGenerator::from_spectrum(&pairs).unwrap();
        assert!(check_condition(&h.exp_i(), &bell_diagonal_symmetrizers(&h).unwrap()).unwrap());
    }
}

#[test]
fn counterexample_fires_for_nondegenerate_pairs() {
    let mut rng = random::seeded(105);
    for _ in 0..100 {
        let l3 = random::uniform(&mut rng, 0.1, 3.0);
        let l4 = random::uniform(&mut rng, 0.1, 3.0);
        assert!(counterexample_witness(l3, l4).fires());
    }
}

#[test]
fn reduced_spectrum_invariant_under_local_conjugation() {
    let mut rng = random::seeded(106);
    let h = counterexample_generator(1.0, 2.0);
    let reduced = |g: &HermitianGenerator| {
        HermitianGenerator::new(partial_trace_b(g.matrix()).unwrap()).unwrap().spectrum()
    };
    let before = reduced(&h);
    for _ in 0..100 {
        let local = random::unitary(&mut rng, 2).kron(&random::unitary(&mut rng, 2));
        let after = reduced(&h.conjugate(&local).unwrap());
        for (a, b) in before.iter().zip(&after) {
            assert!((a - b).abs() < 1e-9);
        }
    }
}

#[test]
fn partial_trace_matches_index_sum() {
    let mut rng = random::seeded(107);
    let m = random::unitary(&mut rng, 4).into_matrix();
    let t = partial_trace_b(&m).unwrap();
    for i in 0..2 {
        for j in 0..2 {
            let want: C64 = (0..2).map(|k| m[(2 * i + k, 2 * j + k)]).sum();
            assert!((t[(i, j)] - want).norm() < 1e-15);
        }
    }
}

#[test]
fn condition_is_phase_invariant() {
    let mut rng = random::seeded(108);
    for _ in 0..20 {
        let (l3, l4) = (random::uniform(&mut rng, -3.0, 3.0), random::uniform(&mut rng, -3.0, 3.0));
        let theta = random::uniform(&mut rng, -3.0, 3.0);
        let g = controlled_phase_gate(l3, l4);
        let q = lemma5_unitaries(l3, l4);
        assert_eq!(check_condition(&g, &q).unwrap(), check_condition(&g.with_phase(theta), &q).unwrap());
        let u = random::unitary(&mut rng, 4);
        let id = SymmetrizerQuad::identities();
        assert_eq!(check_condition(&u, &id).unwrap(), check_condition(&u.with_phase(theta), &id).unwrap());
    }
}

#[test]
fn dimension_errors() {
    assert!(check_condition(&gates::hadamard(), &SymmetrizerQuad::identities()).is_err());
    let bad = SymmetrizerQuad { u1: Unitary::identity(2), ..SymmetrizerQuad::identities() };
    assert!(check_condition(&gates::cnot(), &bad).is_err());
    let m = na::DMatrix::<C64>::identity(2, 2);
    assert!(partial_trace_b(&m).is_err());
}
