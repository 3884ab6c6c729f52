mod common;

use common::*;
use locc_core::{
    protocols::{ self, basis_inputs, random_inputs, standard, CostReport, Mode },
    qstate::{ gates, random, PureState, C64 },
    runtime::{ run_traced, Instr, NodeId },
};

fn half() -> f64 { std::f64::consts::FRAC_1_SQRT_2 }

#[test]
fn cnot_all_inputs() {
    let p = standard::cnot();
    let mut rng = random::seeded(1);
    let mut sets = basis_inputs(2);
    sets.extend(random_inputs(&mut rng, 2, 100));
    assert!(verify_against(&p, &cnot_matrix(), &sets) >= 1.0 - 1e-9);
    let v = p.verify(&sets, Mode::Branch).unwrap();
    assert!(v.ledger_matches);
    assert_eq!(v.ledger.ebits_consumed, 1);
    assert_eq!(v.ledger.bits(&NodeId::new("Alice"), &NodeId::new("Bob")), 1);
    assert_eq!(v.ledger.bits(&NodeId::new("Bob"), &NodeId::new("Alice")), 1);
}

#[test]
fn cnot_on_10_gives_11_in_every_branch() {
    let p = standard::cnot();
    let run = p.run(&[PureState::basis(vec!["a"], &[1]).unwrap(), PureState::zero("b")]).unwrap();
    assert_eq!(run.branches.len(), 4);
    for br in &run.branches {
        assert!((br.probability - 0.25).abs() < 1e-12);
        let s = br.state.reorder(&["A", "B"]).unwrap();
        assert!((s.amplitudes()[3].norm() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn cnot_is_phase_exact() {
    let p = standard::cnot();
    let mut rng = random::seeded(2);
    let v = p.verify(&random_inputs(&mut rng, 2, 20), Mode::Branch).unwrap();
    assert!(v.worst_exact_diff < 1e-9);
}

#[test]
fn post_cnot_intermediate_state() {
    let p = standard::cnot();
    let (a, b) = (0.6, 0.8);
    let inputs = [PureState::qubit("x", c(a), c(b)).unwrap(), PureState::qubit("y", c(0.28), c(0.96)).unwrap()];
    let first_cnot = p
        .program
        .instructions
        .iter()
        .position(|i| matches!(i, Instr::Local { name, .. } if name == "CNOT"))
        .unwrap();
    let mut seen = None;
    run_traced(&p.program, &inputs, &mut random::seeded(0), |ev| {
        if ev.index == first_cnot {
            seen = Some(ev.state.clone());
        }
    })
    .unwrap();
    let s = seen.unwrap().reorder(&["A", "A1", "B1", "B"]).unwrap();
    // (α|000⟩+α|011⟩+β|110⟩+β|101⟩)/√2 on (A, A1, B1), then ⊗ Bob's input.
    let mut expected = [c(0.0); 8];
    expected[0b000] = c(a * half());
    expected[0b011] = c(a * half());
    expected[0b110] = c(b * half());
    expected[0b101] = c(b * half());
    let want: Vec<C64> = expected.iter().flat_map(|&x| [x * 0.28, x * 0.96]).collect();
    assert!(max_diff(s.amplitudes(), &want) < 1e-10);
}

#[test]
fn x_correction_leaves_alpha00_plus_beta11() {
    // α|00⟩+β|11⟩ on (A, B1) in both branches of Alice's measurement.
    let p = standard::cnot();
    let (a, b) = (0.6, 0.8);
    let inputs = [PureState::qubit("x", c(a), c(b)).unwrap(), PureState::zero("y")];
    let cu = p
        .program
        .instructions
        .iter()
        .position(|i| matches!(i, Instr::Local { name, .. } if name == "CU"))
        .unwrap();
    for seed in 0..8 {
        let mut seen = None;
        run_traced(&p.program, &inputs, &mut random::seeded(seed), |ev| {
            if ev.index + 1 == cu {
                seen = Some(ev.state.clone());
            }
        })
        .unwrap();
        let s = seen.unwrap().reorder(&["A", "B1", "B"]).unwrap();
        let want = [c(a), c(0.0), c(0.0), c(0.0), c(0.0), c(0.0), c(b), c(0.0)];
        assert!(max_diff(s.amplitudes(), &want) < 1e-10);
    }
}

#[test]
fn cnot_creates_one_ebit() {
    let p = standard::cnot();
    let plus = PureState::qubit("x", c(half()), c(half())).unwrap();
    let run = p.run(&[plus, PureState::zero("y")]).unwrap();
    for br in &run.branches {
        let s = br.state.schmidt_coefficients(&["A"]).unwrap();
        assert!((s[0] - half()).abs() < 1e-9 && (s[1] - half()).abs() < 1e-9);
    }
}

#[test]
fn control_u_random_unitaries() {
    let mut rng = random::seeded(11);
    let ledger = standard::cnot().declared;
    for _ in 0..30 {
        let u = random::unitary(&mut rng, 2);
        let p = standard::control_u(&u).unwrap();
        assert_eq!(p.declared, ledger);
        let oracle = multi_controlled(&to_mat(u.matrix()), 2);
        let mut sets = basis_inputs(2);
        sets.extend(random_inputs(&mut rng, 2, 5));
        assert!(verify_against(&p, &oracle, &sets) >= 1.0 - 1e-9);
        assert!(p.verify(&sets, Mode::Branch).unwrap().ledger_matches);
    }
}

#[test]
fn control_z_example() {
    let p = standard::control_u(&gates::pauli_z()).unwrap();
    let one = PureState::basis(vec!["x"], &[1]).unwrap();
    let plus = PureState::qubit("y", c(half()), c(half())).unwrap();
    for br in &p.run(&[one, plus]).unwrap().branches {
        let s = br.state.reorder(&["A", "B"]).unwrap();
        let want = [c(0.0), c(0.0), c(half()), c(-half())];
        assert!(overlap_abs(s.amplitudes(), &want) > 1.0 - 1e-9);
    }
}

#[test]
fn control_not_matches_cnot_branch_for_branch() {
    let via_cu = standard::control_u(&gates::not()).unwrap();
    let cnot = standard::cnot();
    let mut rng = random::seeded(4);
    for inputs in random_inputs(&mut rng, 2, 10) {
        let a = via_cu.run(&inputs).unwrap();
        let b = cnot.run(&inputs).unwrap();
        assert_eq!(a.branches.len(), b.branches.len());
        for (x, y) in a.branches.iter().zip(&b.branches) {
            assert!(x.state.max_abs_diff(&y.state).unwrap() < 1e-12);
        }
    }
}

#[test]
fn teleport_random_states() {
    let p = standard::teleportation();
    let mut rng = random::seeded(8);
    let id = real(&[&[1.0, 0.0], &[0.0, 1.0]]);
    let sets = random_inputs(&mut rng, 1, 50);
    assert!(verify_against(&p, &id, &sets) >= 1.0 - 1e-9);
    let v = p.verify(&sets, Mode::Branch).unwrap();
    assert!(v.ledger_matches && v.worst_exact_diff < 1e-9);
    assert_eq!(p.declared, CostReport::new(1, &[("Alice", "Bob", 2)]));
}

#[test]
fn generic_two_qubit_random_unitaries() {
    let mut rng = random::seeded(21);
    for _ in 0..10 {
        let u = random::unitary(&mut rng, 4);
        let p = standard::generic_two_qubit(&u).unwrap();
        let mut sets = basis_inputs(2);
        sets.extend(random_inputs(&mut rng, 2, 3));
        assert!(verify_against(&p, &to_mat(u.matrix()), &sets) >= 1.0 - 1e-9);
        let v = p.verify(&sets, Mode::Branch).unwrap();
        assert!(v.ledger_matches);
        assert_eq!(v.ledger.ebits_consumed, 2);
    }
}

#[test]
fn swap_protocols() {
    let mut rng = random::seeded(31);
    let mut sets = basis_inputs(2);
    sets.extend(random_inputs(&mut rng, 2, 20));
    for p in [standard::swap(), standard::swap_three_cnots()] {
        assert!(verify_against(&p, &swap_matrix(), &sets) >= 1.0 - 1e-9, "{}", p.name());
        assert!(p.verify(&sets, Mode::Branch).unwrap().ledger_matches, "{}", p.name());
    }
    assert!(standard::swap().declared.ebits < standard::swap_three_cnots().declared.ebits);
}

#[test]
fn toffoli_all_inputs() {
    let p = standard::toffoli();
    let mut rng = random::seeded(41);
    let mut sets = basis_inputs(3);
    sets.extend(random_inputs(&mut rng, 3, 30));
    assert!(verify_against(&p, &toffoli_matrix(), &sets) >= 1.0 - 1e-9);
    let v = p.verify(&sets, Mode::Branch).unwrap();
    assert!(v.ledger_matches && v.worst_exact_diff < 1e-9);
    assert_eq!(v.ledger.ebits_consumed, 2);
    assert_eq!(v.ledger.bits_total(), 4);
    let generic = random_inputs(&mut rng, 3, 1).remove(0);
    assert_eq!(p.run(&generic).unwrap().branches.len(), 16);
}

#[test]
fn toffoli_intermediate_state() {
    let p = standard::toffoli();
    let ccu = p
        .program
        .instructions
        .iter()
        .position(|i| matches!(i, Instr::Local { name, .. } if name == "CCU"))
        .unwrap();
    let (al, be, ga, de, et, xi) = (0.6, 0.8, 0.28, 0.96, 0.8, -0.6);
    let inputs = [
        PureState::qubit("a", c(al), c(be)).unwrap(),
        PureState::qubit("b", c(ga), c(de)).unwrap(),
        PureState::qubit("c", c(et), c(xi)).unwrap(),
    ];
    let mut want = vec![c(0.0); 32];
    // (α|00⟩+β|11⟩)_{A C1} ⊗ (γ|00⟩+δ|11⟩)_{B C2} ⊗ |ψ⟩_C
    for (ac, x) in [(0, al), (3, be)] {
        for (bc, y) in [(0, ga), (3, de)] {
            for (cc, z) in [(0, et), (1, xi)] {
                want[(ac << 3) | (bc << 1) | cc] = c(x * y * z);
            }
        }
    }
    for seed in 0..12 {
        let mut seen = None;
        run_traced(&p.program, &inputs, &mut random::seeded(seed), |ev| {
            if ev.index + 1 == ccu {
                seen = Some(ev.state.clone());
            }
        })
        .unwrap();
        let s = seen.unwrap().reorder(&["A", "C1", "B", "C2", "C"]).unwrap();
        assert!(max_diff(s.amplitudes(), &want) < 1e-9);
    }
}

#[test]
fn three_party_control_u_random() {
    let mut rng = random::seeded(51);
    for _ in 0..10 {
        let u = random::unitary(&mut rng, 2);
        let p = standard::three_party_control_u(&u).unwrap();
        let mut sets = basis_inputs(3);
        sets.extend(random_inputs(&mut rng, 3, 3));
        assert!(verify_against(&p, &multi_controlled(&to_mat(u.matrix()), 3), &sets) >= 1.0 - 1e-9);
        assert!(p.verify(&sets, Mode::Branch).unwrap().ledger_matches);
    }
}

#[test]
fn n_party_ledgers_and_baselines() {
    let x = real(&[&[0.0, 1.0], &[1.0, 0.0]]);
    for n in 2..=5 {
        let p = standard::n_party_control_u(n, &gates::not()).unwrap();
        let v = p.verify(&basis_inputs(n), Mode::Branch).unwrap();
        assert!(v.ledger_matches);
        assert_eq!(v.ledger.ebits_consumed, n - 1);
        assert_eq!(v.ledger.bits_total(), 2 * (n - 1));
        assert!(verify_against(&p, &multi_controlled(&x, n), &basis_inputs(n)) >= 1.0 - 1e-9);
        let base = protocols::baseline_costs(n).unwrap();
        assert!(base.gate_sim_ebits as usize >= n - 1);
        assert!(base.teleport_ebits as usize > n - 1);
        assert!(base.teleport_bits as usize > 2 * (n - 1));
    }
    let base = protocols::baseline_costs(5).unwrap();
    assert_eq!(base.gate_sim_ebits, 44);
}

#[test]
fn two_party_specialization_matches_cnot() {
    let two = standard::n_party_control_u(2, &gates::not()).unwrap();
    let cnot = standard::cnot();
    let mut rng = random::seeded(61);
    for inputs in random_inputs(&mut rng, 2, 5) {
        let a = two.run(&inputs).unwrap();
        let b = cnot.run(&inputs).unwrap();
        assert_eq!(
            CostReport::from(&a.ledger).bits_total,
            CostReport::from(&b.ledger).bits_total
        );
        assert_eq!(a.ledger.ebits_consumed, b.ledger.ebits_consumed);
        let outs = |run: &locc_core::runtime::RunOutcome, labels: [&str; 2]| -> Vec<Vec<C64>> {
            run.branches.iter().map(|br| br.state.reorder(&labels).unwrap().amplitudes().to_vec()).collect()
        };
        let xa = outs(&a, ["P1", "T"]);
        let xb = outs(&b, ["A", "B"]);
        assert_eq!(xa.len(), xb.len());
        for (p, q) in xa.iter().zip(&xb) {
            assert!(max_diff(p, q) < 1e-12);
        }
    }
}

#[test]
fn branch_count_is_two_to_the_measurements() {
    let mut rng = random::seeded(71);
    for p in [standard::cnot(), standard::teleportation(), standard::swap(), standard::toffoli()] {
        let k = p.spec.inputs.len();
        let inputs = random_inputs(&mut rng, k, 1).remove(0);
        let run = p.run(&inputs).unwrap();
        assert_eq!(run.branches.len(), 1 << p.program.measurement_count(), "{}", p.name());
        assert!((run.total_probability() - 1.0).abs() < 1e-10);
    }
}

#[test]
fn sample_mode_agrees() {
    let p = standard::toffoli();
    let mut rng = random::seeded(81);
    let sets = random_inputs(&mut rng, 3, 20);
    let v = p.verify(&sets, Mode::Sample { seed: 5 }).unwrap();
    assert_eq!(v.branches, 20);
    assert!(v.passed(1e-9));
}

#[test]
fn demos() {
    let d = protocols::dense_coding_demo().unwrap();
    assert_eq!(d.decoded(1e-9), 4);
    assert!(d.cases.iter().all(|c| c.deterministic));
    let s = protocols::swap_entangling_demo().unwrap();
    assert!((s.entropy_after - 2.0).abs() < 1e-9 && s.entropy_before.abs() < 1e-9);
}
