use serde::Serialize;
use crate::{
    qstate::{ gates, PureState },
    runtime::{ run_protocol, NodeId, ProgramBuilder, QubitRef, RunOutcome },
};
use super::{ standard::{ ALICE, BOB }, two_party::nonlocal_swap, CostReport, ProtocolResult };

/// One of the four dense-coding messages.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DenseCodingCase {
    /// `[z, x]`: Alice applies `σ_x^x` then `σ_z^z` to her half.
    pub message: [u8; 2],
    pub encoding: String,
    /// Total probability of the branches that decode to `message`.
    pub decode_probability: f64,
    pub branches: usize,
    /// Whether every branch decodes to the same value.
    pub deterministic: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DenseCodingReport {
    pub cases: Vec<DenseCodingCase>,
    pub ledger: CostReport,
}

impl DenseCodingReport {
    pub fn decoded(&self, tol: f64) -> usize {
        self.cases.iter().filter(|c| c.deterministic && (c.decode_probability - 1.0).abs() <= tol).count()
    }
}

fn outcome_of(outcomes: &[(QubitRef, u8)], q: &QubitRef) -> Option<u8> {
    outcomes.iter().find(|(r, _)| r == q).map(|(_, v)| *v)
}

/// Alice encodes two bits on her half of `|φ⁺⟩`, a non-local swap hands the
/// qubit to Bob, and Bob decodes with a local Bell measurement.
pub fn dense_coding_demo() -> ProtocolResult<DenseCodingReport> {
    let mut cases = Vec::new();
    let mut ledger = None;
    for (z, x) in [(0u8, 0u8), (0, 1), (1, 0), (1, 1)] {
        let mut b = ProgramBuilder::new(format!("dense-coding-{z}{x}"));
        let alice = b.node(ALICE);
        let bob = b.node(BOB);
        let (a, bq) = b.alloc_bell_pair(&alice, "A", &bob, "B")?;
        let mut encoding = Vec::new();
        if x == 1 {
            b.local_named(&alice, "X", &gates::pauli_x(), &[&a])?;
            encoding.push("σ_x");
        }
        if z == 1 {
            b.local_named(&alice, "Z", &gates::pauli_z(), &[&a])?;
            encoding.push("σ_z");
        }
        let spare = b.alloc_qubit(&bob, "B2", PureState::zero("B2"))?;
        let (back, delivered) = nonlocal_swap(&mut b, &a, &spare)?;
        b.local_named(&bob, "CNOT", &gates::cnot(), &[&delivered, &bq])?;
        b.local_named(&bob, "H", &gates::hadamard(), &[&delivered])?;
        b.measure(&bob, &delivered)?;
        b.measure(&bob, &bq)?;
        let run = run_protocol(&b.finish(vec![back]), &[])?;

        let decoded: Vec<(f64, Option<[u8; 2]>)> = run
            .branches
            .iter()
            .map(|br| {
                let dz = outcome_of(&br.outcomes, &delivered);
                let dx = outcome_of(&br.outcomes, &bq);
                (br.probability, dz.zip(dx).map(|(a, b)| [a, b]))
            })
            .collect();
        let decode_probability = decoded.iter().filter(|(_, m)| *m == Some([z, x])).map(|(p, _)| p).sum();
        let deterministic = decoded.windows(2).all(|w| w[0].1 == w[1].1) && decoded.iter().all(|(_, m)| m.is_some());
        cases.push(DenseCodingCase {
            message: [z, x],
            encoding: if encoding.is_empty() { "𝟙".into() } else { encoding.join("·") },
            decode_probability,
            branches: run.branches.len(),
            deterministic,
        });
        ledger = Some(CostReport::from(&run.ledger));
    }
    Ok(DenseCodingReport { cases, ledger: ledger.expect("four messages") })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SwapEntanglingReport {
    /// Entanglement across the Alice/Bob cut before the swap, in ebits.
    pub entropy_before: f64,
    /// Minimum over branches of the same quantity after the swap.
    pub entropy_after: f64,
    /// Schmidt coefficients of each cross-node pair, worst branch.
    pub pair_schmidt: [f64; 2],
    pub branches: usize,
    pub ledger: CostReport,
}

fn local_phi_plus(b: &mut ProgramBuilder, node: &NodeId, l1: &str, l2: &str) -> ProtocolResult<(QubitRef, QubitRef)> {
    let q1 = b.alloc_qubit(node, l1, PureState::zero(l1))?;
    let q2 = b.alloc_qubit(node, l2, PureState::zero(l2))?;
    b.local_named(node, "H", &gates::hadamard(), &[&q1])?;
    b.local_named(node, "CNOT", &gates::cnot(), &[&q1, &q2])?;
    Ok((q1, q2))
}

/// Each side holds a local `|φ⁺⟩`; swapping one qubit of each pair leaves two
/// ebits shared between the nodes.
pub fn swap_entangling_demo() -> ProtocolResult<SwapEntanglingReport> {
    let setup = |name: &str| -> ProtocolResult<(ProgramBuilder, [QubitRef; 4])> {
        let mut b = ProgramBuilder::new(name);
        let alice = b.node(ALICE);
        let bob = b.node(BOB);
        let (a1, a2) = local_phi_plus(&mut b, &alice, "A1", "A2")?;
        let (b1, b2) = local_phi_plus(&mut b, &bob, "B1", "B2")?;
        Ok((b, [a1, a2, b1, b2]))
    };

    let (b, [a1, a2, b1, b2]) = setup("swap-entangle-before")?;
    let before: RunOutcome = run_protocol(&b.finish(vec![a1.clone(), a2.clone(), b1.clone(), b2.clone()]), &[])?;
    let alice_side = [a1.label.as_str(), a2.label.as_str()];
    let entropy_before = before.branches[0].state.entanglement_entropy(&alice_side)?;

    let (mut b, [a1, a2, b1, b2]) = setup("swap-entangle")?;
    let (at_a, at_b) = nonlocal_swap(&mut b, &a2, &b2)?;
    let run = run_protocol(&b.finish(vec![a1.clone(), at_a.clone(), b1.clone(), at_b.clone()]), &[])?;

    let mut entropy_after = f64::INFINITY;
    let mut pair_schmidt = [0.0, 1.0];
    for br in &run.branches {
        let cut = [a1.label.as_str(), at_a.label.as_str()];
        entropy_after = entropy_after.min(br.state.entanglement_entropy(&cut)?);
        let (left, right) = br.state.split(&[a1.label.as_str(), at_b.label.as_str()])?;
        for pair in [&left, &right] {
            let s = pair.schmidt_coefficients(&[pair.register()[0].as_str()])?;
            // Keep the pair furthest from maximal entanglement.
            if s[0] > pair_schmidt[0] || pair_schmidt[0] == 0.0 {
                pair_schmidt = [s[0], s[1]];
            }
        }
    }
    Ok(SwapEntanglingReport {
        entropy_before,
        entropy_after,
        pair_schmidt,
        branches: run.branches.len(),
        ledger: CostReport::from(&run.ledger),
    })
}
