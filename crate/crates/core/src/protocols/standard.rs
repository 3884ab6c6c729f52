//! Ready-made protocols on the conventional node names: `Alice`, `Bob`,
//! `Clare` for two- and three-party gates, `P1 … P{n−1}` and `T` for the
//! `n`-party control-U.

use crate::{
    qstate::{ gates, Unitary },
    runtime::{ ProgramBuilder, QubitRef },
};
use super::{
    multi_party, two_party, CostReport, GateSpec, Protocol, ProtocolError, ProtocolResult,
};

pub const ALICE: &str = "Alice";
pub const BOB: &str = "Bob";
pub const CLARE: &str = "Clare";
pub const TARGET: &str = "T";

fn assemble(b: ProgramBuilder, ideal: Unitary, inputs: Vec<QubitRef>, outputs: Vec<QubitRef>, declared: CostReport) -> ProtocolResult<Protocol> {
    let spec = GateSpec::new(ideal, inputs, outputs.clone())?;
    Ok(Protocol { program: b.finish(outputs), spec, declared })
}

fn two_nodes(name: &str) -> ProtocolResult<(ProgramBuilder, QubitRef, QubitRef)> {
    let mut b = ProgramBuilder::new(name);
    let alice = b.node(ALICE);
    let bob = b.node(BOB);
    let a = b.input(&alice, "A")?;
    let bq = b.input(&bob, "B")?;
    Ok((b, a, bq))
}

/// Control on Alice's `A`, target on Bob's `B`.
pub fn control_u(u: &Unitary) -> ProtocolResult<Protocol> {
    let (mut b, a, bq) = two_nodes("control-u")?;
    two_party::nonlocal_control_u(&mut b, u, &a, &bq)?;
    let declared = CostReport::new(1, &[(ALICE, BOB, 1), (BOB, ALICE, 1)]);
    assemble(b, gates::controlled(u, 1)?, vec![a.clone(), bq.clone()], vec![a, bq], declared)
}

pub fn cnot() -> Protocol {
    let mut p = control_u(&gates::not()).expect("standard protocol builds");
    p.program.name = "cnot".into();
    p
}

/// Alice's `A` to a new qubit at Bob.
pub fn teleportation() -> Protocol {
    let build = || -> ProtocolResult<Protocol> {
        let mut b = ProgramBuilder::new("teleport");
        let alice = b.node(ALICE);
        let bob = b.node(BOB);
        let a = b.input(&alice, "A")?;
        let out = two_party::teleport(&mut b, &a, &bob)?;
        let declared = CostReport::new(1, &[(ALICE, BOB, 2)]);
        assemble(b, gates::identity(), vec![a], vec![out], declared)
    };
    build().expect("standard protocol builds")
}

pub fn generic_two_qubit(u: &Unitary) -> ProtocolResult<Protocol> {
    let (mut b, a, bq) = two_nodes("generic-two-qubit")?;
    let (oa, ob) = two_party::nonlocal_generic_two_qubit(&mut b, u, &a, &bq)?;
    let declared = CostReport::new(2, &[(ALICE, BOB, 2), (BOB, ALICE, 2)]);
    assemble(b, u.clone(), vec![a, bq], vec![oa, ob], declared)
}

pub fn swap() -> Protocol {
    let build = || -> ProtocolResult<Protocol> {
        let (mut b, a, bq) = two_nodes("swap")?;
        let (oa, ob) = two_party::nonlocal_swap(&mut b, &a, &bq)?;
        let declared = CostReport::new(2, &[(ALICE, BOB, 2), (BOB, ALICE, 2)]);
        assemble(b, gates::swap(), vec![a, bq], vec![oa, ob], declared)
    };
    build().expect("standard protocol builds")
}

/// The gate-array comparison: three non-local CNOTs.
pub fn swap_three_cnots() -> Protocol {
    let build = || -> ProtocolResult<Protocol> {
        let (mut b, a, bq) = two_nodes("swap-3cnot")?;
        two_party::swap_via_three_cnots(&mut b, &a, &bq)?;
        let declared = CostReport::new(3, &[(ALICE, BOB, 3), (BOB, ALICE, 3)]);
        assemble(b, gates::swap(), vec![a.clone(), bq.clone()], vec![a, bq], declared)
    };
    build().expect("standard protocol builds")
}

/// Controls on Alice's `A` and Bob's `B`, target on Clare's `C`.
pub fn three_party_control_u(u: &Unitary) -> ProtocolResult<Protocol> {
    let mut b = ProgramBuilder::new("three-party-control-u");
    let alice = b.node(ALICE);
    let bob = b.node(BOB);
    let clare = b.node(CLARE);
    let a = b.input(&alice, "A")?;
    let bq = b.input(&bob, "B")?;
    let c = b.input(&clare, "C")?;
    multi_party::nonlocal_three_party_control_u(&mut b, u, &a, &bq, &c)?;
    let declared = CostReport::new(2, &[(ALICE, CLARE, 1), (BOB, CLARE, 1), (CLARE, ALICE, 1), (CLARE, BOB, 1)]);
    let io = vec![a, bq, c];
    assemble(b, gates::controlled(u, 2)?, io.clone(), io, declared)
}

pub fn toffoli() -> Protocol {
    let mut p = three_party_control_u(&gates::not()).expect("standard protocol builds");
    p.program.name = "toffoli".into();
    p
}

/// Node names of the `n`-party gate: controls `P1 … P{n−1}`, then `T`.
pub fn n_party_nodes(n: usize) -> Vec<String> {
    let mut names: Vec<String> = (1..n).map(|k| format!("P{k}")).collect();
    names.push(TARGET.to_string());
    names
}

/// Control qubit `P_k` at node `P_k` for each `k`, target `T` at node `T`.
pub fn n_party_control_u(n: usize, u: &Unitary) -> ProtocolResult<Protocol> {
    if n < 2 {
        return Err(ProtocolError::BadArity(n));
    }
    let mut b = ProgramBuilder::new(format!("{n}-party-control-u"));
    let names = n_party_nodes(n);
    let nodes: Vec<_> = names.iter().map(|name| b.node(name)).collect();
    let io = nodes
        .iter()
        .map(|node| b.input(node, node.as_str()))
        .collect::<Result<Vec<_>, _>>()?;
    let (target, controls) = io.split_last().expect("n >= 2");
    multi_party::nonlocal_n_party_control_u(&mut b, u, controls, target)?;
    let directed: Vec<(&str, &str, usize)> = names[..n - 1]
        .iter()
        .flat_map(|p| [(p.as_str(), TARGET, 1), (TARGET, p.as_str(), 1)])
        .collect();
    let declared = CostReport::new(n - 1, &directed);
    assemble(b, gates::controlled(u, n - 1)?, io.clone(), io, declared)
}
