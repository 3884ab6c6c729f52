use crate::{
    qstate::{ gates, Unitary },
    runtime::{ ProgramBuilder, QubitRef },
};
use super::{ require_distinct, ProtocolError, ProtocolResult };

/// Three-party control-U (`𝟙₆ ⊕ u`) with controls at two nodes and the
/// target at a third. Two ebits (each control node with the target node) and
/// four bits, one per direction per control–target pair.
///
/// Step order: each controller in turn copies its value onto a fresh half at
/// the target node; the target node applies the doubly-controlled `u` from
/// its two halves, Hadamards both, then measures the second half (reply to
/// the second controller) before the first.
pub fn nonlocal_three_party_control_u(
    b: &mut ProgramBuilder,
    u: &Unitary,
    c1: &QubitRef,
    c2: &QubitRef,
    target: &QubitRef,
) -> ProtocolResult<()> {
    require_distinct(&[c1, c2, target])?;
    let ccu = gates::controlled(u, 2)?;
    let (alice, bob, clare) = (&c1.owner, &c2.owner, &target.owner);
    let (a1, t1) = b.alloc_bell_pair(alice, &format!("{}1", c1.label), clare, &format!("{}1", target.label))?;
    let (b1, t2) = b.alloc_bell_pair(bob, &format!("{}1", c2.label), clare, &format!("{}2", target.label))?;

    b.local_named(alice, "CNOT", &gates::cnot(), &[c1, &a1])?;
    let m = b.measure(alice, &a1)?;
    b.send_bit(alice, clare, m)?;
    b.correct_x(clare, m, &t1)?;

    b.local_named(bob, "CNOT", &gates::cnot(), &[c2, &b1])?;
    let m = b.measure(bob, &b1)?;
    b.send_bit(bob, clare, m)?;
    b.correct_x(clare, m, &t2)?;

    b.local_named(clare, "CCU", &ccu, &[&t1, &t2, target])?;
    b.local_named(clare, "H", &gates::hadamard(), &[&t1])?;
    b.local_named(clare, "H", &gates::hadamard(), &[&t2])?;

    let m = b.measure(clare, &t2)?;
    b.send_bit(clare, bob, m)?;
    b.correct_z(bob, m, c2)?;

    let m = b.measure(clare, &t1)?;
    b.send_bit(clare, alice, m)?;
    b.correct_z(alice, m, c1)?;
    Ok(())
}

/// Non-local Toffoli: [`nonlocal_three_party_control_u`] with `u = σ_x`.
pub fn nonlocal_toffoli(
    b: &mut ProgramBuilder,
    c1: &QubitRef,
    c2: &QubitRef,
    target: &QubitRef,
) -> ProtocolResult<()> {
    nonlocal_three_party_control_u(b, &gates::not(), c1, c2, target)
}

/// `N`-party control-U (`N = controls.len() + 1`) with `N − 1` ebits and
/// `2(N − 1)` bits: one bit from each control node to the target node and one
/// back.
///
/// All pairs are shared up front. Controllers copy their values onto the
/// target node's halves in order; the target node applies the multiply
/// controlled `u`, Hadamards every half, then measures them in order and
/// replies to each controller.
pub fn nonlocal_n_party_control_u(
    b: &mut ProgramBuilder,
    u: &Unitary,
    controls: &[QubitRef],
    target: &QubitRef,
) -> ProtocolResult<()> {
    if controls.is_empty() {
        return Err(ProtocolError::BadArity(controls.len() + 1));
    }
    let mut all: Vec<&QubitRef> = controls.iter().collect();
    all.push(target);
    require_distinct(&all)?;
    let cu = gates::controlled(u, controls.len())?;
    let t = &target.owner;

    let pairs = controls
        .iter()
        .enumerate()
        .map(|(k, c)| {
            b.alloc_bell_pair(&c.owner, &format!("{}'", c.label), t, &format!("{}{}", target.label, k + 1))
        })
        .collect::<Result<Vec<_>, _>>()?;

    for (c, (ancilla, half)) in controls.iter().zip(&pairs) {
        b.local_named(&c.owner, "CNOT", &gates::cnot(), &[c, ancilla])?;
        let m = b.measure(&c.owner, ancilla)?;
        b.send_bit(&c.owner, t, m)?;
        b.correct_x(t, m, half)?;
    }

    let mut operands: Vec<&QubitRef> = pairs.iter().map(|(_, half)| half).collect();
    operands.push(target);
    b.local_named(t, "CU", &cu, &operands)?;
    for (_, half) in &pairs {
        b.local_named(t, "H", &gates::hadamard(), &[half])?;
    }

    for (c, (_, half)) in controls.iter().zip(&pairs) {
        let m = b.measure(t, half)?;
        b.send_bit(t, &c.owner, m)?;
        b.correct_z(&c.owner, m, c)?;
    }
    Ok(())
}
