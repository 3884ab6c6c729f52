use crate::{
    qstate::{ gates, Unitary },
    runtime::{ NodeId, ProgramBuilder, QubitRef },
};
use super::{ require_distinct, ProtocolError, ProtocolResult };

/// Non-local control-U with one shared ebit and one bit each way.
///
/// The controller copies its qubit's computational value onto the target side
/// through the shared pair (CNOT onto its half, measure, send, X-correct),
/// the target side applies control-U from its half, then erases its half in
/// the X basis (H, measure, send) and the controller Z-corrects.
pub fn nonlocal_control_u(
    b: &mut ProgramBuilder,
    u: &Unitary,
    control: &QubitRef,
    target: &QubitRef,
) -> ProtocolResult<()> {
    require_distinct(&[control, target])?;
    let cu = gates::controlled(u, 1)?;
    let (alice, bob) = (&control.owner, &target.owner);
    let (a1, b1) = b.alloc_bell_pair(
        alice,
        &format!("{}1", control.label),
        bob,
        &format!("{}1", target.label),
    )?;

    b.local_named(alice, "CNOT", &gates::cnot(), &[control, &a1])?;
    let m = b.measure(alice, &a1)?;
    b.send_bit(alice, bob, m)?;
    b.correct_x(bob, m, &b1)?;

    b.local_named(bob, "CU", &cu, &[&b1, target])?;
    b.local_named(bob, "H", &gates::hadamard(), &[&b1])?;
    let m = b.measure(bob, &b1)?;
    b.send_bit(bob, alice, m)?;
    b.correct_z(alice, m, control)?;
    Ok(())
}

/// Non-local CNOT: [`nonlocal_control_u`] with `u = σ_x`.
pub fn nonlocal_cnot(b: &mut ProgramBuilder, control: &QubitRef, target: &QubitRef) -> ProtocolResult<()> {
    nonlocal_control_u(b, &gates::not(), control, target)
}

/// Teleports `qubit` to `to`, consuming one ebit and two bits. Returns the new
/// qubit at `to`; the original is measured away.
///
/// Bell measurement is CNOT then H on the sender side; the receiver corrects
/// with σ_x (conditioned on the partner-half outcome) then σ_z.
pub fn teleport(b: &mut ProgramBuilder, qubit: &QubitRef, to: &NodeId) -> ProtocolResult<QubitRef> {
    let from = qubit.owner.clone();
    if from == *to {
        return Err(ProtocolError::NotNonlocal(format!("{qubit} is already at {to}")));
    }
    let (half, dest) = b.alloc_bell_pair(
        &from,
        &format!("{}_e", qubit.label),
        to,
        &format!("{}@{}", qubit.label, to),
    )?;
    b.local_named(&from, "CNOT", &gates::cnot(), &[qubit, &half])?;
    b.local_named(&from, "H", &gates::hadamard(), &[qubit])?;
    let mz = b.measure(&from, qubit)?;
    let mx = b.measure(&from, &half)?;
    b.send_bit(&from, to, mx)?;
    b.send_bit(&from, to, mz)?;
    b.correct_x(to, mx, &dest)?;
    b.correct_z(to, mz, &dest)?;
    Ok(dest)
}

/// Any two-qubit gate by teleporting `a` to `bq`'s node, applying `u` there
/// and teleporting back. Two ebits, two bits each way. Returns the output
/// qubits in `(a, bq)` slot order.
pub fn nonlocal_generic_two_qubit(
    b: &mut ProgramBuilder,
    u: &Unitary,
    a: &QubitRef,
    bq: &QubitRef,
) -> ProtocolResult<(QubitRef, QubitRef)> {
    require_distinct(&[a, bq])?;
    if u.dim() != 4 {
        return Err(crate::qstate::StateError::DimensionMismatch { expected: 4, found: u.dim() }.into());
    }
    let moved = teleport(b, a, &bq.owner)?;
    b.local_named(&bq.owner, "U", u, &[&moved, bq])?;
    let back = teleport(b, &moved, &a.owner)?;
    Ok((back, bq.clone()))
}

/// State swapper as two independent teleportations, one each way. Two ebits,
/// two bits each way. Returns `(qubit now at a's node, qubit now at bq's
/// node)`, i.e. the outputs in `(a, bq)` slot order.
pub fn nonlocal_swap(b: &mut ProgramBuilder, a: &QubitRef, bq: &QubitRef) -> ProtocolResult<(QubitRef, QubitRef)> {
    require_distinct(&[a, bq])?;
    let at_b = teleport(b, a, &bq.owner)?;
    let at_a = teleport(b, bq, &a.owner)?;
    Ok((at_a, at_b))
}

/// State swapper as three chained non-local CNOTs (control at `a`, then at
/// `bq`, then at `a`). Three ebits, three bits each way.
pub fn swap_via_three_cnots(b: &mut ProgramBuilder, a: &QubitRef, bq: &QubitRef) -> ProtocolResult<()> {
    nonlocal_cnot(b, a, bq)?;
    nonlocal_cnot(b, bq, a)?;
    nonlocal_cnot(b, a, bq)
}
