//! Standard gates in the computational basis, control qubits first.

use std::f64::consts::FRAC_1_SQRT_2;
use nalgebra as na;
use super::{ StateError, StateResult, Unitary, C64 };

fn real(dim: usize, entries: &[f64]) -> Unitary {
    Unitary::from_real_rows(dim, entries).expect("constant gate is unitary")
}

/// σ_x.
pub fn not() -> Unitary { real(2, &[0.0, 1.0, 1.0, 0.0]) }

pub fn pauli_x() -> Unitary { not() }

pub fn pauli_z() -> Unitary { real(2, &[1.0, 0.0, 0.0, -1.0]) }

pub fn pauli_y() -> Unitary {
    let i = C64::i();
    Unitary::from_rows(2, &[C64::new(0.0, 0.0), -i, i, C64::new(0.0, 0.0)])
        .expect("σ_y is unitary")
}

pub fn hadamard() -> Unitary {
    let s = FRAC_1_SQRT_2;
    real(2, &[s, s, s, -s])
}

pub fn identity() -> Unitary { Unitary::identity(1) }

/// CNOT with the first qubit as control.
pub fn cnot() -> Unitary {
    controlled(&not(), 1).expect("σ_x is a one-qubit gate")
}

/// CNOT with the second qubit as control.
pub fn cnot_reversed() -> Unitary {
    real(4, &[
        1.0, 0.0, 0.0, 0.0,
        0.0, 0.0, 0.0, 1.0,
        0.0, 0.0, 1.0, 0.0,
        0.0, 1.0, 0.0, 0.0,
    ])
}

/// Controlled-σ_z.
pub fn cz() -> Unitary {
    controlled(&pauli_z(), 1).expect("σ_z is a one-qubit gate")
}

/// The two-qubit state swapper.
pub fn swap() -> Unitary {
    real(4, &[
        1.0, 0.0, 0.0, 0.0,
        0.0, 0.0, 1.0, 0.0,
        0.0, 1.0, 0.0, 0.0,
        0.0, 0.0, 0.0, 1.0,
    ])
}

pub fn toffoli() -> Unitary {
    controlled(&not(), 2).expect("σ_x is a one-qubit gate")
}

/// `𝟙_{2^{c+1}−2} ⊕ u`: applies `u` to the last qubit iff all `controls`
/// leading qubits are `|1⟩`.
pub fn controlled(u: &Unitary, controls: usize) -> StateResult<Unitary> {
    if u.dim() != 2 {
        return Err(StateError::DimensionMismatch { expected: 2, found: u.dim() });
    }
    let dim = 2usize << controls;
    let mut m = na::DMatrix::<C64>::identity(dim, dim);
    m.view_mut((dim - 2, dim - 2), (2, 2)).copy_from(u.matrix());
    Unitary::new(m)
}
