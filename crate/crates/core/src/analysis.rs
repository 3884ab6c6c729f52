//! Swap symmetry of two-qubit gates.
//!
//! A gate `U_AB` satisfies the symmetry condition when swapping its two
//! qubits can be undone by local unitaries: `U_ss U_AB U_ss† = (u1 ⊗ u2)
//! U_AB (u3 ⊗ u4)` up to a global phase. This module extracts generators,
//! builds local quads for the cases where one is known to exist, and gives a
//! spectral witness for a case where none can.

use std::f64::consts::PI;
use nalgebra as na;
use serde::Serialize;
use thiserror::Error;
use crate::qstate::{ gates, HermitianGenerator, PureState, StateError, Unitary, C64, TOL_STATE };

/// Threshold separating zero from nonzero generator eigenvalues.
pub const TOL_RANK: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnalysisError {
    #[error(transparent)]
    State(#[from] StateError),

    #[error("generator must have exactly one nonzero eigenvalue, found {0}")]
    RankMismatch(usize),

    #[error("generator is not diagonal in the Bell basis (off-diagonal weight {0:e})")]
    NotBellDiagonal(f64),
}

pub type AnalysisResult<T> = Result<T, AnalysisError>;

/// Local one-qubit unitaries `(u1, u2, u3, u4)` of the symmetry condition.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetrizerQuad {
    pub u1: Unitary,
    pub u2: Unitary,
    pub u3: Unitary,
    pub u4: Unitary,
}

impl SymmetrizerQuad {
    pub fn identities() -> Self {
        Self { u1: gates::identity(), u2: gates::identity(), u3: gates::identity(), u4: gates::identity() }
    }

    pub fn uniform(u: &Unitary) -> Self {
        Self { u1: u.clone(), u2: u.clone(), u3: u.clone(), u4: u.clone() }
    }
}

/// Sorted spectra of the reduced operator `Tr_B` before and after swap
/// conjugation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumWitness {
    pub spectrum_a_before: Vec<f64>,
    pub spectrum_a_after: Vec<f64>,
}

impl SpectrumWitness {
    /// True when the spectra differ, ruling out any local `u1 ⊗ u2` with
    /// `U_ss H U_ss† = (u1 ⊗ u2) H (u1 ⊗ u2)†`.
    pub fn fires(&self) -> bool {
        self.spectrum_a_before
            .iter()
            .zip(&self.spectrum_a_after)
            .any(|(a, b)| (a - b).abs() > TOL_STATE)
    }
}

fn require_two_qubit(dim: usize) -> AnalysisResult<()> {
    if dim != 4 {
        return Err(StateError::DimensionMismatch { expected: 4, found: dim }.into());
    }
    Ok(())
}

/// `U_ss · u · U_ss†`.
pub fn swap_conjugate(u: &Unitary) -> AnalysisResult<Unitary> {
    require_two_qubit(u.dim())?;
    let s = gates::swap();
    Ok(s.compose(u)?.compose(&s)?)
}

/// `U_ss · h · U_ss†`.
pub fn swap_conjugate_generator(h: &HermitianGenerator) -> AnalysisResult<HermitianGenerator> {
    require_two_qubit(h.dim())?;
    Ok(h.conjugate(&gates::swap())?)
}

/// Hermitian `H` with `exp(iH) = v`, eigenphases on the principal branch
/// `(−π, π]`.
pub fn generator_of(v: &Unitary) -> AnalysisResult<HermitianGenerator> {
    let schur = na::Schur::new(v.matrix().clone());
    let (q, t) = schur.unpack();
    let phases = na::DVector::from_iterator(
        t.nrows(),
        t.diagonal().iter().map(|z| {
            let theta = z.arg();
            C64::new(if theta <= -PI + 1e-12 { theta + 2.0 * PI } else { theta }, 0.0)
        }),
    );
    let h = HermitianGenerator::new(&q * na::DMatrix::from_diagonal(&phases) * q.adjoint())?;
    let err = h.exp_i().max_abs_diff(v);
    if err > TOL_STATE {
        return Err(StateError::NotUnitary(err).into());
    }
    Ok(h)
}

/// Whether `U_ss uab U_ss† = (u1 ⊗ u2) uab (u3 ⊗ u4)` up to a global phase.
pub fn check_condition(uab: &Unitary, q: &SymmetrizerQuad) -> AnalysisResult<bool> {
    require_two_qubit(uab.dim())?;
    for u in [&q.u1, &q.u2, &q.u3, &q.u4] {
        if u.dim() != 2 {
            return Err(StateError::DimensionMismatch { expected: 2, found: u.dim() }.into());
        }
    }
    let lhs = swap_conjugate(uab)?;
    let rhs = q.u1.kron(&q.u2).compose(uab)?.compose(&q.u3.kron(&q.u4))?;
    Ok(lhs.equal_up_to_phase(&rhs, TOL_STATE))
}

fn unitary_2x2(m: na::DMatrix<C64>) -> AnalysisResult<Unitary> { Ok(Unitary::new(m)?) }

/// Quad for a generator `h = λ|ψ⟩⟨ψ|` with a single nonzero eigenvalue.
///
/// With `|ψ⟩ = Σ_k s_k |k⟩|k̃⟩`, `u1` takes `|k⟩ → |k̃⟩` and `u2` takes
/// `|k̃⟩ → |k⟩`, so `(u1 ⊗ u2)|ψ⟩ = U_ss|ψ⟩`. The quad is `(u1, u2, u1†,
/// u2†)`.
pub fn rank1_symmetrizers(h: &HermitianGenerator) -> AnalysisResult<SymmetrizerQuad> {
    require_two_qubit(h.dim())?;
    let (values, vectors) = h.eigen();
    let nonzero: Vec<usize> = (0..values.len()).filter(|&i| values[i].abs() > TOL_RANK).collect();
    if nonzero.len() != 1 {
        return Err(AnalysisError::RankMismatch(nonzero.len()));
    }
    let psi = &vectors[nonzero[0]];
    let form = PureState::new(vec!["a", "b"], psi.iter().copied().collect())?.schmidt_decompose("a")?;
    // Columns |k⟩ and |k̃⟩.
    let k = na::DMatrix::from_fn(2, 2, |i, j| form.basis_a[j][i]);
    let kt = na::DMatrix::from_fn(2, 2, |i, j| form.basis_b[j][i]);
    let u1 = unitary_2x2(&kt * k.adjoint())?;
    let u2 = unitary_2x2(&k * kt.adjoint())?;
    Ok(SymmetrizerQuad { u3: u1.adjoint(), u4: u2.adjoint(), u1, u2 })
}

/// The four Bell states `Φ⁺, Φ⁻, Ψ⁺, Ψ⁻` as amplitude vectors.
pub fn bell_basis() -> [[C64; 4]; 4] {
    let r = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let z = C64::new(0.0, 0.0);
    [[r, z, z, r], [r, z, z, -r], [z, r, r, z], [z, r, -r, z]]
}

/// Identity quad for a Bell-diagonal generator. Every Bell projector is
/// invariant under the swap, so `U_ss h U_ss† = h`.
pub fn bell_diagonal_symmetrizers(h: &HermitianGenerator) -> AnalysisResult<SymmetrizerQuad> {
    require_two_qubit(h.dim())?;
    let b = na::DMatrix::from_fn(4, 4, |i, j| bell_basis()[j][i]);
    let in_bell = b.adjoint() * h.matrix() * &b;
    let off = (0..4)
        .flat_map(|i| (0..4).filter(move |&j| j != i).map(move |j| (i, j)))
        .map(|(i, j)| in_bell[(i, j)].norm())
        .fold(0.0, f64::max);
    if off > TOL_STATE {
        return Err(AnalysisError::NotBellDiagonal(off));
    }
    Ok(SymmetrizerQuad::identities())
}

/// `|0⟩⟨0| ⊗ 𝟙 + |1⟩⟨1| ⊗ diag(e^{iλ3}, e^{iλ4})`.
pub fn controlled_phase_gate(l3: f64, l4: f64) -> Unitary {
    Unitary::diagonal_phases(&[0.0, 0.0, l3, l4]).expect("diagonal phases are unitary")
}

/// Local quad making [`controlled_phase_gate`] satisfy the symmetry
/// condition.
pub fn lemma5_unitaries(l3: f64, l4: f64) -> SymmetrizerQuad {
    let d = |a: f64, b: f64| Unitary::diagonal_phases(&[a, b]).expect("diagonal phases are unitary");
    SymmetrizerQuad {
        u1: d(l3 - l4, -l4),
        u2: d(-(l3 - l4), 0.0),
        u3: gates::identity(),
        u4: d(0.0, l4),
    }
}

/// Partial trace over the second qubit of a two-qubit operator.
pub fn partial_trace_b(m: &na::DMatrix<C64>) -> AnalysisResult<na::DMatrix<C64>> {
    require_two_qubit(m.nrows())?;
    Ok(na::DMatrix::from_fn(2, 2, |i, j| m[(2 * i, 2 * j)] + m[(2 * i + 1, 2 * j + 1)]))
}

fn reduced_spectrum(h: &HermitianGenerator) -> AnalysisResult<Vec<f64>> {
    Ok(HermitianGenerator::new(partial_trace_b(h.matrix())?)?.spectrum())
}

/// `H1 = λ3|10⟩⟨10| + λ4|11⟩⟨11|`.
pub fn counterexample_generator(l3: f64, l4: f64) -> HermitianGenerator {
    let m = na::DMatrix::from_diagonal(&na::DVector::from_vec(vec![
        C64::new(0.0, 0.0),
        C64::new(0.0, 0.0),
        C64::new(l3, 0.0),
        C64::new(l4, 0.0),
    ]));
    HermitianGenerator::new(m).expect("real diagonal is Hermitian")
}

/// Reduced spectra of `H1` and `U_ss H1 U_ss†`. Local conjugation cannot
/// change the first, so unequal spectra rule out a local symmetrizer.
pub fn counterexample_witness(l3: f64, l4: f64) -> SpectrumWitness {
    let h = counterexample_generator(l3, l4);
    let swapped = swap_conjugate_generator(&h).expect("two-qubit generator");
    SpectrumWitness {
        spectrum_a_before: reduced_spectrum(&h).expect("two-qubit generator"),
        spectrum_a_after: reduced_spectrum(&swapped).expect("two-qubit generator"),
    }
}

/// `(H ⊗ H) CNOT^{AB} (H ⊗ H) = CNOT^{BA} = U_ss CNOT^{AB} U_ss†`.
pub fn cnot_hadamard_identity() -> bool {
    let hh = gates::hadamard().kron(&gates::hadamard());
    let wrapped = hh.compose(&gates::cnot()).and_then(|m| m.compose(&hh)).expect("4×4 gates");
    let swapped = swap_conjugate(&gates::cnot()).expect("4×4 gate");
    let reversed = gates::cnot_reversed();
    wrapped.max_abs_diff(&reversed) <= TOL_STATE && swapped.max_abs_diff(&reversed) <= TOL_STATE
}
