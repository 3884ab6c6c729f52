//! Dense pure-state linear algebra.
//!
//! Registers are ordered lists of qubit labels. Position 0 of a register is
//! the most significant bit of the amplitude index, so the amplitude at index
//! `0b110` of the register `[a, b, c]` is the coefficient of `|1⟩_a |1⟩_b
//! |0⟩_c`.

mod operator;
mod state;

pub mod gates;
pub mod random;

pub use num_complex::Complex64 as C64;
pub use operator::{ HermitianGenerator, Unitary };
pub use state::{ MeasurementBranch, PureState, SchmidtForm };

use thiserror::Error;

/// Allowed deviation of a state norm from 1.
pub const TOL_NORM: f64 = 1e-10;
/// Allowed entrywise deviation of `U†U` from the identity (and of `H` from
/// `H†`).
pub const TOL_UNITARY: f64 = 1e-10;
/// Entrywise tolerance for state and operator comparisons.
pub const TOL_STATE: f64 = 1e-9;
/// Measurement outcomes with probability below this are dropped.
pub const TOL_PRUNE: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StateError {
    #[error("qubit label `{0}` appears more than once")]
    DuplicateQubit(String),

    #[error("unknown qubit `{0}`")]
    UnknownQubit(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("register mismatch: {0}")]
    RegisterMismatch(String),

    #[error("matrix is not unitary (max deviation {0:e})")]
    NotUnitary(f64),

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("state is not normalized (norm {0})")]
    NotNormalized(f64),

    #[error("non-finite entry")]
    NonFinite,

    #[error("state does not factor across the requested cut (second Schmidt coefficient {0:e})")]
    NotSeparable(f64),
}

pub type StateResult<T> = Result<T, StateError>;

pub(crate) fn is_finite(z: &C64) -> bool { z.re.is_finite() && z.im.is_finite() }
