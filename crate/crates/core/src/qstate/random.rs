//! Seeded sampling of states and unitaries.

use nalgebra as na;
use rand::{ Rng, SeedableRng };
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use super::{ PureState, Unitary, C64 };

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng { ChaCha8Rng::seed_from_u64(seed) }

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Normalized complex Gaussian vector of length `dim`.
pub fn amplitudes<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vec<C64> {
    let mut v: Vec<C64> = (0..dim).map(|_| gaussian(rng)).collect();
    let n = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    v.iter_mut().for_each(|a| *a /= n);
    v
}

/// Random state on the given register.
pub fn state<R: Rng + ?Sized, S: Into<String>>(rng: &mut R, register: Vec<S>) -> PureState {
    let dim = 1 << register.len();
    PureState::normalized(register, amplitudes(rng, dim)).expect("Gaussian vector is nonzero")
}

/// Random single-qubit state `α|0⟩ + β|1⟩`.
pub fn qubit<R: Rng + ?Sized>(rng: &mut R, label: impl Into<String>) -> PureState {
    state(rng, vec![label.into()])
}

/// Unitary from the QR orthonormalization of a complex Gaussian matrix, with
/// column phases fixed by the diagonal of `R`.
pub fn unitary<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Unitary {
    let m = na::DMatrix::<C64>::from_fn(dim, dim, |_, _| gaussian(rng));
    let qr = m.qr();
    let r = qr.r();
    let mut q = qr.q();
    for (k, mut col) in q.column_iter_mut().enumerate() {
        let d = r[(k, k)];
        if d.norm() > 0.0 {
            col *= d / d.norm();
        }
    }
    Unitary::new(q).expect("QR factor is unitary")
}

/// Random real number in `[lo, hi)`.
pub fn uniform<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    rng.random_range(lo..hi)
}
