//! Independent oracles: literal gate matrices and plain index arithmetic,
//! sharing no code with the library's gate constructors or kron.

#![allow(dead_code)]

use locc_core::{
    protocols::Protocol,
    qstate::{ PureState, C64 },
    runtime::RunOutcome,
};

pub type Mat = Vec<Vec<C64>>;

pub fn c(re: f64) -> C64 { C64::new(re, 0.0) }

pub fn real(rows: &[&[f64]]) -> Mat { rows.iter().map(|r| r.iter().map(|&x| c(x)).collect()).collect() }

pub fn cnot_matrix() -> Mat {
    real(&[
        &[1.0, 0.0, 0.0, 0.0],
        &[0.0, 1.0, 0.0, 0.0],
        &[0.0, 0.0, 0.0, 1.0],
        &[0.0, 0.0, 1.0, 0.0],
    ])
}

pub fn swap_matrix() -> Mat {
    real(&[
        &[1.0, 0.0, 0.0, 0.0],
        &[0.0, 0.0, 1.0, 0.0],
        &[0.0, 1.0, 0.0, 0.0],
        &[0.0, 0.0, 0.0, 1.0],
    ])
}

pub fn toffoli_matrix() -> Mat {
    let mut m = vec![vec![c(0.0); 8]; 8];
    for i in 0..6 {
        m[i][i] = c(1.0);
    }
    m[6][7] = c(1.0);
    m[7][6] = c(1.0);
    m
}

/// Applies the 2×2 `u` to the last qubit when every other qubit is 1.
pub fn multi_controlled(u: &Mat, n: usize) -> Mat {
    let dim = 1 << n;
    let mut m = vec![vec![c(0.0); dim]; dim];
    for i in 0..dim {
        let controls_on = (i >> 1) == (dim >> 1) - 1;
        for j in 0..dim {
            m[i][j] = if controls_on && (j >> 1) == (i >> 1) {
                u[i & 1][j & 1]
            } else if i == j && !controls_on {
                c(1.0)
            } else {
                c(0.0)
            };
        }
    }
    m
}

pub fn to_mat(m: &nalgebra::DMatrix<C64>) -> Mat {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect()).collect()
}

/// Amplitudes of `q_0 ⊗ q_1 ⊗ …` with `q_0` most significant.
pub fn product(qubits: &[PureState]) -> Vec<C64> {
    let n = qubits.len();
    (0..1usize << n)
        .map(|idx| {
            (0..n).fold(c(1.0), |acc, k| acc * qubits[k].amplitudes()[(idx >> (n - 1 - k)) & 1])
        })
        .collect()
}

pub fn mat_vec(m: &Mat, v: &[C64]) -> Vec<C64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

pub fn overlap_abs(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum::<C64>().norm()
}

pub fn max_diff(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Worst `|⟨oracle|branch⟩|` over the branches of one run.
pub fn worst_branch_fidelity(p: &Protocol, run: &RunOutcome, oracle: &Mat, inputs: &[PureState]) -> f64 {
    let want = mat_vec(oracle, &product(inputs));
    let labels: Vec<&str> = p.spec.outputs.iter().map(|q| q.label.as_str()).collect();
    run.branches
        .iter()
        .map(|br| overlap_abs(&want, br.state.reorder(&labels).unwrap().amplitudes()))
        .fold(1.0, f64::min)
}

/// Worst branch fidelity of `p` against `oracle` over every input set.
pub fn verify_against(p: &Protocol, oracle: &Mat, input_sets: &[Vec<PureState>]) -> f64 {
    input_sets
        .iter()
        .map(|inputs| worst_branch_fidelity(p, &p.run(inputs).unwrap(), oracle, inputs))
        .fold(1.0, f64::min)
}
