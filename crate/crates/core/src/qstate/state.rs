use std::collections::HashSet;
use nalgebra as na;
use serde::{ Deserialize, Serialize };
use super::{
    is_finite, StateError, StateResult, Unitary, C64, TOL_NORM, TOL_PRUNE, TOL_STATE,
};

/// A normalized amplitude vector over an ordered register of named qubits.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PureState {
    register: Vec<String>,
    amplitudes: Vec<C64>,
}

/// One outcome of a computational-basis measurement.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementBranch {
    pub outcome: u8,
    pub probability: f64,
    /// Renormalized post-measurement state with the measured qubit removed.
    pub post: PureState,
}

/// Schmidt form `Σ_k c_k |a_k⟩|b_k⟩` of a two-qubit state.
#[derive(Clone, Debug, PartialEq)]
pub struct SchmidtForm {
    pub label_a: String,
    pub label_b: String,
    /// Nonincreasing, nonnegative.
    pub coefficients: [f64; 2],
    pub basis_a: [[C64; 2]; 2],
    pub basis_b: [[C64; 2]; 2],
}

impl SchmidtForm {
    /// Rebuilds the state on the register `[label_a, label_b]`.
    pub fn reconstruct(&self) -> PureState {
        let mut amps = vec![C64::new(0.0, 0.0); 4];
        for k in 0..2 {
            for i in 0..2 {
                for j in 0..2 {
                    amps[2 * i + j] += self.basis_a[k][i] * self.basis_b[k][j] * self.coefficients[k];
                }
            }
        }
        PureState {
            register: vec![self.label_a.clone(), self.label_b.clone()],
            amplitudes: amps,
        }
    }
}

fn check_unique<S: AsRef<str>>(labels: &[S]) -> StateResult<()> {
    let mut seen = HashSet::new();
    for l in labels {
        if !seen.insert(l.as_ref()) {
            return Err(StateError::DuplicateQubit(l.as_ref().to_string()));
        }
    }
    Ok(())
}

fn norm_of(amps: &[C64]) -> f64 { amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt() }

impl PureState {
    /// Validates label uniqueness, length `2^n`, finiteness and unit norm.
    pub fn new<S: Into<String>>(register: Vec<S>, amplitudes: Vec<C64>) -> StateResult<Self> {
        let register: Vec<String> = register.into_iter().map(Into::into).collect();
        check_unique(&register)?;
        let expected = 1usize << register.len();
        if amplitudes.len() != expected {
            return Err(StateError::DimensionMismatch { expected, found: amplitudes.len() });
        }
        if !amplitudes.iter().all(is_finite) {
            return Err(StateError::NonFinite);
        }
        let norm = norm_of(&amplitudes);
        if (norm - 1.0).abs() > TOL_NORM {
            return Err(StateError::NotNormalized(norm));
        }
        Ok(Self { register, amplitudes })
    }

    /// Like [`new`][Self::new] but rescales the amplitudes to unit norm.
    pub fn normalized<S: Into<String>>(register: Vec<S>, mut amplitudes: Vec<C64>) -> StateResult<Self> {
        if !amplitudes.iter().all(is_finite) {
            return Err(StateError::NonFinite);
        }
        let norm = norm_of(&amplitudes);
        if norm < TOL_PRUNE {
            return Err(StateError::NotNormalized(norm));
        }
        amplitudes.iter_mut().for_each(|a| *a /= norm);
        Self::new(register, amplitudes)
    }

    /// `a|0⟩ + b|1⟩` on a single qubit.
    pub fn qubit(label: impl Into<String>, a: C64, b: C64) -> StateResult<Self> {
        Self::new(vec![label.into()], vec![a, b])
    }

    /// Computational basis state `|bits⟩`.
    pub fn basis<S: Into<String>>(register: Vec<S>, bits: &[u8]) -> StateResult<Self> {
        let n = bits.len();
        let index = bits.iter().fold(0usize, |acc, &b| (acc << 1) | usize::from(b & 1));
        let mut amps = vec![C64::new(0.0, 0.0); 1 << n];
        amps[index] = C64::new(1.0, 0.0);
        Self::new(register, amps)
    }

    /// `|0⟩` on a single qubit.
    pub fn zero(label: impl Into<String>) -> Self {
        Self::basis(vec![label.into()], &[0]).expect("valid basis state")
    }

    /// `(|00⟩ + |11⟩)/√2`.
    pub fn phi_plus(a: impl Into<String>, b: impl Into<String>) -> StateResult<Self> {
        let s = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let z = C64::new(0.0, 0.0);
        Self::new(vec![a.into(), b.into()], vec![s, z, z, s])
    }

    pub fn register(&self) -> &[String] { &self.register }

    pub fn amplitudes(&self) -> &[C64] { &self.amplitudes }

    pub fn num_qubits(&self) -> usize { self.register.len() }

    pub fn norm(&self) -> f64 { norm_of(&self.amplitudes) }

    pub fn contains(&self, label: &str) -> bool { self.register.iter().any(|l| l == label) }

    pub fn position(&self, label: &str) -> StateResult<usize> {
        self.register
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| StateError::UnknownQubit(label.to_string()))
    }

    fn shift(&self, pos: usize) -> usize { self.num_qubits() - 1 - pos }

    /// Kronecker product; `self`'s labels come first.
    pub fn tensor(&self, other: &Self) -> StateResult<Self> {
        if let Some(dup) = other.register.iter().find(|l| self.contains(l)) {
            return Err(StateError::DuplicateQubit(dup.clone()));
        }
        let mut register = self.register.clone();
        register.extend(other.register.iter().cloned());
        let amplitudes = self
            .amplitudes
            .iter()
            .flat_map(|a| other.amplitudes.iter().map(move |b| a * b))
            .collect();
        Ok(Self { register, amplitudes })
    }

    /// Applies `u` to `targets` (the first target is the most significant
    /// qubit of `u`'s index), identity elsewhere.
    pub fn apply_unitary<S: AsRef<str>>(&self, u: &Unitary, targets: &[S]) -> StateResult<Self> {
        let mut out = self.clone();
        out.apply_in_place(u, targets)?;
        Ok(out)
    }

    pub fn apply_in_place<S: AsRef<str>>(&mut self, u: &Unitary, targets: &[S]) -> StateResult<()> {
        check_unique(targets)?;
        let k = targets.len();
        if u.dim() != 1 << k {
            return Err(StateError::DimensionMismatch { expected: 1 << k, found: u.dim() });
        }
        let shifts: Vec<usize> = targets
            .iter()
            .map(|t| self.position(t.as_ref()).map(|p| self.shift(p)))
            .collect::<StateResult<_>>()?;
        let mask = shifts.iter().fold(0usize, |m, s| m | (1 << s));
        let offsets: Vec<usize> = (0..1usize << k)
            .map(|sub| {
                shifts
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| (sub >> (k - 1 - j)) & 1 == 1)
                    .fold(0, |acc, (_, s)| acc | (1 << s))
            })
            .collect();
        let m = u.matrix();
        let mut gathered = vec![C64::new(0.0, 0.0); 1 << k];
        for base in (0..self.amplitudes.len()).filter(|i| i & mask == 0) {
            for (g, off) in gathered.iter_mut().zip(&offsets) {
                *g = self.amplitudes[base | off];
            }
            for (r, off) in offsets.iter().enumerate() {
                self.amplitudes[base | off] =
                    gathered.iter().enumerate().map(|(c, g)| m[(r, c)] * g).sum();
            }
        }
        Ok(())
    }

    /// Computational-basis measurement of `label`, returning every outcome
    /// with probability at least [`TOL_PRUNE`] (outcome 0 first). The
    /// measured qubit is removed from each post-measurement register.
    pub fn measure_branches(&self, label: &str) -> StateResult<Vec<MeasurementBranch>> {
        let pos = self.position(label)?;
        let s = self.shift(pos);
        let low = (1usize << s) - 1;
        let mut register = self.register.clone();
        register.remove(pos);
        let mut out = Vec::with_capacity(2);
        for outcome in 0..2u8 {
            let mut amps = vec![C64::new(0.0, 0.0); self.amplitudes.len() / 2];
            for (idx, a) in self.amplitudes.iter().enumerate() {
                if (idx >> s) & 1 == usize::from(outcome) {
                    amps[((idx >> (s + 1)) << s) | (idx & low)] = *a;
                }
            }
            let probability: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
            if probability < TOL_PRUNE {
                continue;
            }
            let scale = probability.sqrt();
            amps.iter_mut().for_each(|a| *a /= scale);
            out.push(MeasurementBranch {
                outcome,
                probability,
                post: Self { register: register.clone(), amplitudes: amps },
            });
        }
        Ok(out)
    }

    /// The same state with its register permuted to `labels`.
    pub fn reorder<S: AsRef<str>>(&self, labels: &[S]) -> StateResult<Self> {
        check_unique(labels)?;
        if labels.len() != self.num_qubits() {
            return Err(StateError::RegisterMismatch(format!(
                "expected {} labels, found {}",
                self.num_qubits(),
                labels.len()
            )));
        }
        let n = self.num_qubits();
        // new position j holds old position perm[j]
        let perm: Vec<usize> = labels
            .iter()
            .map(|l| {
                self.position(l.as_ref())
                    .map_err(|_| StateError::RegisterMismatch(format!("`{}` not in register", l.as_ref())))
            })
            .collect::<StateResult<_>>()?;
        let mut amps = vec![C64::new(0.0, 0.0); self.amplitudes.len()];
        for (new_idx, slot) in amps.iter_mut().enumerate() {
            let old_idx = perm.iter().enumerate().fold(0usize, |acc, (j, &p)| {
                let bit = (new_idx >> (n - 1 - j)) & 1;
                acc | (bit << (n - 1 - p))
            });
            *slot = self.amplitudes[old_idx];
        }
        Ok(Self {
            register: labels.iter().map(|l| l.as_ref().to_string()).collect(),
            amplitudes: amps,
        })
    }

    /// Renames a qubit in place.
    pub fn relabel(&mut self, from: &str, to: &str) -> StateResult<()> {
        let pos = self.position(from)?;
        if from != to && self.contains(to) {
            return Err(StateError::DuplicateQubit(to.to_string()));
        }
        self.register[pos] = to.to_string();
        Ok(())
    }

    /// `⟨self|other⟩` after aligning `other` to this register.
    pub fn inner(&self, other: &Self) -> StateResult<C64> {
        let other = other.reorder(&self.register)?;
        Ok(self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum())
    }

    /// `|⟨self|other⟩|`, insensitive to the global phase of either state.
    pub fn fidelity_up_to_phase(&self, other: &Self) -> StateResult<f64> {
        Ok(self.inner(other)?.norm().min(1.0))
    }

    /// Largest entrywise amplitude difference after aligning registers.
    pub fn max_abs_diff(&self, other: &Self) -> StateResult<f64> {
        let other = other.reorder(&self.register)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Amplitude matrix with rows indexed by `side_a` and columns by the rest
    /// of the register (in register order).
    fn bipartite_matrix<S: AsRef<str>>(&self, side_a: &[S]) -> StateResult<(na::DMatrix<C64>, Vec<String>)> {
        check_unique(side_a)?;
        for l in side_a {
            self.position(l.as_ref())?;
        }
        let rest: Vec<String> = self
            .register
            .iter()
            .filter(|l| !side_a.iter().any(|a| a.as_ref() == l.as_str()))
            .cloned()
            .collect();
        if side_a.is_empty() || rest.is_empty() {
            return Err(StateError::RegisterMismatch("both sides of a cut must be nonempty".into()));
        }
        let mut order: Vec<String> = side_a.iter().map(|l| l.as_ref().to_string()).collect();
        order.extend(rest.iter().cloned());
        let aligned = self.reorder(&order)?;
        let rows = 1 << side_a.len();
        let cols = 1 << rest.len();
        Ok((na::DMatrix::from_row_slice(rows, cols, &aligned.amplitudes), rest))
    }

    /// Schmidt coefficients across the cut `side_a | rest`, nonincreasing.
    pub fn schmidt_coefficients<S: AsRef<str>>(&self, side_a: &[S]) -> StateResult<Vec<f64>> {
        let (m, _) = self.bipartite_matrix(side_a)?;
        let mut s: Vec<f64> = m.singular_values().iter().copied().collect();
        s.sort_by(|a, b| b.total_cmp(a));
        Ok(s)
    }

    /// Von Neumann entropy (in ebits) of the reduced state of `side_a`.
    pub fn entanglement_entropy<S: AsRef<str>>(&self, side_a: &[S]) -> StateResult<f64> {
        Ok(self
            .schmidt_coefficients(side_a)?
            .iter()
            .map(|c| c * c)
            .filter(|&p| p > TOL_PRUNE)
            .map(|p| -p * p.log2())
            .sum())
    }

    /// Factors the state as `|a⟩_{side_a} ⊗ |b⟩_{rest}`; fails unless the
    /// second Schmidt coefficient is below [`TOL_STATE`].
    pub fn split<S: AsRef<str>>(&self, side_a: &[S]) -> StateResult<(Self, Self)> {
        let (m, rest) = self.bipartite_matrix(side_a)?;
        let (s, u, vt) = sorted_svd(m);
        if s.len() > 1 && s[1] > TOL_STATE {
            return Err(StateError::NotSeparable(s[1]));
        }
        let a: Vec<C64> = u.column(0).iter().copied().collect();
        let b: Vec<C64> = vt.row(0).iter().map(|z| z * s[0]).collect();
        let labels_a: Vec<String> = side_a.iter().map(|l| l.as_ref().to_string()).collect();
        Ok((Self::normalized(labels_a, a)?, Self::normalized(rest, b)?))
    }

    /// Schmidt decomposition of a two-qubit state across `label_a | other`.
    pub fn schmidt_decompose(&self, label_a: &str) -> StateResult<SchmidtForm> {
        if self.num_qubits() != 2 {
            return Err(StateError::RegisterMismatch(format!(
                "Schmidt decomposition needs a two-qubit register, found {}",
                self.num_qubits()
            )));
        }
        let (m, rest) = self.bipartite_matrix(&[label_a])?;
        let (s, u, vt) = sorted_svd(m);
        let col = |k: usize| [u[(0, k)], u[(1, k)]];
        let row = |k: usize| [vt[(k, 0)], vt[(k, 1)]];
        Ok(SchmidtForm {
            label_a: label_a.to_string(),
            label_b: rest[0].clone(),
            coefficients: [s[0], s[1]],
            basis_a: [col(0), col(1)],
            basis_b: [row(0), row(1)],
        })
    }
}

/// SVD `m = U diag(s) V^T` with singular values sorted nonincreasing and the
/// factors permuted to match.
fn sorted_svd(m: na::DMatrix<C64>) -> (Vec<f64>, na::DMatrix<C64>, na::DMatrix<C64>) {
    let svd = m.svd(true, true);
    let u = svd.u.expect("requested U");
    let vt = svd.v_t.expect("requested V^T");
    let mut idx: Vec<usize> = (0..svd.singular_values.len()).collect();
    idx.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let s = idx.iter().map(|&i| svd.singular_values[i]).collect();
    let u = na::DMatrix::from_columns(&idx.iter().map(|&i| u.column(i)).collect::<Vec<_>>());
    let vt = na::DMatrix::from_rows(&idx.iter().map(|&i| vt.row(i)).collect::<Vec<_>>());
    (s, u, vt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::gates;

    fn c(re: f64) -> C64 { C64::new(re, 0.0) }

    #[test]
    fn tensor_of_basis_kets() {
        let s = PureState::zero("a").tensor(&PureState::basis(vec!["b"], &[1]).unwrap()).unwrap();
        assert_eq!(s.register(), ["a", "b"]);
        assert_eq!(s.amplitudes()[1], c(1.0));
    }

    #[test]
    fn tensor_label_collision() {
        let err = PureState::zero("a").tensor(&PureState::zero("a")).unwrap_err();
        assert_eq!(err, StateError::DuplicateQubit("a".into()));
    }

    #[test]
    fn new_rejects_bad_inputs() {
        assert!(matches!(
            PureState::new(vec!["a"], vec![c(1.0), c(1.0)]),
            Err(StateError::NotNormalized(_))
        ));
        assert!(matches!(
            PureState::new(vec!["a", "a"], vec![c(1.0), c(0.0), c(0.0), c(0.0)]),
            Err(StateError::DuplicateQubit(_))
        ));
        assert!(matches!(
            PureState::new(vec!["a"], vec![c(1.0)]),
            Err(StateError::DimensionMismatch { .. })
        ));
        assert_eq!(
            PureState::new(vec!["a"], vec![c(f64::NAN), c(0.0)]),
            Err(StateError::NonFinite)
        );
    }

    #[test]
    fn cnot_on_10() {
        let s = PureState::basis(vec!["c", "t"], &[1, 0]).unwrap();
        let out = s.apply_unitary(&gates::cnot(), &["c", "t"]).unwrap();
        assert_eq!(out, PureState::basis(vec!["c", "t"], &[1, 1]).unwrap());
    }

    #[test]
    fn target_order_matters() {
        let s = PureState::basis(vec!["a", "b"], &[0, 1]).unwrap();
        let out = s.apply_unitary(&gates::cnot(), &["b", "a"]).unwrap();
        assert_eq!(out, PureState::basis(vec!["a", "b"], &[1, 1]).unwrap());
    }

    #[test]
    fn apply_errors() {
        let s = PureState::basis(vec!["a", "b"], &[0, 1]).unwrap();
        assert_eq!(
            s.apply_unitary(&gates::not(), &["z"]),
            Err(StateError::UnknownQubit("z".into()))
        );
        assert!(matches!(
            s.apply_unitary(&gates::cnot(), &["a"]),
            Err(StateError::DimensionMismatch { .. })
        ));
        assert!(matches!(
            s.apply_unitary(&gates::cnot(), &["a", "a"]),
            Err(StateError::DuplicateQubit(_))
        ));
    }

    #[test]
    fn measure_bell_pair() {
        let bell = PureState::phi_plus("q0", "q1").unwrap();
        let br = bell.measure_branches("q0").unwrap();
        assert_eq!(br.len(), 2);
        for (b, want) in br.iter().zip([0u8, 1]) {
            assert_eq!(b.outcome, want);
            assert!((b.probability - 0.5).abs() < 1e-15);
            assert_eq!(b.post, PureState::basis(vec!["q1"], &[want]).unwrap());
        }
    }

    #[test]
    fn deterministic_measurement_single_branch() {
        let psi = PureState::qubit("p", c(0.6), c(0.8)).unwrap();
        let s = psi.tensor(&PureState::zero("q")).unwrap();
        let br = s.measure_branches("q").unwrap();
        assert_eq!(br.len(), 1);
        assert_eq!(br[0].outcome, 0);
        assert!((br[0].probability - 1.0).abs() < 1e-15);
        assert_eq!(br[0].post, psi);
    }

    #[test]
    fn measure_unknown_label() {
        assert_eq!(
            PureState::zero("a").measure_branches("b"),
            Err(StateError::UnknownQubit("b".into()))
        );
    }

    #[test]
    fn measure_last_qubit_leaves_scalar() {
        let br = PureState::zero("a").measure_branches("a").unwrap();
        assert_eq!(br[0].post.num_qubits(), 0);
        assert_eq!(br[0].post.amplitudes(), &[c(1.0)]);
    }

    #[test]
    fn fidelity_values() {
        let zero = PureState::zero("q");
        let one = PureState::basis(vec!["q"], &[1]).unwrap();
        let plus = zero.apply_unitary(&gates::hadamard(), &["q"]).unwrap();
        assert_eq!(zero.fidelity_up_to_phase(&one).unwrap(), 0.0);
        assert!((zero.fidelity_up_to_phase(&plus).unwrap() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        let phased = PureState::qubit("q", C64::from_polar(0.6, 1.1), C64::from_polar(0.8, 1.1)).unwrap();
        let psi = PureState::qubit("q", c(0.6), c(0.8)).unwrap();
        assert!((psi.fidelity_up_to_phase(&phased).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn fidelity_register_mismatch() {
        let err = PureState::zero("a").fidelity_up_to_phase(&PureState::zero("b")).unwrap_err();
        assert!(matches!(err, StateError::RegisterMismatch(_)));
    }

    #[test]
    fn reorder_round_trip() {
        let s = PureState::basis(vec!["a", "b", "c"], &[1, 1, 0]).unwrap();
        let r = s.reorder(&["c", "a", "b"]).unwrap();
        assert_eq!(r, PureState::basis(vec!["c", "a", "b"], &[0, 1, 1]).unwrap());
        assert_eq!(r.reorder(&["a", "b", "c"]).unwrap(), s);
    }

    #[test]
    fn schmidt_of_bell_and_product() {
        let bell = PureState::phi_plus("a", "b").unwrap();
        let f = bell.schmidt_decompose("a").unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((f.coefficients[0] - h).abs() < 1e-12 && (f.coefficients[1] - h).abs() < 1e-12);

        let prod = PureState::basis(vec!["a", "b"], &[0, 1]).unwrap();
        let f = prod.schmidt_decompose("a").unwrap();
        assert!((f.coefficients[0] - 1.0).abs() < 1e-12 && f.coefficients[1].abs() < 1e-12);
        assert!(f.reconstruct().max_abs_diff(&prod).unwrap() < 1e-12);
    }

    #[test]
    fn schmidt_bad_partition() {
        let s = PureState::basis(vec!["a", "b", "c"], &[0, 0, 0]).unwrap();
        assert!(matches!(s.schmidt_decompose("a"), Err(StateError::RegisterMismatch(_))));
        let s = PureState::phi_plus("a", "b").unwrap();
        assert!(matches!(s.schmidt_decompose("x"), Err(StateError::UnknownQubit(_))));
    }

    #[test]
    fn split_product_and_entangled() {
        let psi = PureState::qubit("p", c(0.6), C64::new(0.0, 0.8)).unwrap();
        let bell = PureState::phi_plus("a", "b").unwrap();
        let s = psi.tensor(&bell).unwrap();
        let (x, y) = s.split(&["p"]).unwrap();
        assert!((x.fidelity_up_to_phase(&psi).unwrap() - 1.0).abs() < 1e-12);
        assert!((y.fidelity_up_to_phase(&bell).unwrap() - 1.0).abs() < 1e-12);
        assert!(matches!(s.split(&["a"]), Err(StateError::NotSeparable(_))));
        assert!((s.entanglement_entropy(&["a"]).unwrap() - 1.0).abs() < 1e-12);
    }
}
