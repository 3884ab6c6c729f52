use nalgebra as na;
use super::{ is_finite, StateError, StateResult, C64, TOL_UNITARY };

fn check_square_pow2(m: &na::DMatrix<C64>) -> StateResult<()> {
    if m.nrows() != m.ncols() {
        return Err(StateError::DimensionMismatch { expected: m.nrows(), found: m.ncols() });
    }
    if !m.nrows().is_power_of_two() {
        return Err(StateError::DimensionMismatch {
            expected: m.nrows().next_power_of_two(),
            found: m.nrows(),
        });
    }
    if !m.iter().all(is_finite) {
        return Err(StateError::NonFinite);
    }
    Ok(())
}

fn max_abs(m: &na::DMatrix<C64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// A dense unitary on `log2(dim)` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct Unitary(na::DMatrix<C64>);

impl Unitary {
    /// Validates that `m` is square with power-of-two dimension and satisfies
    /// `U†U = 1` within [`TOL_UNITARY`].
    pub fn new(m: na::DMatrix<C64>) -> StateResult<Self> {
        check_square_pow2(&m)?;
        let dev = Self::deviation(&m);
        if dev > TOL_UNITARY {
            return Err(StateError::NotUnitary(dev));
        }
        Ok(Self(m))
    }

    /// Row-major construction.
    pub fn from_rows(dim: usize, entries: &[C64]) -> StateResult<Self> {
        if entries.len() != dim * dim {
            return Err(StateError::DimensionMismatch { expected: dim * dim, found: entries.len() });
        }
        Self::new(na::DMatrix::from_row_slice(dim, dim, entries))
    }

    /// Row-major construction from real entries.
    pub fn from_real_rows(dim: usize, entries: &[f64]) -> StateResult<Self> {
        let c: Vec<C64> = entries.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::from_rows(dim, &c)
    }

    /// Diagonal unitary with the given phases: `diag(e^{iθ_0}, e^{iθ_1}, ...)`.
    pub fn diagonal_phases(phases: &[f64]) -> StateResult<Self> {
        let d: Vec<C64> = phases.iter().map(|&t| C64::from_polar(1.0, t)).collect();
        Self::new(na::DMatrix::from_diagonal(&na::DVector::from_vec(d)))
    }

    pub fn identity(num_qubits: usize) -> Self {
        Self(na::DMatrix::identity(1 << num_qubits, 1 << num_qubits))
    }

    /// Maximum entrywise deviation of `m†m` from the identity.
    pub fn deviation(m: &na::DMatrix<C64>) -> f64 {
        let n = m.nrows();
        max_abs(&(m.adjoint() * m - na::DMatrix::<C64>::identity(n, n)))
    }

    pub fn matrix(&self) -> &na::DMatrix<C64> { &self.0 }

    pub fn into_matrix(self) -> na::DMatrix<C64> { self.0 }

    pub fn dim(&self) -> usize { self.0.nrows() }

    pub fn num_qubits(&self) -> usize { self.dim().trailing_zeros() as usize }

    pub fn adjoint(&self) -> Self { Self(self.0.adjoint()) }

    /// The product `self · rhs`.
    pub fn compose(&self, rhs: &Self) -> StateResult<Self> {
        if self.dim() != rhs.dim() {
            return Err(StateError::DimensionMismatch { expected: self.dim(), found: rhs.dim() });
        }
        Ok(Self(&self.0 * &rhs.0))
    }

    /// The tensor product `self ⊗ rhs`; `self` acts on the leading qubits.
    pub fn kron(&self, rhs: &Self) -> Self { Self(self.0.kronecker(&rhs.0)) }

    /// `e^{iθ} · self`.
    pub fn with_phase(&self, theta: f64) -> Self {
        Self(&self.0 * C64::from_polar(1.0, theta))
    }

    /// Matrix-vector product on a raw amplitude slice.
    pub fn apply_to(&self, amps: &[C64]) -> StateResult<Vec<C64>> {
        if amps.len() != self.dim() {
            return Err(StateError::DimensionMismatch { expected: self.dim(), found: amps.len() });
        }
        let v = na::DVector::from_column_slice(amps);
        Ok((&self.0 * v).iter().copied().collect())
    }

    /// Maximum entrywise difference `|self − other|`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.dim() != other.dim() {
            return f64::INFINITY;
        }
        max_abs(&(&self.0 - &other.0))
    }

    /// Whether `other = e^{iθ} self` for some θ, entrywise within `tol`.
    pub fn equal_up_to_phase(&self, other: &Self, tol: f64) -> bool {
        if self.dim() != other.dim() {
            return false;
        }
        let overlap = (self.0.adjoint() * &other.0).trace();
        if overlap.norm() < 0.5 {
            return false;
        }
        let phase = overlap / overlap.norm();
        max_abs(&(&self.0 * phase - &other.0)) <= tol
    }
}

/// A Hermitian operator `H`, typically the generator of a gate `V = exp(iH)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianGenerator(na::DMatrix<C64>);

impl HermitianGenerator {
    /// Validates `H = H†` within [`TOL_UNITARY`]; the stored matrix is the
    /// exactly-Hermitian part `(H + H†)/2`.
    pub fn new(m: na::DMatrix<C64>) -> StateResult<Self> {
        check_square_pow2(&m)?;
        let dev = max_abs(&(&m - m.adjoint()));
        if dev > TOL_UNITARY {
            return Err(StateError::NotHermitian(dev));
        }
        let sym = (&m + m.adjoint()) * C64::new(0.5, 0.0);
        Ok(Self(sym))
    }

    /// `Σ_i λ_i |v_i⟩⟨v_i|` for the given eigenpairs. The vectors need not
    /// be normalized; each projector is normalized.
    pub fn from_spectrum(pairs: &[(f64, Vec<C64>)]) -> StateResult<Self> {
        let dim = pairs.first().map(|(_, v)| v.len()).unwrap_or(1);
        let mut m = na::DMatrix::<C64>::zeros(dim, dim);
        for (lambda, v) in pairs {
            if v.len() != dim {
                return Err(StateError::DimensionMismatch { expected: dim, found: v.len() });
            }
            let v = na::DVector::from_column_slice(v);
            let n2 = v.norm_squared();
            m += (&v * v.adjoint()) * C64::new(lambda / n2, 0.0);
        }
        Self::new(m)
    }

    pub fn zeros(num_qubits: usize) -> Self {
        Self(na::DMatrix::zeros(1 << num_qubits, 1 << num_qubits))
    }

    pub fn matrix(&self) -> &na::DMatrix<C64> { &self.0 }

    pub fn dim(&self) -> usize { self.0.nrows() }

    /// Eigenvalues in ascending order with their orthonormal eigenvectors.
    pub fn eigen(&self) -> (Vec<f64>, Vec<na::DVector<C64>>) {
        let eig = na::SymmetricEigen::new(self.0.clone());
        let mut idx: Vec<usize> = (0..self.dim()).collect();
        idx.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let values = idx.iter().map(|&i| eig.eigenvalues[i]).collect();
        let vectors = idx.iter().map(|&i| eig.eigenvectors.column(i).into_owned()).collect();
        (values, vectors)
    }

    /// Sorted eigenvalues.
    pub fn spectrum(&self) -> Vec<f64> { self.eigen().0 }

    /// `exp(iH)`.
    pub fn exp_i(&self) -> Unitary {
        let (values, vectors) = self.eigen();
        let mut m = na::DMatrix::<C64>::zeros(self.dim(), self.dim());
        for (lambda, v) in values.iter().zip(&vectors) {
            m += (v * v.adjoint()) * C64::from_polar(1.0, *lambda);
        }
        Unitary(m)
    }

    /// `U · H · U†`.
    pub fn conjugate(&self, u: &Unitary) -> StateResult<Self> {
        if u.dim() != self.dim() {
            return Err(StateError::DimensionMismatch { expected: self.dim(), found: u.dim() });
        }
        Self::new(u.matrix() * &self.0 * u.matrix().adjoint())
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.dim() != other.dim() {
            return f64::INFINITY;
        }
        max_abs(&(&self.0 - &other.0))
    }
}
