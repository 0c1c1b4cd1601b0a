use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{require, Error, Result};
use crate::quantum::StateVector;
use crate::{tolerances, C64};

/// Hermitian operator with its spectral decomposition cached.
#[derive(Debug, Clone)]
pub struct Operator {
    matrix: DMatrix<C64>,
    eigenvalues: DVector<f64>,
    eigenvectors: DMatrix<C64>,
}

impl Operator {
    pub fn new(matrix: DMatrix<C64>) -> Result<Self> {
        let n = matrix.nrows();
        require(n > 0 && matrix.ncols() == n, || {
            Error::InvalidOperator(format!("{}x{} matrix is not square", n, matrix.ncols()))
        })?;
        let scale = matrix.iter().map(|z| z.norm()).fold(1.0, f64::max);
        let defect = (&matrix - matrix.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        require(defect <= tolerances::HERMITIAN * scale, || {
            Error::InvalidOperator(format!("Hermiticity defect {defect:e}"))
        })?;
        let sym = (&matrix + matrix.adjoint()) * C64::from(0.5);
        let eig = SymmetricEigen::new(sym);
        Ok(Self { matrix, eigenvalues: eig.eigenvalues, eigenvectors: eig.eigenvectors })
    }

    /// V σₓ + E |2⟩⟨2| on {|1⟩, |2⟩}.
    pub fn two_level(v: f64, e: f64) -> Self {
        let m = DMatrix::from_row_slice(2, 2, &[C64::from(0.0), C64::from(v), C64::from(v), C64::from(e)]);
        Self::new(m).expect("real symmetric matrix")
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// Eigenvalues in the order produced by the eigensolver.
    pub fn eigenvalues(&self) -> &DVector<f64> {
        &self.eigenvalues
    }

    /// exp(−iHt).
    pub fn propagator(&self, t: f64) -> DMatrix<C64> {
        let phases = DMatrix::from_diagonal(&self.eigenvalues.map(|e| C64::from_polar(1.0, -e * t)));
        &self.eigenvectors * phases * self.eigenvectors.adjoint()
    }
}

/// Exact value and its short-time approximation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Survival {
    pub exact: f64,
    pub approximation: f64,
}

fn check_dims(h: &Operator, u: &StateVector) -> Result<()> {
    require(h.dim() == u.dim(), || {
        Error::Shape(format!("{}-dimensional operator acting on a {}-dimensional state", h.dim(), u.dim()))
    })
}

/// (ΔH)² = ⟨u|H²|u⟩ − ⟨u|H|u⟩².
pub fn energy_variance(h: &Operator, u: &StateVector) -> Result<f64> {
    check_dims(h, u)?;
    let hu = h.matrix() * u.amplitudes();
    let mean = u.amplitudes().dotc(&hu).re;
    Ok((hu.norm_squared() - mean * mean).max(0.0))
}

/// |⟨u|e^{−iHt}|u⟩|², with 1 − (ΔH)² t² as the approximation.
pub fn survival_probability(h: &Operator, u: &StateVector, t: f64) -> Result<Survival> {
    let var = energy_variance(h, u)?;
    let amp = u.amplitudes().dotc(&(h.propagator(t) * u.amplitudes()));
    Ok(Survival { exact: amp.norm_sqr(), approximation: 1.0 - var * t * t })
}

/// Survival when the total time t is interrupted by N projective
/// measurements onto u. The approximation is [1 − (ΔH)²(t/N)²]ᴺ.
///
/// Each round evolves for t/N, projects onto span{u} and renormalizes the
/// surviving branch; the branch probabilities are accumulated as a sum of
/// logarithms.
pub fn zeno_survival(h: &Operator, u: &StateVector, t: f64, n: u64) -> Result<Survival> {
    require(n >= 1, || Error::Domain("at least one measurement is needed".into()))?;
    let var = energy_variance(h, u)?;
    let step = h.propagator(t / n as f64);
    let target = u.amplitudes();
    let mut psi = target.clone();
    let mut log_p = 0.0;
    for _ in 0..n {
        let amp = target.dotc(&(&step * &psi));
        let p = amp.norm_sqr();
        if p == 0.0 {
            log_p = f64::NEG_INFINITY;
            break;
        }
        log_p += p.ln();
        psi = target * (amp / amp.norm());
    }
    let tau = t / n as f64;
    Ok(Survival { exact: log_p.exp(), approximation: (1.0 - var * tau * tau).powf(n as f64) })
}

/// (e^{−Γt/N})ᴺ, which is e^{−Γt} for every N.
pub fn exponential_decay_survival(rate: f64, t: f64, n: u64) -> Result<f64> {
    require(rate >= 0.0, || Error::Domain(format!("negative decay rate {rate}")))?;
    require(n >= 1, || Error::Domain("at least one measurement is needed".into()))?;
    let per_interval = -rate * t / n as f64;
    Ok((n as f64 * per_interval).exp())
}
