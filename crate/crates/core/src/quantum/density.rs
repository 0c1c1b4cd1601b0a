use nalgebra::{DMatrix, SymmetricEigen};

use super::StateVector;
use crate::error::{require, Error, Result};
use crate::{tolerances, C64};

/// Hermitian, unit-trace, positive semidefinite matrix over labeled basis states.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    labels: Vec<String>,
    entries: DMatrix<C64>,
}

impl DensityMatrix {
    pub fn new(labels: Vec<String>, entries: DMatrix<C64>) -> Result<Self> {
        require(entries.is_square() && entries.nrows() > 0, || {
            Error::Shape(format!(
                "density matrix must be square and nonempty, got {}x{}",
                entries.nrows(),
                entries.ncols()
            ))
        })?;
        require(labels.len() == entries.nrows(), || {
            Error::Shape(format!("{} labels for dimension {}", labels.len(), entries.nrows()))
        })?;
        let herm = hermiticity_defect(&entries);
        require(herm <= tolerances::HERMITIAN, || Error::InvalidState(format!("not Hermitian (defect {herm:e})")))?;
        let tr = entries.trace();
        require((tr.re - 1.0).abs() <= tolerances::TRACE && tr.im.abs() <= tolerances::TRACE, || {
            Error::InvalidState(format!("trace {tr} differs from 1"))
        })?;
        let lo = min_eigenvalue(&entries);
        require(lo >= tolerances::POSITIVITY, || Error::InvalidState(format!("negative eigenvalue {lo:e}")))?;
        Ok(Self { labels, entries })
    }

    /// Numeric labels "0", "1", ….
    pub fn from_matrix(entries: DMatrix<C64>) -> Result<Self> {
        Self::new(super::numeric_labels(entries.nrows()), entries)
    }

    /// |ψ⟩⟨ψ|.
    pub fn from_pure(state: &StateVector) -> Self {
        let a = state.amplitudes();
        Self { labels: state.labels().to_vec(), entries: a * a.adjoint() }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn entries(&self) -> &DMatrix<C64> {
        &self.entries
    }

    pub fn into_entries(self) -> DMatrix<C64> {
        self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn purity(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.entries)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

pub(crate) fn hermiticity_defect(m: &DMatrix<C64>) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0_f64;
    for j in 0..n {
        for i in 0..=j {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Eigenvalues of the Hermitian part of `m`, ascending.
pub fn hermitian_eigenvalues(m: &DMatrix<C64>) -> Vec<f64> {
    let herm = (m + m.adjoint()) * C64::from(0.5);
    let mut ev: Vec<f64> = SymmetricEigen::new(herm).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

pub fn min_eigenvalue(m: &DMatrix<C64>) -> f64 {
    hermitian_eigenvalues(m).first().copied().unwrap_or(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_hermitian() {
        let m = DMatrix::from_row_slice(
            2,
            2,
            &[C64::new(0.5, 0.0), C64::new(0.1, 0.0), C64::new(0.2, 0.0), C64::new(0.5, 0.0)],
        );
        assert!(matches!(DensityMatrix::from_matrix(m), Err(Error::InvalidState(_))));
    }

    #[test]
    fn rejects_negative_eigenvalue() {
        let m = DMatrix::from_row_slice(
            2,
            2,
            &[C64::new(0.5, 0.0), C64::new(0.9, 0.0), C64::new(0.9, 0.0), C64::new(0.5, 0.0)],
        );
        assert!(matches!(DensityMatrix::from_matrix(m), Err(Error::InvalidState(_))));
    }

    #[test]
    fn pure_state_has_unit_purity() {
        let s = StateVector::from_slice(&[C64::new(1.0, 0.0), C64::new(0.0, 1.0)]).unwrap();
        let rho = DensityMatrix::from_pure(&s);
        assert!((rho.purity() - 1.0).abs() < 1e-14);
        let ev = rho.eigenvalues();
        assert!(ev[0].abs() < 1e-14 && (ev[1] - 1.0).abs() < 1e-14);
    }
}
