use nalgebra::DVector;

use crate::error::{require, Error, Result};
use crate::{tolerances, C64};

/// A normalized ket over an ordered list of basis labels.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    labels: Vec<String>,
    amplitudes: DVector<C64>,
}

impl StateVector {
    /// Builds a state, rejecting unnormalized amplitudes.
    pub fn new(labels: Vec<String>, amplitudes: DVector<C64>) -> Result<Self> {
        require(!amplitudes.is_empty(), || Error::InvalidState("a state needs at least one amplitude".into()))?;
        require(labels.len() == amplitudes.len(), || {
            Error::Shape(format!("{} labels for {} amplitudes", labels.len(), amplitudes.len()))
        })?;
        let norm_sqr = amplitudes.norm_squared();
        require((norm_sqr - 1.0).abs() <= tolerances::STATE_NORM, || {
            Error::InvalidState(format!("squared norm {norm_sqr} differs from 1"))
        })?;
        Ok(Self { labels, amplitudes })
    }

    /// Normalizes `amplitudes` and labels them "0", "1", ….
    pub fn normalized(amplitudes: DVector<C64>) -> Result<Self> {
        let norm = amplitudes.norm();
        require(norm > 0.0 && norm.is_finite(), || {
            Error::InvalidState("cannot normalize a zero or non-finite vector".into())
        })?;
        let labels = super::numeric_labels(amplitudes.len());
        Self::new(labels, amplitudes / C64::from(norm))
    }

    pub fn from_slice(amplitudes: &[C64]) -> Result<Self> {
        Self::normalized(DVector::from_column_slice(amplitudes))
    }

    /// The basis ket |index⟩ of a `dim`-dimensional space.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        require(index < dim, || Error::Shape(format!("basis index {index} outside dimension {dim}")))?;
        let mut v = DVector::zeros(dim);
        v[index] = C64::new(1.0, 0.0);
        Self::normalized(v)
    }

    pub fn with_labels(self, labels: Vec<String>) -> Result<Self> {
        Self::new(labels, self.amplitudes)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amplitudes
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        require(self.dim() == other.dim(), || {
            Error::Shape(format!("inner product of dims {} and {}", self.dim(), other.dim()))
        })?;
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }
}
