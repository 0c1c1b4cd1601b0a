use nalgebra::DMatrix;

use crate::error::{require, Error, Result};
use crate::quantum::{hermitian_eigenvalues, numeric_labels, BipartiteState, DensityMatrix, StateVector};
use crate::{tolerances, C64};

/// Interaction Σₙ |n⟩⟨n| ⊗ Âₙ that sends the ready pointer |Φ₀⟩ to |Φₙ⟩
/// when the system is in |n⟩.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementInteraction {
    system_basis: Vec<String>,
    pointer_states: Vec<StateVector>,
    initial_pointer: StateVector,
}

impl MeasurementInteraction {
    pub fn new(
        system_basis: Vec<String>,
        pointer_states: Vec<StateVector>,
        initial_pointer: StateVector,
    ) -> Result<Self> {
        require(!system_basis.is_empty(), || Error::Configuration("empty system basis".into()))?;
        require(pointer_states.len() == system_basis.len(), || {
            Error::Shape(format!("{} pointer states for {} system states", pointer_states.len(), system_basis.len()))
        })?;
        let dim = initial_pointer.dim();
        require(pointer_states.iter().all(|p| p.dim() == dim), || {
            Error::Shape("pointer states differ in dimension".into())
        })?;
        Ok(Self { system_basis, pointer_states, initial_pointer })
    }

    pub fn system_basis(&self) -> &[String] {
        &self.system_basis
    }

    pub fn pointer_states(&self) -> &[StateVector] {
        &self.pointer_states
    }

    pub fn initial_pointer(&self) -> &StateVector {
        &self.initial_pointer
    }
}

/// Σₙ cₙ |n⟩|Φₙ⟩.
pub fn apply_measurement(coeffs: &[C64], mi: &MeasurementInteraction) -> Result<BipartiteState> {
    let n = mi.system_basis.len();
    require(coeffs.len() == n, || Error::Shape(format!("{} coefficients for {n} system states", coeffs.len())))?;
    let dim_b = mi.initial_pointer.dim();
    let c = DMatrix::from_fn(n, dim_b, |i, m| coeffs[i] * mi.pointer_states[i].amplitudes()[m]);
    BipartiteState::new(c)
}

/// Gram matrix Oₙₘ = ⟨Eₙ|Eₘ⟩ of environment states.
#[derive(Debug, Clone, PartialEq)]
pub struct OverlapMatrix {
    entries: DMatrix<C64>,
}

impl OverlapMatrix {
    pub fn new(entries: DMatrix<C64>) -> Result<Self> {
        let n = entries.nrows();
        require(n > 0 && entries.ncols() == n, || Error::Shape("overlap matrix must be square".into()))?;
        for i in 0..n {
            require((entries[(i, i)] - C64::from(1.0)).norm() <= tolerances::OVERLAP_PSD, || {
                Error::InvalidEnvironment(format!("diagonal overlap {} is not 1", entries[(i, i)]))
            })?;
            for j in 0..n {
                require((entries[(i, j)] - entries[(j, i)].conj()).norm() <= tolerances::HERMITIAN, || {
                    Error::InvalidEnvironment("overlap matrix is not Hermitian".into())
                })?;
                require(entries[(i, j)].norm() <= 1.0 + tolerances::OVERLAP_PSD, || {
                    Error::InvalidEnvironment(format!("overlap modulus {} exceeds 1", entries[(i, j)].norm()))
                })?;
            }
        }
        let min = hermitian_eigenvalues(&entries)[0];
        require(min >= -tolerances::OVERLAP_PSD, || {
            Error::InvalidEnvironment(format!("overlap matrix has eigenvalue {min:e}"))
        })?;
        Ok(Self { entries })
    }

    pub fn from_states(states: &[StateVector]) -> Result<Self> {
        let n = states.len();
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = states[i].inner(&states[j])?;
            }
        }
        Self::new(m)
    }

    /// Orthogonal environment states.
    pub fn identity(n: usize) -> Self {
        Self { entries: DMatrix::identity(n, n) }
    }

    /// A single environment state shared by every branch.
    pub fn ones(n: usize) -> Self {
        Self { entries: DMatrix::from_element(n, n, C64::from(1.0)) }
    }

    pub fn entries(&self) -> &DMatrix<C64> {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }
}

/// Reduced state ρₙₘ = cₙ c̄ₘ ⟨Eₘ|Eₙ⟩ of a system entangled with an
/// environment.
pub fn local_density_matrix(coeffs: &[C64], overlaps: &OverlapMatrix) -> Result<DensityMatrix> {
    let n = overlaps.dim();
    require(coeffs.len() == n, || Error::Shape(format!("{} coefficients for a {n}x{n} overlap matrix", coeffs.len())))?;
    let o = overlaps.entries();
    let rho = DMatrix::from_fn(n, n, |i, j| coeffs[i] * coeffs[j].conj() * o[(j, i)]);
    DensityMatrix::new(numeric_labels(n), rho)
}
