//! Finite-dimensional quantum kinematics shared by the other modules.

mod bipartite;
mod coherence;
mod density;
pub mod random;
mod state;

pub use bipartite::{
    entanglement_entropy, partial_trace, schmidt_decompose, BipartiteState, SchmidtDecomposition, Subsystem,
};
pub use coherence::{coherence_norm, dephase_blocks};
pub use density::{hermitian_eigenvalues, min_eigenvalue, DensityMatrix};
pub use state::StateVector;

/// Default basis labels "0", "1", … for a space of dimension `dim`.
pub fn numeric_labels(dim: usize) -> Vec<String> {
    (0..dim).map(|i| i.to_string()).collect()
}
