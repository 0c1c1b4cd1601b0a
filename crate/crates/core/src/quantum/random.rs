//! Haar-random states for tests, scans and the `schmidt` command.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::StandardNormal;

use super::{BipartiteState, StateVector};
use crate::C64;

fn gaussian(rng: &mut impl Rng) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Unitarily invariant random pure state of dimension `dim`.
pub fn state(rng: &mut impl Rng, dim: usize) -> StateVector {
    let v = DVector::from_fn(dim, |_, _| gaussian(rng));
    StateVector::normalized(v).expect("gaussian vector is nonzero")
}

/// Unitarily invariant random pure state of a dimA × dimB system.
pub fn bipartite_state(rng: &mut impl Rng, dim_a: usize, dim_b: usize) -> BipartiteState {
    let m = DMatrix::from_fn(dim_a, dim_b, |_, _| gaussian(rng));
    let norm = m.norm();
    BipartiteState::new(m / C64::from(norm)).expect("normalized")
}
