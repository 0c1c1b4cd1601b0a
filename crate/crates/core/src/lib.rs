//! Numerical models of environmental decoherence.
//!
//! The crate is organised by physical setting:
//!
//! * [`quantum`]: finite-dimensional state vectors, density
//!   matrices, Schmidt decomposition, partial traces and coherence measures.
//! * [`localization`]: scattering-induced localization rates and the
//!   catalog of environment presets.
//! * [`engine`]: position-grid density matrices evolved under the pure
//!   decoherence and Caldeira–Leggett master equations.
//! * [`zeno`]: von Neumann measurements, survival under repeated
//!   projection, the pointer-coupled two-level toy model and chiral
//!   stabilization.
//! * [`cats`]: coherent and cat states in a truncated Fock space.
//! * [`gravity`]: decoherence of superposed Newtonian field strengths.
//!
//! Laboratory-scale estimates are in CGS units with explicit constants from
//! [`units`]; the grid engine and the toy models use natural units (ħ = 1).

pub mod cats;
pub mod damping;
pub mod engine;
pub mod error;
pub mod gravity;
pub mod localization;
pub mod quantum;
pub mod tolerances;
pub mod units;
pub mod zeno;

mod csvfmt;

pub use error::{Error, Result};

/// Version of this library, recorded in run metadata.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;
