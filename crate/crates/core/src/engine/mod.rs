//! Position-grid density matrices and their master-equation evolution.
//!
//! The state is ρ(x, x′) sampled on a uniform grid with spacing Δx; its
//! trace carries the measure, Σᵢ ρ(xᵢ, xᵢ) Δx = 1. Two equations are
//! integrated (ħ = 1):
//!
//! ```text
//! ∂ρ/∂t = −i/(2m) (∂²ρ/∂x′² − ∂²ρ/∂x²) − Λ (x − x′)² ρ
//!         + γ (x − x′) (∂ρ/∂x′ − ∂ρ/∂x)
//! ```
//!
//! The last (friction) term is present only in the Caldeira–Leggett
//! equation, where Λ defaults to m γ k_B T.

mod evolve;
mod export;
mod grid;
mod moments;
mod params;
mod ratio;

pub use evolve::{
    evolve_caldeira_leggett, evolve_pure_decoherence, Evolver, PositivityExcursion, Snapshot, SummaryRow, Trajectory,
};
pub use export::{write_snapshot_csv, write_summary_csv};
pub use grid::{GridDensityMatrix, GridSpec};
pub use moments::{moments, Moments};
pub use params::{Equation, EvolutionParams, Scheme};
pub use ratio::{decoherence_relaxation_ratio, RelaxationRatio};
