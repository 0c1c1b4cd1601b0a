//! Numerical tolerances shared by validation code and tests.
//!
//! Every invariant check in the crate reads its threshold from here.

/// Normalization of state vectors and bipartite coefficient matrices.
pub const STATE_NORM: f64 = 1e-12;

/// Hermiticity of finite density matrices and operators.
pub const HERMITIAN: f64 = 1e-12;

/// Unit trace of finite density matrices.
pub const TRACE: f64 = 1e-10;

/// Smallest admissible eigenvalue of a finite density matrix.
pub const POSITIVITY: f64 = -1e-8;

/// Schmidt weights summing to one; orthonormality of Schmidt vectors.
pub const SCHMIDT: f64 = 1e-10;

/// Schmidt weights below this are dropped as numerically zero.
pub const SCHMIDT_WEIGHT_CUTOFF: f64 = 1e-14;

/// Two Schmidt weights closer than this are treated as degenerate.
pub const SCHMIDT_DEGENERACY: f64 = 1e-12;

/// Amplitudes smaller than this count as zero when fixing phases.
pub const PHASE_ZERO: f64 = 1e-12;

/// Hermiticity of grid density matrices.
pub const GRID_HERMITIAN: f64 = 1e-10;

/// Unit trace of grid density matrices (trace includes the Δx measure).
pub const GRID_TRACE: f64 = 1e-8;

/// Largest allowed edge density relative to the peak of the diagonal.
pub const GRID_BOUNDARY: f64 = 1e-8;

/// Time step bound coefficient: dt ≤ `GRID_STABILITY` · m · Δx².
pub const GRID_STABILITY: f64 = 0.25;

/// Largest |z| = dt · (stiffest real or imaginary rate) accepted by RK4.
pub const RK4_STABILITY: f64 = 2.5;

/// Smallest eigenvalue tolerated during pure-decoherence runs.
pub const GRID_POSITIVITY: f64 = -1e-6;

/// PSD check for environment overlap (Gram) matrices.
pub const OVERLAP_PSD: f64 = 1e-10;

/// Orthonormality of the input basis for chiral combinations.
pub const ORTHONORMAL: f64 = 1e-12;

/// Normalization of truncated Fock states.
pub const FOCK_NORM: f64 = 1e-10;

/// Largest admissible population in the top Fock level.
pub const FOCK_TAIL: f64 = 1e-8;

/// Largest admissible trace drift for the 2×2 chiral master equation.
pub const CHIRAL_TRACE: f64 = 1e-10;

/// Every tolerance above by name, for run metadata.
pub const ALL: [(&str, f64); 19] = [
    ("STATE_NORM", STATE_NORM),
    ("HERMITIAN", HERMITIAN),
    ("TRACE", TRACE),
    ("POSITIVITY", POSITIVITY),
    ("SCHMIDT", SCHMIDT),
    ("SCHMIDT_WEIGHT_CUTOFF", SCHMIDT_WEIGHT_CUTOFF),
    ("SCHMIDT_DEGENERACY", SCHMIDT_DEGENERACY),
    ("PHASE_ZERO", PHASE_ZERO),
    ("GRID_HERMITIAN", GRID_HERMITIAN),
    ("GRID_TRACE", GRID_TRACE),
    ("GRID_BOUNDARY", GRID_BOUNDARY),
    ("GRID_STABILITY", GRID_STABILITY),
    ("RK4_STABILITY", RK4_STABILITY),
    ("GRID_POSITIVITY", GRID_POSITIVITY),
    ("OVERLAP_PSD", OVERLAP_PSD),
    ("ORTHONORMAL", ORTHONORMAL),
    ("FOCK_NORM", FOCK_NORM),
    ("FOCK_TAIL", FOCK_TAIL),
    ("CHIRAL_TRACE", CHIRAL_TRACE),
];
