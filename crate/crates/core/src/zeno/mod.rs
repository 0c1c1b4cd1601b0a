//! Measurement, pointer states and the quantum Zeno effect.
//!
//! * [`apply_measurement`] and [`local_density_matrix`] build the correlated
//!   system–apparatus state of a von Neumann measurement and the reduced
//!   state seen locally once an environment has recorded the pointer.
//! * [`survival_probability`], [`zeno_survival`] and
//!   [`exponential_decay_survival`] contrast unitary decay under repeated
//!   projection with an exponential law.
//! * [`run_zeno_toy`] monitors a two-level transition with a coupled pointer
//!   and classifies the onset of transitions as quadratic, linear or
//!   suppressed.
//! * [`chiral_decoherence_run`] follows a tunnelling two-level molecule whose
//!   environment monitors the chiral (left/right) basis.

mod chiral;
mod measurement;
mod survival;
mod toy;

pub use chiral::{chiral_decoherence_run, chiral_hamiltonian, chiral_states, ChiralTrajectory};
pub use measurement::{apply_measurement, local_density_matrix, MeasurementInteraction, OverlapMatrix};
pub use survival::{
    energy_variance, exponential_decay_survival, survival_probability, zeno_survival, Operator, Survival,
};
pub use toy::{
    build_zeno_toy, log_log_slope, run_zeno_toy, run_zeno_toy_with, write_zeno_scan_csv, zeno_scan, Regime,
    RegimeThresholds, ZenoScanRow, ZenoToy, ZenoToyParams, ZenoToyRecord,
};
