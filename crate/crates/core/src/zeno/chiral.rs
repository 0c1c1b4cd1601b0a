//! A tunnelling molecule whose environment monitors chirality.
//!
//! Everything here is written in the chiral basis {|L⟩, |R⟩}. The
//! environment acts through σ_L = |L⟩⟨L| − |R⟩⟨R|:
//!
//! ```text
//! dρ/dt = −i[H, ρ] − (Γχ/4)[σ_L, [σ_L, ρ]]
//! ```
//!
//! so that ρ_LR decays at rate Γχ while the populations are untouched.

use nalgebra::{DMatrix, Matrix2};

use super::Operator;
use crate::error::{require, Error, Result};
use crate::quantum::{DensityMatrix, StateVector};
use crate::{tolerances, C64};

/// |L⟩ = (|1⟩ + |2⟩)/√2 and |R⟩ = (|1⟩ − |2⟩)/√2.
pub fn chiral_states(one: &StateVector, two: &StateVector) -> Result<(StateVector, StateVector)> {
    require(one.dim() == two.dim(), || Error::InvalidBasis("states differ in dimension".into()))?;
    let overlap = one.inner(two)?.norm();
    require(overlap <= tolerances::ORTHONORMAL, || Error::InvalidBasis(format!("states overlap by {overlap:e}")))?;
    let h = C64::from(std::f64::consts::FRAC_1_SQRT_2);
    let l = (one.amplitudes() + two.amplitudes()) * h;
    let r = (one.amplitudes() - two.amplitudes()) * h;
    Ok((StateVector::new(one.labels().to_vec(), l)?, StateVector::new(one.labels().to_vec(), r)?))
}

/// Tunnelling V between the two chiral states and an energy offset E of |R⟩.
pub fn chiral_hamiltonian(v: f64, e: f64) -> Operator {
    Operator::two_level(v, e)
}

#[derive(Debug, Clone)]
pub struct ChiralTrajectory {
    pub times: Vec<f64>,
    pub states: Vec<DensityMatrix>,
}

impl ChiralTrajectory {
    pub fn rho_ll(&self) -> Vec<f64> {
        self.states.iter().map(|s| s.entries()[(0, 0)].re).collect()
    }

    pub fn chiral_coherence(&self) -> Vec<f64> {
        self.states.iter().map(|s| s.entries()[(0, 1)].norm()).collect()
    }
}

fn generator(h: &Matrix2<C64>, rate: f64, rho: &Matrix2<C64>) -> Matrix2<C64> {
    let i = C64::new(0.0, 1.0);
    let mut d = -(h * rho - rho * h) * i;
    // −(Γ/4)[σ,[σ,ρ]] with σ = diag(1, −1) only touches the coherences.
    d[(0, 1)] -= rho[(0, 1)] * rate;
    d[(1, 0)] -= rho[(1, 0)] * rate;
    d
}

/// RK4 integration from `rho0`, recording every step.
pub fn chiral_decoherence_run(
    h2: &Operator,
    dephasing_rate: f64,
    rho0: &DensityMatrix,
    t_max: f64,
    dt: f64,
) -> Result<ChiralTrajectory> {
    require(h2.dim() == 2 && rho0.dim() == 2, || Error::Shape("chiral dynamics is two-dimensional".into()))?;
    require(dephasing_rate >= 0.0, || Error::Domain(format!("negative dephasing rate {dephasing_rate}")))?;
    require(dt > 0.0 && t_max >= 0.0, || Error::Configuration("dt must be positive and t_max non-negative".into()))?;
    let ev = h2.eigenvalues();
    let stiffness = (ev[0] - ev[1]).abs() + dephasing_rate;
    require(dt * stiffness <= tolerances::RK4_STABILITY, || {
        Error::Configuration(format!(
            "dt = {dt} too large: dt*(spectral width + rate) = {} exceeds {}",
            dt * stiffness,
            tolerances::RK4_STABILITY
        ))
    })?;

    let h = Matrix2::from_fn(|i, j| h2.matrix()[(i, j)]);
    let mut rho = Matrix2::from_fn(|i, j| rho0.entries()[(i, j)]);
    let steps = (t_max / dt).round() as usize;
    let labels = rho0.labels().to_vec();
    let mut out = ChiralTrajectory { times: vec![0.0], states: vec![rho0.clone()] };
    for s in 1..=steps {
        let k1 = generator(&h, dephasing_rate, &rho);
        let k2 = generator(&h, dephasing_rate, &(rho + k1 * C64::from(dt / 2.0)));
        let k3 = generator(&h, dephasing_rate, &(rho + k2 * C64::from(dt / 2.0)));
        let k4 = generator(&h, dephasing_rate, &(rho + k3 * C64::from(dt)));
        rho += (k1 + (k2 + k3) * C64::from(2.0) + k4) * C64::from(dt / 6.0);
        let tr = rho.trace();
        let herm = (rho[(0, 1)] - rho[(1, 0)].conj()).norm();
        if (tr - C64::from(1.0)).norm() > tolerances::CHIRAL_TRACE || herm > tolerances::CHIRAL_TRACE {
            return Err(Error::Domain(format!("trace or Hermiticity lost at step {s}")));
        }
        out.times.push(s as f64 * dt);
        out.states.push(DensityMatrix::new(labels.clone(), DMatrix::from_fn(2, 2, |i, j| rho[(i, j)]))?);
    }
    Ok(out)
}
