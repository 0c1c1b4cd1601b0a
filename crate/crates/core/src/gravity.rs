//! Decoherence of a superposition of two homogeneous gravitational field
//! strengths g, g′ by a gas whose trajectories depend on the field.
//!
//! Coherence decays as exp(−Γ t (g − g′)²) with
//! Γ = n L⁴ (π m / 2 k_B T)^{3/2}, evaluated literally in CGS with ħ = 1;
//! the resulting Γ is therefore in s³ cm⁻² (per s, per (cm s⁻²)²).

use std::f64::consts::PI;
use std::io::Write;

use serde::Serialize;

use crate::csvfmt::f;
use crate::damping::{coherence_width, gaussian_damping};
use crate::error::{require, Error, Result};
use crate::units;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GravityScenario {
    /// Gas number density, cm⁻³.
    pub n: f64,
    /// Edge length of the field region, cm.
    pub l: f64,
    /// Mass of one gas particle, g.
    pub m: f64,
    /// Gas temperature, K.
    pub t_kelvin: f64,
    /// Elapsed time, s.
    pub t: f64,
}

impl GravityScenario {
    pub fn new(n: f64, l: f64, m: f64, t_kelvin: f64, t: f64) -> Result<Self> {
        let s = Self { n, l, m, t_kelvin, t };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        for (what, v) in [("n", self.n), ("L", self.l), ("m", self.m), ("T", self.t_kelvin), ("t", self.t)] {
            require(v > 0.0 && v.is_finite(), || Error::Domain(format!("{what} must be positive, got {v}")))?;
        }
        Ok(())
    }

    /// Air at 1 atm and 300 K (ideal-gas density, mean molecular mass
    /// 28.97 u) in a 1 cm box observed for 1 s.
    pub fn air() -> Self {
        Self {
            n: units::ideal_gas_density(units::ATMOSPHERE, 300.0),
            l: 1.0,
            m: units::AIR_MOLECULE_AMU * units::AMU,
            t_kelvin: 300.0,
            t: 1.0,
        }
    }
}

pub fn gravity_rate(s: &GravityScenario) -> Result<f64> {
    s.validate()?;
    Ok(s.n * s.l.powi(4) * (PI * s.m / (2.0 * units::K_B * s.t_kelvin)).powf(1.5))
}

/// exp(−Γ t (g − g′)²).
pub fn gravity_decoherence_factor(g: f64, g_prime: f64, gamma: f64, t: f64) -> Result<f64> {
    require(t >= 0.0, || Error::Domain(format!("negative time {t}")))?;
    Ok(gaussian_damping(gamma, t, g - g_prime))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoherenceWidth {
    /// (Γ t)^{-1/2}, cm s⁻².
    pub absolute: f64,
    /// `absolute` relative to standard gravity.
    pub relative: f64,
}

pub fn coherence_width_of(s: &GravityScenario) -> Result<CoherenceWidth> {
    let gamma = gravity_rate(s)?;
    let absolute = coherence_width(gamma * s.t);
    Ok(CoherenceWidth { absolute, relative: absolute / units::G_STANDARD })
}

/// Single-row CSV: n, L, m, T, t, Gamma, dgAbs, dgRel.
pub fn write_gravity_csv<W: Write>(s: &GravityScenario, w: W) -> Result<()> {
    let gamma = gravity_rate(s)?;
    let width = coherence_width_of(s)?;
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["n", "L", "m", "T", "t", "Gamma", "dgAbs", "dgRel"])?;
    out.write_record([s.n, s.l, s.m, s.t_kelvin, s.t, gamma, width.absolute, width.relative].map(f))?;
    out.flush()?;
    Ok(())
}
