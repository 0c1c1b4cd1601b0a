use serde::Serialize;

use crate::error::{require, Error, Result};
use crate::units::{HBAR, K_B};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RelaxationRatio {
    /// Decoherence rate over relaxation rate, m k_B T (δx)²/ħ².
    pub ratio: f64,
    /// Thermal de Broglie length ħ/√(m k_B T) in cm.
    pub thermal_wavelength_cm: f64,
}

/// Ratio of decoherence to relaxation rate for a mass in grams at a
/// temperature in kelvin over a separation in cm, evaluated as (δx/λ_th)².
pub fn decoherence_relaxation_ratio(mass_g: f64, temp_k: f64, dx_cm: f64) -> Result<RelaxationRatio> {
    require(mass_g > 0.0 && mass_g.is_finite(), || Error::Domain(format!("mass {mass_g} g must be positive")))?;
    require(temp_k > 0.0 && temp_k.is_finite(), || Error::Domain(format!("temperature {temp_k} K must be positive")))?;
    require(dx_cm >= 0.0 && dx_cm.is_finite(), || {
        Error::Domain(format!("separation {dx_cm} cm must be non-negative"))
    })?;
    let lambda = HBAR / (mass_g * K_B * temp_k).sqrt();
    Ok(RelaxationRatio { ratio: (dx_cm / lambda).powi(2), thermal_wavelength_cm: lambda })
}
