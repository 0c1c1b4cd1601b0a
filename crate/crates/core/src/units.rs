//! Physical constants in CGS units (CODATA 2018 exact or recommended values).

/// Reduced Planck constant, erg·s.
pub const HBAR: f64 = 1.054_571_817e-27;

/// Boltzmann constant, erg/K.
pub const K_B: f64 = 1.380_649e-16;

/// Speed of light, cm/s.
pub const C: f64 = 2.997_924_58e10;

/// Standard gravity, cm/s².
pub const G_STANDARD: f64 = 980.665;

/// Atomic mass unit, g.
pub const AMU: f64 = 1.660_539_066_60e-24;

/// Standard atmosphere, dyn/cm².
pub const ATMOSPHERE: f64 = 1.013_25e6;

/// Mean molar mass of dry air in atomic mass units.
pub const AIR_MOLECULE_AMU: f64 = 28.97;

/// Solar constant at the top of the atmosphere, erg cm⁻² s⁻¹.
pub const SOLAR_CONSTANT: f64 = 1.361e6;

/// Effective photospheric temperature of the sun, K.
pub const SUN_TEMPERATURE: f64 = 5772.0;

/// Present temperature of the cosmic microwave background, K.
pub const CMB_TEMPERATURE: f64 = 2.7255;

/// Riemann ζ(3).
pub const ZETA_3: f64 = 1.202_056_903_159_594_3;

/// Riemann ζ(5).
pub const ZETA_5: f64 = 1.036_927_755_143_37;

/// Riemann ζ(9).
pub const ZETA_9: f64 = 1.002_008_392_826_082_2;

/// Thermal wavenumber k_B T / (ħ c) in cm⁻¹.
pub fn thermal_wavenumber(temperature_k: f64) -> f64 {
    K_B * temperature_k / (HBAR * C)
}

/// Blackbody photon number density, cm⁻³: (2ζ(3)/π²)(k_B T/ħc)³ ≈ 20.3 T³.
pub fn blackbody_photon_density(temperature_k: f64) -> f64 {
    2.0 * ZETA_3 / std::f64::consts::PI.powi(2) * thermal_wavenumber(temperature_k).powi(3)
}

/// Mean blackbody photon energy in units of k_B T: π⁴ / (30 ζ(3)).
pub fn mean_photon_energy_over_kt() -> f64 {
    std::f64::consts::PI.powi(4) / (30.0 * ZETA_3)
}

/// Ideal-gas number density, cm⁻³.
pub fn ideal_gas_density(pressure_dyn_cm2: f64, temperature_k: f64) -> f64 {
    pressure_dyn_cm2 / (K_B * temperature_k)
}

/// Mean Maxwell speed √(8 k_B T / π m), cm/s.
pub fn mean_thermal_speed(mass_g: f64, temperature_k: f64) -> f64 {
    (8.0 * K_B * temperature_k / (std::f64::consts::PI * mass_g)).sqrt()
}
