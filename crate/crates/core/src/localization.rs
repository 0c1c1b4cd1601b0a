//! Scattering-induced localization.
//!
//! Each scattering event leaves the environment in a state that depends on
//! the object's position. Summed over many events, spatial coherence decays
//! as exp(−Λ t (x − x′)²) with the localization rate Λ = k² · flux · σ_eff
//! (CGS, cm⁻² s⁻¹).
//!
//! The preset catalog reconstructs the standard table of rates for dust
//! grains and large molecules from textbook physical inputs. Photon
//! environments use the thermal Rayleigh result when the grain is small
//! compared to the typical wavelength and the geometric cross section
//! otherwise, whichever gives the smaller rate; gas environments use the
//! geometric cross section with the thermal de Broglie wavenumber.

use std::f64::consts::PI;
use std::io::Write;

use serde::Serialize;

use crate::csvfmt::f;
use crate::damping::{coherence_width, gaussian_damping};
use crate::error::{require, Error, Result};
use crate::{units, C64};

/// A flux of scatterers characterised by wavenumber, flux and cross section.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScatteringEnvironment {
    pub name: String,
    /// Wavenumber of the incoming particles, cm⁻¹.
    pub k: f64,
    /// Incident flux N v / V, cm⁻² s⁻¹.
    pub flux: f64,
    /// Effective cross section, cm².
    pub sigma_eff: f64,
    pub notes: String,
}

impl ScatteringEnvironment {
    pub fn new(name: impl Into<String>, k: f64, flux: f64, sigma_eff: f64, notes: impl Into<String>) -> Result<Self> {
        let env = Self { name: name.into(), k, flux, sigma_eff, notes: notes.into() };
        env.validate()?;
        Ok(env)
    }

    pub fn validate(&self) -> Result<()> {
        for (what, v) in [("k", self.k), ("flux", self.flux), ("sigma_eff", self.sigma_eff)] {
            require(v > 0.0 && v.is_finite(), || {
                Error::Domain(format!("{what} must be positive and finite, got {v}"))
            })?;
        }
        Ok(())
    }
}

/// Localization rate Λ in cm⁻² s⁻¹.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct LocalizationRate(f64);

impl LocalizationRate {
    pub fn new(lambda: f64) -> Result<Self> {
        require(lambda > 0.0 && lambda.is_finite(), || {
            Error::Domain(format!("localization rate must be positive, got {lambda}"))
        })?;
        Ok(Self(lambda))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Λ = k² · flux · σ_eff.
pub fn localization_rate(env: &ScatteringEnvironment) -> Result<LocalizationRate> {
    env.validate()?;
    LocalizationRate::new(env.k * env.k * env.flux * env.sigma_eff)
}

/// Remaining coherence exp(−Λ t dx²) between positions `dx` apart.
pub fn decoherence_factor(dx: f64, lambda: LocalizationRate, t: f64) -> Result<f64> {
    require(t >= 0.0, || Error::Domain(format!("negative time {t}")))?;
    Ok(gaussian_damping(lambda.value(), t, dx))
}

/// Overlap ⟨χ|S†_{x'} S_x|χ⟩ of the environment states scattered off two
/// positions `dx` apart, modelled as the isotropic Gaussian exp(−k² dx² / 2).
pub fn single_scattering_overlap(dx: f64, k: f64) -> Result<C64> {
    require(k > 0.0, || Error::Domain(format!("wavenumber must be positive, got {k}")))?;
    Ok(C64::new((-0.5 * k * k * dx * dx).exp(), 0.0))
}

/// 1/e width (Λ t)^{-1/2} of the coherence Gaussian, cm.
pub fn coherence_length(lambda: LocalizationRate, t: f64) -> Result<f64> {
    let lt = lambda.value() * t;
    require(lt > 0.0, || Error::Domain(format!("Λt must be positive, got {lt}")))?;
    Ok(coherence_width(lt))
}

/// Decoherence rate for separation `dx`, capped at one resolving event per
/// scatter: min(Λ dx², flux · σ_eff). The cap matters once k·dx > 1.
pub fn saturated_decoherence_rate(env: &ScatteringEnvironment, dx: f64) -> Result<f64> {
    let lambda = localization_rate(env)?;
    Ok((lambda.value() * dx * dx).min(env.flux * env.sigma_eff))
}

/// Scatterer rows of the localization-rate table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Scatterer {
    CosmicBackground,
    ThermalPhotons,
    Sunlight,
    AirMolecules,
    LaboratoryVacuum,
}

impl Scatterer {
    pub const ALL: [Scatterer; 5] = [
        Scatterer::CosmicBackground,
        Scatterer::ThermalPhotons,
        Scatterer::Sunlight,
        Scatterer::AirMolecules,
        Scatterer::LaboratoryVacuum,
    ];

    pub fn key(self) -> &'static str {
        match self {
            Scatterer::CosmicBackground => "cmb",
            Scatterer::ThermalPhotons => "photons-300k",
            Scatterer::Sunlight => "sunlight",
            Scatterer::AirMolecules => "air",
            Scatterer::LaboratoryVacuum => "vacuum",
        }
    }

    pub fn from_key(key: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.key() == key)
    }

    pub fn description(self) -> &'static str {
        match self {
            Scatterer::CosmicBackground => "cosmic background radiation",
            Scatterer::ThermalPhotons => "300 K photons",
            Scatterer::Sunlight => "sunlight on earth",
            Scatterer::AirMolecules => "air molecules",
            Scatterer::LaboratoryVacuum => "laboratory vacuum",
        }
    }
}

/// Object radii of the table columns, cm.
pub const TABLE_SIZES_CM: [f64; 3] = [1e-3, 1e-5, 1e-6];

/// Tabulated Λ (cm⁻² s⁻¹) per scatterer and column of [`TABLE_SIZES_CM`].
pub fn table_lambda(scatterer: Scatterer, size_index: usize) -> f64 {
    let row = match scatterer {
        Scatterer::CosmicBackground => [1e6, 1e-6, 1e-12],
        Scatterer::ThermalPhotons => [1e19, 1e12, 1e6],
        Scatterer::Sunlight => [1e21, 1e17, 1e13],
        Scatterer::AirMolecules => [1e36, 1e32, 1e30],
        Scatterer::LaboratoryVacuum => [1e23, 1e19, 1e17],
    };
    row[size_index]
}

/// One cell of the table: derived inputs, computed Λ and the tabulated target.
#[derive(Debug, Clone, Serialize)]
pub struct LocalizationPreset {
    pub scatterer: Scatterer,
    pub size_cm: f64,
    pub environment: ScatteringEnvironment,
    pub lambda_computed: f64,
    pub lambda_table: f64,
    /// k · a > 1: Λ dx² overestimates once dx exceeds 1/k; see
    /// [`saturated_decoherence_rate`].
    pub short_wavelength: bool,
}

impl LocalizationPreset {
    pub fn log10_error(&self) -> f64 {
        (self.lambda_computed / self.lambda_table).log10()
    }
}

/// Thermal Rayleigh localization rate for a dielectric sphere of radius `a`
/// in blackbody radiation, scaled by `dilution` for non-equilibrium fluxes:
/// Λ = dilution · 8! · 8ζ(9) c a⁶ / (9π) · (k_B T / ħc)⁹.
fn rayleigh_thermal_lambda(temperature_k: f64, a: f64, dilution: f64) -> f64 {
    let k = units::thermal_wavenumber(temperature_k);
    dilution * 40320.0 * 8.0 * units::ZETA_9 * units::C * a.powi(6) / (9.0 * PI) * k.powi(9)
}

fn photon_preset(
    scatterer: Scatterer,
    temperature_k: f64,
    flux: f64,
    dilution: f64,
    a: f64,
) -> (ScatteringEnvironment, bool) {
    let k = units::thermal_wavenumber(temperature_k);
    let rayleigh = rayleigh_thermal_lambda(temperature_k, a, dilution);
    let geometric = k * k * flux * PI * a * a;
    let short_wavelength = geometric < rayleigh;
    let sigma_eff = rayleigh.min(geometric) / (k * k * flux);
    let regime = if short_wavelength {
        "geometric cross section pi a^2".to_string()
    } else {
        "thermal Rayleigh cross section (spectrally averaged k^6 a^6)".to_string()
    };
    let notes = format!(
        "photons at T={temperature_k} K; k=k_B T/(hbar c); flux={}; dilution={dilution:.3e}; sigma_eff from {regime}",
        if scatterer == Scatterer::Sunlight {
            "solar constant / mean photon energy 2.701 k_B T"
        } else {
            "blackbody density 20.3 T^3 cm^-3 times c"
        }
    );
    let env =
        ScatteringEnvironment { name: format!("{}, a={a:e} cm", scatterer.description()), k, flux, sigma_eff, notes };
    (env, short_wavelength)
}

fn gas_preset(scatterer: Scatterer, density: f64, a: f64) -> (ScatteringEnvironment, bool) {
    let t = 300.0;
    let m = units::AIR_MOLECULE_AMU * units::AMU;
    let k = (2.0 * m * units::K_B * t).sqrt() / units::HBAR;
    let flux = density * units::mean_thermal_speed(m, t);
    let sigma_eff = PI * a * a;
    let notes = format!(
        "air at T=300 K, n={density:.3e} cm^-3, m=28.97 u; k=sqrt(2 m k_B T)/hbar; flux=n*mean Maxwell speed; sigma_eff=pi a^2"
    );
    let env =
        ScatteringEnvironment { name: format!("{}, a={a:e} cm", scatterer.description()), k, flux, sigma_eff, notes };
    (env, k * a > 1.0)
}

/// The 15 table cells (5 scatterers × 3 sizes) with their derived inputs.
pub fn preset_environments() -> Vec<LocalizationPreset> {
    let mut out = Vec::with_capacity(15);
    for scatterer in Scatterer::ALL {
        for (idx, &a) in TABLE_SIZES_CM.iter().enumerate() {
            let (environment, short_wavelength) = match scatterer {
                Scatterer::CosmicBackground => {
                    let t = units::CMB_TEMPERATURE;
                    photon_preset(scatterer, t, units::blackbody_photon_density(t) * units::C, 1.0, a)
                }
                Scatterer::ThermalPhotons => {
                    photon_preset(scatterer, 300.0, units::blackbody_photon_density(300.0) * units::C, 1.0, a)
                }
                Scatterer::Sunlight => {
                    let t = units::SUN_TEMPERATURE;
                    let flux = units::SOLAR_CONSTANT / (units::mean_photon_energy_over_kt() * units::K_B * t);
                    let dilution = flux / (units::blackbody_photon_density(t) * units::C);
                    photon_preset(scatterer, t, flux, dilution, a)
                }
                Scatterer::AirMolecules => gas_preset(scatterer, units::ideal_gas_density(units::ATMOSPHERE, 300.0), a),
                Scatterer::LaboratoryVacuum => gas_preset(scatterer, 1e3, a),
            };
            let lambda_computed = localization_rate(&environment).expect("preset inputs are positive").value();
            out.push(LocalizationPreset {
                scatterer,
                size_cm: a,
                environment,
                lambda_computed,
                lambda_table: table_lambda(scatterer, idx),
                short_wavelength,
            });
        }
    }
    out
}

/// Looks up a preset by scatterer key and radius.
pub fn find_preset(key: &str, size_cm: f64) -> Option<LocalizationPreset> {
    let scatterer = Scatterer::from_key(key)?;
    preset_environments().into_iter().find(|p| p.scatterer == scatterer && (p.size_cm / size_cm - 1.0).abs() < 1e-9)
}

/// CSV with columns name, size, k, flux, sigma_eff, lambda_computed,
/// lambda_paper, log10_error.
pub fn write_preset_csv<W: Write>(presets: &[LocalizationPreset], w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["name", "size", "k", "flux", "sigma_eff", "lambda_computed", "lambda_paper", "log10_error"])?;
    for p in presets {
        out.write_record([
            p.scatterer.key().to_string(),
            f(p.size_cm),
            f(p.environment.k),
            f(p.environment.flux),
            f(p.environment.sigma_eff),
            f(p.lambda_computed),
            f(p.lambda_table),
            f(p.log10_error()),
        ])?;
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn env(k: f64, flux: f64, sigma: f64) -> ScatteringEnvironment {
        ScatteringEnvironment::new("test", k, flux, sigma, "").unwrap()
    }

    #[test]
    fn unit_product() {
        assert_eq!(localization_rate(&env(1.0, 1.0, 1.0)).unwrap().value(), 1.0);
    }

    #[test]
    fn doubling_k_quadruples_rate() {
        let a = localization_rate(&env(3.0, 2.0, 0.5)).unwrap().value();
        let b = localization_rate(&env(6.0, 2.0, 0.5)).unwrap().value();
        assert!((b / a - 4.0).abs() < 1e-15);
    }

    #[test]
    fn nonpositive_inputs_rejected() {
        assert!(matches!(ScatteringEnvironment::new("x", 0.0, 1.0, 1.0, ""), Err(Error::Domain(_))));
        assert!(matches!(ScatteringEnvironment::new("x", 1.0, -1.0, 1.0, ""), Err(Error::Domain(_))));
        assert!(matches!(ScatteringEnvironment::new("x", 1.0, 1.0, 0.0, ""), Err(Error::Domain(_))));
    }

    #[test]
    fn decoherence_factor_values() {
        let l = LocalizationRate::new(1.0).unwrap();
        assert_eq!(decoherence_factor(0.0, l, 5.0).unwrap(), 1.0);
        assert!((decoherence_factor(1.0, l, 1.0).unwrap() - (-1f64).exp()).abs() < 1e-16);
        assert!(matches!(decoherence_factor(1.0, l, -1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn thermal_photons_small_grain_example() {
        let l = LocalizationRate::new(1e12).unwrap();
        let d = decoherence_factor(1e-4, l, 1e-4).unwrap();
        assert!((d - (-1f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn single_scattering_overlap_limits() {
        assert_eq!(single_scattering_overlap(0.0, 3.0).unwrap(), C64::new(1.0, 0.0));
        // exp(-0.005)
        let v = single_scattering_overlap(0.1, 1.0).unwrap();
        assert!((v.re - 0.995_012_479_192_682_4).abs() < 1e-12);
        assert!(single_scattering_overlap(100.0, 1.0).unwrap().norm() < 1e-6);
        assert!(single_scattering_overlap(1.0, 0.0).is_err());
    }

    #[test]
    fn coherence_length_values() {
        let one = LocalizationRate::new(1.0).unwrap();
        assert_eq!(coherence_length(one, 1.0).unwrap(), 1.0);
        let vac = LocalizationRate::new(1e19).unwrap();
        let l = coherence_length(vac, 1.0).unwrap();
        assert!((l - 3.162e-10).abs() < 1e-13);
        assert!(coherence_length(one, 0.0).is_err());
        let x = coherence_length(vac, 2.5).unwrap();
        assert!((decoherence_factor(x, vac, 2.5).unwrap() - (-1f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn preset_catalog_shape() {
        let presets = preset_environments();
        assert_eq!(presets.len(), 15);
        let cmb = presets.iter().find(|p| p.scatterer == Scatterer::CosmicBackground && p.size_cm == 1e-3).unwrap();
        assert_eq!(cmb.lambda_table, 1e6);
        for p in &presets {
            assert!(!p.environment.notes.is_empty());
            p.environment.validate().unwrap();
        }
    }

    #[test]
    fn air_preset_within_three_decades_of_1e36() {
        let air = find_preset("air", 1e-3).unwrap();
        assert!(air.log10_error().abs() <= 3.0);
        assert!(air.short_wavelength);
    }

    #[test]
    fn saturation_caps_large_separations() {
        let air = find_preset("air", 1e-3).unwrap().environment;
        let small = saturated_decoherence_rate(&air, 1e-12).unwrap();
        let lambda = localization_rate(&air).unwrap().value();
        assert!((small / (lambda * 1e-24) - 1.0).abs() < 1e-12);
        let big = saturated_decoherence_rate(&air, 1.0).unwrap();
        assert_eq!(big, air.flux * air.sigma_eff);
    }

    #[test]
    fn preset_csv_has_header_and_rows() {
        let mut buf = Vec::new();
        write_preset_csv(&preset_environments(), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines.len(), 16);
        assert_eq!(lines[0], "name,size,k,flux,sigma_eff,lambda_computed,lambda_paper,log10_error");
    }
}
