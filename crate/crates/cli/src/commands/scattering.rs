use decoherence::localization::{
    coherence_length, decoherence_factor, find_preset, localization_rate, preset_environments,
    saturated_decoherence_rate, single_scattering_overlap, write_preset_csv, ScatteringEnvironment, TABLE_SIZES_CM,
};

use super::{cell, no_checks, Command, Outcome};
use crate::error::{CliError, CliResult};
use crate::output::{Run, Summary};
use crate::params::{param, Kind, Values};

const SCATTERERS: &[&str] = &["cmb", "photons-300k", "sunlight", "air", "vacuum"];
const CUSTOM: [&str; 3] = ["k-per-cm", "flux-per-cm2-s", "sigma-cm2"];

pub const LOCALIZE: Command = Command {
    name: "localize",
    about: "Localization rate, decoherence factor and coherence length for one environment",
    params: &[
        param(
            "preset",
            Kind::Choice(SCATTERERS),
            None,
            "tabulated scatterer [default: air unless a custom environment is given]",
        ),
        param("size-cm", Kind::Positive, Some("1e-3"), "object radius of the preset, cm"),
        param("k-per-cm", Kind::Positive, None, "wavenumber of a custom environment, cm⁻¹"),
        param("flux-per-cm2-s", Kind::Positive, None, "scatterer flux N v / V, cm⁻² s⁻¹"),
        param("sigma-cm2", Kind::Positive, None, "effective cross section, cm²"),
        param("dx-cm", Kind::NonNegative, Some("1e-5"), "separation of the superposed positions, cm"),
        param("t-s", Kind::NonNegative, Some("1"), "elapsed time, s"),
    ],
    check,
    run,
};

pub const TABLE1: Command = Command {
    name: "table1",
    about: "Localization rates of all tabulated scatterers and sizes with log10 errors",
    params: &[],
    check: no_checks,
    run: run_table,
};

/// The named preset, or air when no custom key is given.
fn preset(v: &Values) -> Option<&str> {
    v.opt_text("preset").or_else(|| CUSTOM.iter().all(|k| !v.is_set(k)).then_some("air"))
}

fn check(v: &Values) -> Vec<String> {
    let custom = CUSTOM.iter().filter(|k| v.is_set(k)).count();
    match preset(v) {
        Some(_) if custom > 0 => vec!["preset excludes k-per-cm, flux-per-cm2-s and sigma-cm2".into()],
        Some(p) if find_preset(p, v.real("size-cm")).is_none() => {
            vec![format!("size-cm must be one of {TABLE_SIZES_CM:?} for preset {p}")]
        }
        None if custom < CUSTOM.len() => {
            vec!["give a preset or all of k-per-cm, flux-per-cm2-s and sigma-cm2".into()]
        }
        _ => Vec::new(),
    }
}

fn environment(v: &Values) -> CliResult<(ScatteringEnvironment, Option<bool>)> {
    match preset(v) {
        Some(p) => {
            let preset = find_preset(p, v.real("size-cm"))
                .ok_or_else(|| CliError::Config(format!("no preset {p} at size {}", v.real("size-cm"))))?;
            Ok((preset.environment, Some(preset.short_wavelength)))
        }
        None => Ok((
            ScatteringEnvironment::new(
                "custom",
                v.real("k-per-cm"),
                v.real("flux-per-cm2-s"),
                v.real("sigma-cm2"),
                "",
            )?,
            None,
        )),
    }
}

fn run(v: &Values, run: &mut Run) -> CliResult<Outcome> {
    let (env, short_wavelength) = environment(v)?;
    let (dx, t) = (v.real("dx-cm"), v.real("t-s"));
    let lambda = localization_rate(&env)?;
    let factor = decoherence_factor(dx, lambda, t)?;
    let length = if lambda.value() * t > 0.0 { coherence_length(lambda, t)? } else { f64::INFINITY };
    let overlap = single_scattering_overlap(dx, env.k)?;
    let saturated = saturated_decoherence_rate(&env, dx)?;
    run.csv("localize", |w| {
        let mut out = csv::Writer::from_writer(w);
        out.write_record([
            "name",
            "k",
            "flux",
            "sigma_eff",
            "lambda",
            "dx",
            "t",
            "decoherenceFactor",
            "coherenceLength",
            "overlap_re",
            "overlap_im",
            "saturatedRate",
        ])?;
        out.write_record([
            env.name.clone(),
            cell(env.k),
            cell(env.flux),
            cell(env.sigma_eff),
            cell(lambda.value()),
            cell(dx),
            cell(t),
            cell(factor),
            cell(length),
            cell(overlap.re),
            cell(overlap.im),
            cell(saturated),
        ])?;
        out.flush()?;
        Ok(())
    })?;
    let mut s = Summary::default();
    s.text("environment", env.name.clone())
        .real("k", env.k)
        .real("flux", env.flux)
        .real("sigmaEff", env.sigma_eff)
        .real("lambda", lambda.value())
        .real("decoherenceFactor", factor)
        .real("coherenceLength", length)
        .real("singleScatteringOverlap", overlap.re)
        .real("saturatedRate", saturated);
    if let Some(flag) = short_wavelength {
        s.flag("shortWavelength", flag);
    }
    Ok(s.into())
}

fn run_table(_: &Values, run: &mut Run) -> CliResult<Outcome> {
    let presets = preset_environments();
    run.csv("presets", |w| write_preset_csv(&presets, w))?;
    let worst = presets.iter().map(|p| p.log10_error().abs()).fold(0.0, f64::max);
    let rows =
        presets.iter().map(|p| format!("{} a={:e}: {:+.2}", p.scatterer.key(), p.size_cm, p.log10_error())).collect();
    let mut s = Summary::default();
    s.count("rows", presets.len()).real("worstLog10Error", worst).list("log10Errors", rows);
    Ok(s.into())
}
