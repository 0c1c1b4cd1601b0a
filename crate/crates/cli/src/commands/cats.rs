use decoherence::cats::{
    cat_decoherence_factor, cat_normalization, cat_state, coherence_time, coherent_overlap, mandated_cutoff,
    visibility_curve, write_visibility_csv, CatSpec,
};
use decoherence::C64;

use super::{cell, Command, Outcome};
use crate::error::{CliError, CliResult};
use crate::output::{Run, Summary};
use crate::params::{param, Kind, Values};

pub const CAT: Command = Command {
    name: "cat",
    about: "Cavity cat state: Fock amplitudes and fringe visibility under damping",
    params: &[
        param("alpha-re", Kind::Real, Some("2"), "real part of the coherent amplitude"),
        param("alpha-im", Kind::Real, Some("0"), "imaginary part of the coherent amplitude"),
        param("kappa-per-s", Kind::NonNegative, Some("1e4"), "cavity damping rate, s⁻¹"),
        param("t-max-s", Kind::NonNegative, Some("5e-4"), "end of the visibility curve, s"),
        param("samples", Kind::Count { min: 2 }, Some("101"), "points on the visibility curve"),
        param("cutoff", Kind::Count { min: 5 }, None, "Fock cutoff [default: smallest admissible]"),
    ],
    check: |v| spec(v).err().map(|e| vec![e]).unwrap_or_default(),
    run,
};

fn spec(v: &Values) -> Result<CatSpec, String> {
    let alpha = C64::new(v.real("alpha-re"), v.real("alpha-im"));
    match v.opt_count("cutoff") {
        Some(c) => CatSpec::new(alpha, c as usize).map_err(|e| e.to_string()),
        None => Ok(CatSpec::with_mandated_cutoff(alpha)),
    }
}

fn run(v: &Values, run: &mut Run) -> CliResult<Outcome> {
    let spec = spec(v).map_err(CliError::Config)?;
    let alpha = spec.alpha();
    let (kappa, t_max) = (v.real("kappa-per-s"), v.real("t-max-s"));
    let psi = cat_state(&spec)?;
    let curve = visibility_curve(alpha, kappa, t_max, v.usize("samples"))?;
    run.csv("fock", |w| {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["n", "re", "im"])?;
        for (n, a) in psi.amplitudes().iter().enumerate() {
            out.write_record([n.to_string(), cell(a.re), cell(a.im)])?;
        }
        out.flush()?;
        Ok(())
    })?;
    run.csv("visibility", |w| write_visibility_csv(&curve, w))?;
    let &(_, v_end, d_end) = curve.last().expect("at least two samples");
    let mut s = Summary::default();
    s.count("cutoff", spec.cutoff)
        .count("mandatedCutoff", mandated_cutoff(alpha))
        .real("normalization", cat_normalization(alpha))
        .real("meanPhotonNumber", psi.mean_photon_number())
        .real("overlap", coherent_overlap(alpha, -alpha).norm())
        .real("overlapClosedForm", (-2.0 * alpha.norm_sqr()).exp())
        .real("dFactorAtEnd", d_end)
        .real("visibilityAtEnd", v_end)
        .real("dFactorAtInfinity", cat_decoherence_factor(alpha, 1.0, f64::INFINITY));
    match coherence_time(alpha, kappa) {
        Some(t) => s.real("coherenceTimeS", t),
        None => s.text("coherenceTimeS", "never"),
    };
    Ok(s.into())
}
