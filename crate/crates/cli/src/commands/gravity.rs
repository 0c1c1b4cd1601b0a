use decoherence::gravity::{
    coherence_width_of, gravity_decoherence_factor, gravity_rate, write_gravity_csv, GravityScenario,
};

use super::{no_checks, Command, Outcome};
use crate::error::CliResult;
use crate::output::{Run, Summary};
use crate::params::{param, Kind, Values};

pub const GRAVITY: Command = Command {
    name: "gravity",
    about: "Decoherence of superposed gravitational field strengths by a surrounding gas",
    params: &[
        param("preset", Kind::Choice(&["air"]), Some("air"), "base scenario"),
        param("n-per-cm3", Kind::Positive, None, "gas number density, cm⁻³"),
        param("L-cm", Kind::Positive, None, "edge of the field region, cm"),
        param("m-g", Kind::Positive, None, "mass of a gas particle, g"),
        param("temp-K", Kind::Positive, None, "gas temperature, K"),
        param("t-s", Kind::Positive, None, "elapsed time, s"),
        param("dg-cm-s2", Kind::NonNegative, None, "field difference to evaluate the decoherence factor at, cm s⁻²"),
    ],
    check: no_checks,
    run,
};

fn scenario(v: &Values) -> GravityScenario {
    let mut s = GravityScenario::air();
    for (key, field) in
        [("n-per-cm3", &mut s.n), ("L-cm", &mut s.l), ("m-g", &mut s.m), ("temp-K", &mut s.t_kelvin), ("t-s", &mut s.t)]
    {
        if let Some(x) = v.opt_real(key) {
            *field = x;
        }
    }
    s
}

fn run(v: &Values, run: &mut Run) -> CliResult<Outcome> {
    let sc = scenario(v);
    sc.validate()?;
    let gamma = gravity_rate(&sc)?;
    let width = coherence_width_of(&sc)?;
    run.csv("gravity", |w| write_gravity_csv(&sc, w))?;
    let mut s = Summary::default();
    s.real("n", sc.n)
        .real("L", sc.l)
        .real("m", sc.m)
        .real("T", sc.t_kelvin)
        .real("t", sc.t)
        .real("Gamma", gamma)
        .real("dgAbs", width.absolute)
        .real("dgRel", width.relative);
    if let Some(dg) = v.opt_real("dg-cm-s2") {
        s.real("decoherenceFactor", gravity_decoherence_factor(0.0, dg, gamma, sc.t)?);
    }
    Ok(s.into())
}
