use decoherence::engine::{
    decoherence_relaxation_ratio, evolve_caldeira_leggett, evolve_pure_decoherence, write_snapshot_csv,
    write_summary_csv, Equation, EvolutionParams, GridDensityMatrix, GridSpec, Scheme,
};

use super::{cell, no_checks, Command, Outcome};
use crate::error::{CliError, CliResult};
use crate::output::{Run, Summary};
use crate::params::{param, Kind, ParamSpec, Values};

const X_MIN: ParamSpec = param("x-min", Kind::Real, Some("-12"), "left grid edge");
const X_MAX: ParamSpec = param("x-max", Kind::Real, Some("12"), "right grid edge");
const POINTS: ParamSpec = param("points", Kind::Count { min: 8 }, Some("128"), "grid points");
const STATE: ParamSpec = param("state", Kind::Choice(&["gaussian", "two-packet"]), Some("two-packet"), "initial state");
const X0: ParamSpec = param("x0", Kind::Real, Some("0"), "centre of the gaussian packet");
const P0: ParamSpec = param("p0", Kind::Real, Some("0"), "mean momentum of the gaussian packet");
const SIGMA: ParamSpec = param("sigma", Kind::Positive, Some("0.7"), "position spread of each packet");
const SEPARATION: ParamSpec = param("separation", Kind::Positive, Some("6"), "distance between the two packets");
const PHASE: ParamSpec = param("phase", Kind::Real, Some("0"), "relative phase of the two packets");
const MASS: ParamSpec = param("mass", Kind::PositiveOrInf, Some("1"), "particle mass; inf freezes the kinetic term");
const DT: ParamSpec = param("dt", Kind::Positive, Some("1e-3"), "time step");
const STEPS: ParamSpec = param("steps", Kind::Count { min: 1 }, Some("1000"), "number of steps");
const RECORD_EVERY: ParamSpec = param("record-every", Kind::Count { min: 1 }, Some("200"), "steps between snapshots");
const SCHEME: ParamSpec = param("scheme", Kind::Choice(&["rk4", "split"]), Some("rk4"), "time integrator");

pub const EVOLVE: Command = Command {
    name: "evolve",
    about: "Grid density matrix under position-localizing decoherence (natural units)",
    params: &[
        X_MIN,
        X_MAX,
        POINTS,
        STATE,
        X0,
        P0,
        SIGMA,
        SEPARATION,
        PHASE,
        MASS,
        param("lambda", Kind::NonNegative, Some("0.05"), "localization rate Λ"),
        DT,
        STEPS,
        RECORD_EVERY,
        SCHEME,
    ],
    check: |v| check(v, Equation::PureDecoherence),
    run: |v, r| run(v, r, Equation::PureDecoherence),
};

pub const CL: Command = Command {
    name: "cl",
    about: "Grid density matrix under Caldeira–Leggett quantum Brownian motion (natural units)",
    params: &[
        X_MIN,
        X_MAX,
        POINTS,
        STATE,
        X0,
        P0,
        SIGMA,
        SEPARATION,
        PHASE,
        MASS,
        param("gamma", Kind::NonNegative, Some("0.1"), "relaxation rate γ"),
        param("temperature", Kind::NonNegative, Some("1"), "bath temperature k_B T"),
        param("lambda", Kind::NonNegative, None, "override of Λ = m γ k_B T"),
        DT,
        STEPS,
        RECORD_EVERY,
        SCHEME,
    ],
    check: |v| check(v, Equation::CaldeiraLeggett),
    run: |v, r| run(v, r, Equation::CaldeiraLeggett),
};

pub const RATIO: Command = Command {
    name: "ratio",
    about: "Ratio of decoherence to relaxation rate for a macroscopic superposition",
    params: &[
        param("mass-g", Kind::Positive, Some("1"), "mass, g"),
        param("temp-K", Kind::Positive, Some("300"), "temperature, K"),
        param("dx-cm", Kind::Positive, Some("1"), "separation, cm"),
    ],
    check: no_checks,
    run: run_ratio,
};

fn setup(v: &Values, equation: Equation) -> Result<(GridDensityMatrix, EvolutionParams), Vec<String>> {
    let grid = GridSpec::new(v.real("x-min"), v.real("x-max"), v.usize("points")).map_err(|e| vec![e.to_string()])?;
    let params = EvolutionParams {
        mass: v.real("mass"),
        lambda: v.opt_real("lambda"),
        gamma: if equation == Equation::CaldeiraLeggett { v.real("gamma") } else { 0.0 },
        temperature: if equation == Equation::CaldeiraLeggett { v.real("temperature") } else { 0.0 },
        dt: v.real("dt"),
        steps: v.usize("steps"),
        record_every: v.usize("record-every"),
        scheme: if v.text("scheme") == "split" { Scheme::SplitRk4 } else { Scheme::Rk4 },
    };
    let mut problems: Vec<String> = params.diagnostics(&grid, equation).iter().map(|e| e.to_string()).collect();
    let rho0 = match v.text("state") {
        "gaussian" => GridDensityMatrix::gaussian_packet(grid, v.real("x0"), v.real("p0"), v.real("sigma")),
        _ => GridDensityMatrix::two_packet(grid, v.real("separation"), v.real("phase"), v.real("sigma")),
    };
    match rho0 {
        Ok(rho) if problems.is_empty() => Ok((rho, params)),
        Ok(_) => Err(problems),
        Err(e) => {
            problems.push(format!("initial state: {e}"));
            Err(problems)
        }
    }
}

fn check(v: &Values, equation: Equation) -> Vec<String> {
    setup(v, equation).err().unwrap_or_default()
}

fn run(v: &Values, run: &mut Run, equation: Equation) -> CliResult<Outcome> {
    let (rho0, params) = setup(v, equation).map_err(|p| CliError::Config(p.join("; ")))?;
    let traj = match equation {
        Equation::PureDecoherence => evolve_pure_decoherence(&rho0, params)?,
        Equation::CaldeiraLeggett => evolve_caldeira_leggett(&rho0, params)?,
    };
    run.csv("summary", |w| write_summary_csv(&traj, w))?;
    run.csv("snapshots", |w| write_snapshot_csv(&traj, w))?;
    let last = traj.summary.last().expect("a run records its first step");
    let min_eig = traj.summary.iter().map(|r| r.min_eigenvalue).fold(f64::INFINITY, f64::min);
    let mut s = Summary::default();
    s.real("lambda", traj.lambda)
        .count("steps", last.step)
        .real("t", last.t)
        .real("trace", last.trace)
        .real("purity", last.purity)
        .real("x", last.x)
        .real("p", last.p)
        .real("offDiagonalPeak", last.off_diagonal_peak)
        .real("minEigenvalue", min_eig)
        .count("positivityExcursions", traj.positivity_excursions.len());
    Ok(s.into())
}

fn run_ratio(v: &Values, run: &mut Run) -> CliResult<Outcome> {
    let (m, t, dx) = (v.real("mass-g"), v.real("temp-K"), v.real("dx-cm"));
    let r = decoherence_relaxation_ratio(m, t, dx)?;
    run.csv("ratio", |w| {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["mass_g", "temp_K", "dx_cm", "thermalWavelength_cm", "ratio"])?;
        out.write_record([cell(m), cell(t), cell(dx), cell(r.thermal_wavelength_cm), cell(r.ratio)])?;
        out.flush()?;
        Ok(())
    })?;
    let mut s = Summary::default();
    s.real("ratio", r.ratio).real("thermalWavelengthCm", r.thermal_wavelength_cm);
    Ok(s.into())
}
