use decoherence::engine::GridSpec;
use decoherence::quantum::{DensityMatrix, StateVector};
use decoherence::tolerances;
use decoherence::zeno::{
    chiral_decoherence_run, chiral_hamiltonian, energy_variance, exponential_decay_survival, run_zeno_toy,
    survival_probability, write_zeno_scan_csv, zeno_survival, Operator, ZenoScanRow, ZenoToyParams,
};
use decoherence::C64;
use nalgebra::{DMatrix, Matrix2};

use super::{cell, Command, Outcome};
use crate::error::{CliError, CliResult};
use crate::output::{Run, Summary};
use crate::params::{param, Kind, Values};

pub const ZENO: Command = Command {
    name: "zeno",
    about: "Survival of the initial level of a driven chain under N equally spaced projections",
    params: &[
        param("levels", Kind::Count { min: 2 }, Some("2"), "number of levels in the chain"),
        param("V", Kind::Real, Some("1"), "hopping between neighbouring levels"),
        param("E", Kind::Real, Some("0"), "energy step between neighbouring levels"),
        param("t", Kind::NonNegative, Some("1"), "total time"),
        param("N", Kind::Count { min: 1 }, Some("10"), "number of projections"),
        param("decay-rate", Kind::NonNegative, None, "rate of an exponential decay to contrast with"),
    ],
    check: |v| {
        let mut out = Vec::new();
        if v.count("levels") > 512 {
            out.push("levels must not exceed 512".into());
        }
        if v.count("N") > 100_000_000 {
            out.push("N must not exceed 1e8".into());
        }
        out
    },
    run: run_zeno,
};

pub const ZENOTOY: Command = Command {
    name: "zenotoy",
    about: "Two-level system coupled to a pointer momentum: transition probability and regime",
    params: &[
        param("V", Kind::Positive, Some("1"), "coupling between the levels"),
        param("E", Kind::Real, Some("10"), "energy of level 2"),
        param("gamma", Kind::NonNegative, Some("8"), "pointer coupling strength γ"),
        param("width", Kind::Positive, Some("1"), "position spread of the initial pointer"),
        param("dx", Kind::Positive, Some("0.125"), "pointer grid spacing"),
        param("half-width", Kind::Positive, None, "pointer grid half width [default γ·t-max + 8·width]"),
        param("t-max", Kind::Positive, None, "duration [default two Rabi periods]"),
        param("dt", Kind::Positive, None, "sampling interval [default t-max/1000]"),
    ],
    check: |v| toy_setup(v).err().map(|e| vec![e]).unwrap_or_default(),
    run: run_toy,
};

pub const CHIRAL: Command = Command {
    name: "chiral",
    about: "Tunnelling between chiral states under monitoring of the chirality",
    params: &[
        param("V", Kind::Real, Some("1"), "tunnelling between |L⟩ and |R⟩"),
        param("E", Kind::Real, Some("0"), "energy offset of |R⟩"),
        param("rate", Kind::NonNegative, Some("0"), "chiral dephasing rate"),
        param("t-max", Kind::Positive, Some("10"), "duration"),
        param("dt", Kind::Positive, Some("1e-3"), "time step"),
        param("start", Kind::Choice(&["L", "R", "one", "two"]), Some("L"), "initial state"),
        param("stride", Kind::Count { min: 1 }, Some("10"), "steps between CSV rows"),
    ],
    check: |v| {
        let width = 2.0 * (v.real("V").powi(2) + v.real("E").powi(2) / 4.0).sqrt();
        let z = v.real("dt") * (width + v.real("rate"));
        if z > tolerances::RK4_STABILITY {
            vec![format!("dt·(spectral width + rate) = {z} exceeds the stability bound {}", tolerances::RK4_STABILITY)]
        } else {
            Vec::new()
        }
    },
    run: run_chiral,
};

/// Nearest-neighbour chain with hopping V and level energies k·E.
fn chain(levels: usize, v: f64, e: f64) -> CliResult<Operator> {
    let h = DMatrix::from_fn(levels, levels, |i, j| {
        C64::from(match i.abs_diff(j) {
            0 => e * i as f64,
            1 => v,
            _ => 0.0,
        })
    });
    Ok(Operator::new(h)?)
}

/// 1, 2, 5, 10, 20, 50, … below `n`, then `n`.
fn ladder(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut decade = 1;
    'outer: loop {
        for m in [1, 2, 5] {
            if m * decade >= n {
                break 'outer;
            }
            out.push(m * decade);
        }
        decade *= 10;
    }
    out.push(n);
    out
}

fn run_zeno(v: &Values, run: &mut Run) -> CliResult<Outcome> {
    let levels = v.usize("levels");
    let (hop, e, t, n) = (v.real("V"), v.real("E"), v.real("t"), v.count("N"));
    let h = chain(levels, hop, e)?;
    let u = StateVector::basis(levels, 0)?;
    let rate = v.opt_real("decay-rate");
    let mut rows = Vec::new();
    for k in ladder(n) {
        let s = zeno_survival(&h, &u, t, k)?;
        let exp = rate.map(|r| exponential_decay_survival(r, t, k)).transpose()?;
        rows.push((k, s, exp));
    }
    run.csv("survival", |w| {
        let mut out = csv::Writer::from_writer(w);
        let mut header = vec!["N", "survival", "approximation"];
        if rate.is_some() {
            header.push("exponential");
        }
        out.write_record(&header)?;
        for (k, s, exp) in &rows {
            let mut rec = vec![k.to_string(), cell(s.exact), cell(s.approximation)];
            rec.extend(exp.map(cell));
            out.write_record(&rec)?;
        }
        out.flush()?;
        Ok(())
    })?;
    let (_, last, last_exp) = rows.last().copied().expect("ladder ends at N");
    let mut s = Summary::default();
    s.real("survival", last.exact)
        .real("approximation", last.approximation)
        .real("unmeasuredSurvival", survival_probability(&h, &u, t)?.exact)
        .real("energyVariance", energy_variance(&h, &u)?);
    if levels == 2 && e == 0.0 {
        s.real("closedForm", (hop * t / n as f64).cos().powi(2).powf(n as f64));
    }
    if let Some(x) = last_exp {
        s.real("exponential", x);
    }
    Ok(s.into())
}

fn toy_setup(v: &Values) -> Result<(ZenoToyParams, f64, f64), String> {
    let (hop, e, gamma, width) = (v.real("V"), v.real("E"), v.real("gamma"), v.real("width"));
    let period = std::f64::consts::PI / (hop * hop + e * e / 4.0).sqrt();
    let t_max = v.opt_real("t-max").unwrap_or(2.0 * period);
    let dt = v.opt_real("dt").unwrap_or(t_max / 1000.0);
    let half = v.opt_real("half-width").unwrap_or(gamma * t_max + 8.0 * width);
    let dx = v.real("dx");
    let points = (2.0 * half / dx).round() as usize + 1;
    if points > 20_001 {
        return Err(format!("pointer grid of {points} points is too large; raise dx or lower half-width"));
    }
    let grid = GridSpec::new(-half, half, points).map_err(|e| e.to_string())?;
    let params = ZenoToyParams { v: hop, e, gamma, pointer_grid: grid, pointer_width: width };
    params.validate().map_err(|e| e.to_string())?;
    if t_max < 0.8 * period {
        return Err(format!("t-max = {t_max} must cover at least 0.8 of the Rabi period {period}"));
    }
    let clearance = half - width * (2.0 * 1e8f64.ln()).sqrt();
    if gamma * t_max > clearance {
        return Err(format!(
            "pointer branches travel γ·t-max = {} but the grid leaves only {clearance}; raise half-width",
            gamma * t_max
        ));
    }
    Ok((params, t_max, dt))
}

fn run_toy(v: &Values, run: &mut Run) -> CliResult<Outcome> {
    let (params, t_max, dt) = toy_setup(v).map_err(CliError::Config)?;
    let rec = run_zeno_toy(&params, t_max, dt)?;
    let row = ZenoScanRow::from(&rec);
    run.csv("trace", |w| {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["t", "P2", "pointerOverlap"])?;
        for i in 0..rec.times.len() {
            out.write_record([cell(rec.times[i]), cell(rec.p2[i]), cell(rec.pointer_overlap[i])])?;
        }
        out.flush()?;
        Ok(())
    })?;
    run.csv("scan", |w| write_zeno_scan_csv(std::slice::from_ref(&row), w))?;
    let mut s = Summary::default();
    s.real("gamma", params.gamma)
        .text("regime", rec.regime.to_string())
        .real("earlySlope", rec.early_slope)
        .real("middleSlope", rec.middle_slope)
        .real("maxP2", rec.max_p2)
        .real("rabiMax", params.rabi_max())
        .real("rabiPeriod", rec.rabi_period)
        .real("tResolve", rec.t_resolve)
        .list("warnings", rec.warnings.clone());
    Ok(Outcome { summary: s, scan: Some(row) })
}

fn run_chiral(v: &Values, run: &mut Run) -> CliResult<Outcome> {
    let h = chiral_hamiltonian(v.real("V"), v.real("E"));
    let half = C64::from(0.5);
    let m = match v.text("start") {
        "L" => Matrix2::new(C64::from(1.0), C64::from(0.0), C64::from(0.0), C64::from(0.0)),
        "R" => Matrix2::new(C64::from(0.0), C64::from(0.0), C64::from(0.0), C64::from(1.0)),
        "one" => Matrix2::from_element(half),
        _ => Matrix2::new(half, -half, -half, half),
    };
    let rho0 = DensityMatrix::new(vec!["L".into(), "R".into()], DMatrix::from_fn(2, 2, |i, j| m[(i, j)]))?;
    let traj = chiral_decoherence_run(&h, v.real("rate"), &rho0, v.real("t-max"), v.real("dt"))?;
    let stride = v.usize("stride");
    let last = traj.times.len() - 1;
    run.csv("trajectory", |w| {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["t", "rhoLL", "rhoRR", "rhoLR_re", "rhoLR_im"])?;
        for i in (0..=last).filter(|&i| i % stride == 0 || i == last) {
            let e = traj.states[i].entries();
            out.write_record([
                cell(traj.times[i]),
                cell(e[(0, 0)].re),
                cell(e[(1, 1)].re),
                cell(e[(0, 1)].re),
                cell(e[(0, 1)].im),
            ])?;
        }
        out.flush()?;
        Ok(())
    })?;
    let ll = traj.rho_ll();
    let mut s = Summary::default();
    s.real("finalRhoLL", ll[last])
        .real("minRhoLL", ll.iter().copied().fold(f64::INFINITY, f64::min))
        .real("maxRhoLL", ll.iter().copied().fold(f64::NEG_INFINITY, f64::max))
        .real("finalChiralCoherence", traj.chiral_coherence()[last])
        .count("steps", last);
    Ok(s.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ladder_ends_at_n() {
        assert_eq!(ladder(1), [1]);
        assert_eq!(ladder(10), [1, 2, 5, 10]);
        assert_eq!(ladder(60), [1, 2, 5, 10, 20, 50, 60]);
    }

    #[test]
    fn two_level_chain_is_the_two_level_operator() {
        let a = chain(2, 0.7, 1.3).unwrap();
        let b = Operator::two_level(0.7, 1.3);
        assert_eq!(a.matrix(), b.matrix());
    }
}
