use decoherence::quantum::{
    coherence_norm, entanglement_entropy, numeric_labels, random, schmidt_decompose, Subsystem,
};
use decoherence::zeno::{local_density_matrix, OverlapMatrix};
use decoherence::C64;
use nalgebra::DMatrix;
use rand::rngs::StdRng;
use rand::SeedableRng;

use super::{cell, Command, Outcome};
use crate::error::CliResult;
use crate::output::{Run, Summary};
use crate::params::{param, Kind, Values};

pub const SCHMIDT: Command = Command {
    name: "schmidt",
    about: "Schmidt decomposition of seeded random bipartite states, checked against partial traces",
    params: &[
        param("dim-a", Kind::Count { min: 1 }, Some("2"), "dimension of subsystem A"),
        param("dim-b", Kind::Count { min: 1 }, Some("3"), "dimension of subsystem B"),
        param("trials", Kind::Count { min: 1 }, Some("1"), "number of random states"),
        param(
            "env-overlap",
            Kind::NonNegative,
            None,
            "overlap between distinct environment states; adds the reduced system state",
        ),
    ],
    check,
    run,
};

fn check(v: &Values) -> Vec<String> {
    let mut out = Vec::new();
    if v.opt_real("env-overlap").is_some_and(|s| s > 1.0) {
        out.push("env-overlap must lie in [0, 1]".into());
    }
    if v.count("dim-a").saturating_mul(v.count("dim-b")) > 1 << 16 {
        out.push("dim-a · dim-b exceeds 65536".into());
    }
    out
}

fn run(v: &Values, run: &mut Run) -> CliResult<Outcome> {
    let (da, db) = (v.usize("dim-a"), v.usize("dim-b"));
    let trials = v.usize("trials");
    let mut rng = StdRng::seed_from_u64(run.seed);
    let mut rows = Vec::new();
    let mut entropy_sum = 0.0;
    let mut worst = 0.0f64;
    for trial in 0..trials {
        let psi = random::bipartite_state(&mut rng, da, db);
        let sd = schmidt_decompose(&psi)?;
        let mut spectrum = psi.reduced(Subsystem::A).eigenvalues();
        spectrum.sort_by(|a, b| b.total_cmp(a));
        for (i, p) in spectrum.iter().enumerate() {
            let w = sd.weights.get(i).copied().unwrap_or(0.0);
            worst = worst.max((w - p).abs());
        }
        entropy_sum += entanglement_entropy(&sd);
        rows.extend(sd.weights.iter().enumerate().map(|(i, &w)| (trial, i, w)));
    }
    run.csv("weights", |w| {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["trial", "index", "weight"])?;
        for (t, i, wt) in &rows {
            out.write_record([t.to_string(), i.to_string(), cell(*wt)])?;
        }
        out.flush()?;
        Ok(())
    })?;

    let mut s = Summary::default();
    s.count("trials", trials)
        .real("meanEntropy", entropy_sum / trials as f64)
        .real("maxEntropy", (da.min(db) as f64).ln())
        .real("oracleDeviation", worst);

    if let Some(overlap) = v.opt_real("env-overlap") {
        let c: Vec<C64> = random::state(&mut rng, da).amplitudes().iter().copied().collect();
        let o = DMatrix::from_fn(da, da, |i, j| C64::from(if i == j { 1.0 } else { overlap }));
        let rho = local_density_matrix(&c, &OverlapMatrix::new(o)?)?;
        let singletons: Vec<Vec<String>> = numeric_labels(da).into_iter().map(|l| vec![l]).collect();
        s.real("reducedCoherence", coherence_norm(&rho, &singletons)?).real("reducedPurity", rho.purity());
        run.csv("reduced", |w| {
            let mut out = csv::Writer::from_writer(w);
            out.write_record(["i", "j", "re", "im"])?;
            let e = rho.entries();
            for i in 0..da {
                for j in 0..da {
                    out.write_record([i.to_string(), j.to_string(), cell(e[(i, j)].re), cell(e[(i, j)].im)])?;
                }
            }
            out.flush()?;
            Ok(())
        })?;
    }
    Ok(s.into())
}
