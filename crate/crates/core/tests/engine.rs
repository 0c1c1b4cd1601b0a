use decoherence::engine::{
    evolve_caldeira_leggett, evolve_pure_decoherence, moments, Equation, EvolutionParams, Evolver, GridDensityMatrix,
    GridSpec, Scheme,
};
use decoherence::tolerances;

#[test]
fn free_packet_spreads_like_the_closed_form() {
    let grid = GridSpec::new(-8.0, 8.0, 401).unwrap();
    let (sigma, m) = (1.0, 1.0);
    let rho0 = GridDensityMatrix::gaussian_packet(grid, 0.0, 0.0, sigma).unwrap();
    let dt = 0.25 * m * grid.dx().powi(2);
    let steps = (1.0 / dt).round() as usize;
    let params =
        EvolutionParams { mass: m, lambda: Some(0.0), dt, steps, record_every: steps / 4, ..Default::default() };
    let traj = evolve_pure_decoherence(&rho0, params).unwrap();
    for (snap, row) in traj.snapshots.iter().zip(&traj.summary) {
        let var = moments(&snap.rho).variance_x();
        let t = row.t;
        let exact = sigma * sigma + t * t / (4.0 * m * m * sigma * sigma);
        assert!((var / exact - 1.0).abs() < 1e-4, "t={t}: {var} vs {exact}");
    }
}

#[test]
fn position_follows_momentum_over_mass() {
    let grid = GridSpec::new(-10.0, 10.0, 160).unwrap();
    let rho0 = GridDensityMatrix::gaussian_packet(grid, -1.0, 1.2, 1.0).unwrap();
    let m = 2.0;
    let dt = 0.25 * m * grid.dx().powi(2);
    let params = EvolutionParams {
        mass: m,
        gamma: 0.3,
        temperature: 0.2,
        dt,
        steps: 200,
        record_every: 1,
        ..Default::default()
    };
    let traj = evolve_caldeira_leggett(&rho0, params).unwrap();
    let rows = &traj.summary;
    for k in 1..rows.len() - 1 {
        let dxdt = (rows[k + 1].x - rows[k - 1].x) / (2.0 * dt);
        let err = (dxdt - rows[k].p / m).abs();
        assert!(err < 1e-5, "step {k}: {err:e}");
    }
}

#[test]
fn two_packet_coherence_decays_while_populations_persist() {
    let grid = GridSpec::new(-8.0, 8.0, 128).unwrap();
    let d = 6.0;
    let rho0 = GridDensityMatrix::two_packet(grid, d, 0.0, 0.7).unwrap();
    let lambda = 0.05;
    let params = EvolutionParams {
        mass: 200.0,
        lambda: Some(lambda),
        dt: 0.01,
        steps: 200,
        record_every: 50,
        ..Default::default()
    };
    let traj = evolve_pure_decoherence(&rho0, params).unwrap();
    let x = grid.points();
    let i = x.iter().position(|&v| v >= -d / 2.0).unwrap();
    let j = x.len() - 1 - i;
    let sep = x[j] - x[i];
    let v0 = rho0.values();
    for snap in &traj.snapshots {
        let v = snap.rho.values();
        let ratio = v[(i, j)].norm() / v0[(i, j)].norm();
        let expected = (-lambda * snap.t * sep * sep).exp();
        assert!((ratio / expected - 1.0).abs() < 0.05, "t={}", snap.t);
        let pop = v[(i, i)].re / v0[(i, i)].re;
        assert!((pop - 1.0).abs() < 0.05, "t={}", snap.t);
    }
}

#[test]
fn fitted_decay_rate_is_lambda_times_separation_squared() {
    let grid = GridSpec::new(-6.0, 6.0, 64).unwrap();
    let rho0 = GridDensityMatrix::gaussian_packet(grid, 0.0, 0.0, 0.8).unwrap();
    let lambda = 0.2;
    let params = EvolutionParams {
        mass: f64::INFINITY,
        lambda: Some(lambda),
        dt: 0.005,
        steps: 400,
        record_every: 40,
        scheme: Scheme::Rk4,
        ..Default::default()
    };
    let traj = evolve_pure_decoherence(&rho0, params).unwrap();
    let x = grid.points();
    let c = 32;
    for off in [2usize, 5, 9, 14] {
        let sep = x[c + off] - x[c - off];
        let (ts, logs): (Vec<f64>, Vec<f64>) =
            traj.snapshots.iter().map(|s| (s.t, s.rho.values()[(c - off, c + off)].norm().ln())).unzip();
        let n = ts.len() as f64;
        let mt = ts.iter().sum::<f64>() / n;
        let ml = logs.iter().sum::<f64>() / n;
        let slope = ts.iter().zip(&logs).map(|(t, l)| (t - mt) * (l - ml)).sum::<f64>()
            / ts.iter().map(|t| (t - mt).powi(2)).sum::<f64>();
        let rate = -slope;
        assert!((rate / (lambda * sep * sep) - 1.0).abs() < 0.05, "sep={sep}");
    }
}

fn final_values(rho0: &GridDensityMatrix, params: EvolutionParams) -> nalgebra::DMatrix<decoherence::C64> {
    let mut ev = Evolver::new(rho0, params, Equation::PureDecoherence).unwrap();
    for _ in 0..params.steps {
        ev.step().unwrap();
    }
    ev.values().clone()
}

#[test]
fn split_scheme_converges_at_second_order() {
    let grid = GridSpec::new(-16.0, 16.0, 96).unwrap();
    let rho0 = GridDensityMatrix::two_packet(grid, 4.0, 0.5, 0.9).unwrap();
    let base_dt = 0.25 * grid.dx().powi(2);
    let t = 40.0 * base_dt;
    let params = |dt: f64, scheme: Scheme| EvolutionParams {
        mass: 1.0,
        lambda: Some(0.1),
        dt,
        steps: (t / dt).round() as usize,
        record_every: usize::MAX,
        scheme,
        ..Default::default()
    };
    let reference = final_values(&rho0, params(base_dt / 16.0, Scheme::Rk4));
    let err = |dt: f64| (final_values(&rho0, params(dt, Scheme::SplitRk4)) - &reference).norm();
    let gain = err(base_dt) / err(base_dt / 2.0);
    assert!((3.5..=4.5).contains(&gain), "gain {gain}");
}

#[test]
fn split_and_unsplit_schemes_agree() {
    let grid = GridSpec::new(-16.0, 16.0, 128).unwrap();
    let rho0 = GridDensityMatrix::gaussian_packet(grid, 0.5, 0.7, 1.0).unwrap();
    let dt = 0.25 * grid.dx().powi(2);
    let params = |scheme| EvolutionParams {
        mass: 1.0,
        lambda: Some(0.1),
        dt,
        steps: 100,
        record_every: usize::MAX,
        scheme,
        ..Default::default()
    };
    let a = final_values(&rho0, params(Scheme::Rk4));
    let b = final_values(&rho0, params(Scheme::SplitRk4));
    let diff = (a - b).norm() * grid.dx();
    assert!(diff < 1e-5, "{diff:e}");
}

#[test]
fn pure_decoherence_stays_positive() {
    let grid = GridSpec::new(-14.0, 14.0, 112).unwrap();
    let rho0 = GridDensityMatrix::two_packet(grid, 5.0, 1.0, 1.0).unwrap();
    let params = EvolutionParams {
        mass: 1.0,
        lambda: Some(0.05),
        dt: 0.25 * grid.dx().powi(2),
        steps: 100,
        record_every: 50,
        ..Default::default()
    };
    let traj = evolve_pure_decoherence(&rho0, params).unwrap();
    assert!(traj.summary.iter().all(|r| r.min_eigenvalue >= tolerances::GRID_POSITIVITY));
    assert!(traj.summary.windows(2).all(|w| w[1].purity <= w[0].purity + 1e-12));
}

#[test]
fn caldeira_leggett_logs_negative_excursions_without_failing() {
    let grid = GridSpec::new(-14.0, 14.0, 112).unwrap();
    let rho0 = GridDensityMatrix::two_packet(grid, 3.0, 0.0, 0.4).unwrap();
    let params = EvolutionParams {
        mass: 1.0,
        gamma: 0.6,
        temperature: 0.0,
        dt: 0.25 * grid.dx().powi(2),
        steps: 150,
        record_every: 10,
        ..Default::default()
    };
    let traj = evolve_caldeira_leggett(&rho0, params).unwrap();
    assert!(!traj.positivity_excursions.is_empty());
    for e in &traj.positivity_excursions {
        assert!(e.min_eigenvalue < tolerances::GRID_POSITIVITY);
    }
    for r in &traj.summary {
        assert!((r.trace - 1.0).abs() < tolerances::GRID_TRACE);
        assert!(r.hermiticity_defect < tolerances::GRID_HERMITIAN);
    }
}
