//! Two-level transition monitored by a pointer:
//!
//! ```text
//! H = V(|1⟩⟨2| + |2⟩⟨1|) + E|2⟩⟨2| + γ p̂ (|1⟩⟨1| − |2⟩⟨2|)
//! ```
//!
//! The pointer has no dynamics of its own, so p̂ is conserved and H splits
//! into 2×2 blocks, one per eigenvalue of the discrete momentum operator.
//! The run propagates each block exactly.

use std::f64::consts::PI;
use std::fmt;
use std::io::Write;

use nalgebra::DMatrix;
use serde::Serialize;

use super::Operator;
use crate::csvfmt::f;
use crate::engine::GridSpec;
use crate::error::{require, Error, Result};
use crate::{tolerances, C64};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZenoToyParams {
    pub v: f64,
    pub e: f64,
    pub gamma: f64,
    pub pointer_grid: GridSpec,
    /// Standard deviation of the initial Gaussian pointer density.
    pub pointer_width: f64,
}

impl ZenoToyParams {
    pub fn validate(&self) -> Result<()> {
        self.pointer_grid.validate()?;
        require(self.v >= 0.0 && self.v.is_finite(), || {
            Error::Configuration(format!("V = {} must be non-negative", self.v))
        })?;
        require(self.e.is_finite(), || Error::Configuration("E must be finite".into()))?;
        require(self.gamma >= 0.0 && self.gamma.is_finite(), || {
            Error::Configuration(format!("gamma = {} must be non-negative", self.gamma))
        })?;
        require(self.pointer_width > 0.0, || {
            Error::Configuration(format!("pointer width {} must be positive", self.pointer_width))
        })?;
        require(self.edge_clearance() >= 0.0, || {
            Error::Configuration("initial pointer does not fit on the grid".into())
        })
    }

    /// Period π/√(V² + E²/4) of the unmonitored transition probability.
    pub fn rabi_period(&self) -> f64 {
        PI / (self.v * self.v + self.e * self.e / 4.0).sqrt()
    }

    /// Largest unmonitored transition probability V²/(V² + E²/4).
    pub fn rabi_max(&self) -> f64 {
        let v2 = self.v * self.v;
        if v2 == 0.0 {
            0.0
        } else {
            v2 / (v2 + self.e * self.e / 4.0)
        }
    }

    /// Time σ/γ after which the two pointer branches no longer overlap.
    pub fn t_resolve(&self) -> f64 {
        self.pointer_width / self.gamma
    }

    /// Distance the pointer may still drift before its tail reaches the
    /// boundary tolerance at the grid edge.
    fn edge_clearance(&self) -> f64 {
        let g = &self.pointer_grid;
        let tail = self.pointer_width * (2.0 * (1.0 / tolerances::GRID_BOUNDARY).ln()).sqrt();
        (-g.x_min).min(g.x_max) - tail
    }

    fn pointer(&self) -> Vec<f64> {
        let s = self.pointer_width;
        let raw: Vec<f64> = self.pointer_grid.points().iter().map(|x| (-x * x / (4.0 * s * s)).exp()).collect();
        let norm = raw.iter().map(|a| a * a).sum::<f64>().sqrt();
        raw.into_iter().map(|a| a / norm).collect()
    }
}

/// Dense Hamiltonian on {|1⟩, |2⟩} ⊗ pointer grid, level-major ordering.
#[derive(Debug, Clone)]
pub struct ZenoToy {
    pub operator: Operator,
    pub warnings: Vec<String>,
}

/// p̂ = −i ∂ₓ as the antisymmetric central difference with zero values
/// beyond the grid.
fn momentum_matrix(grid: &GridSpec) -> DMatrix<C64> {
    let n = grid.n_points;
    let c = 0.5 / grid.dx();
    DMatrix::from_fn(n, n, |i, j| {
        if j == i + 1 {
            C64::new(0.0, -c)
        } else if i == j + 1 {
            C64::new(0.0, c)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

pub fn build_zeno_toy(params: &ZenoToyParams) -> Result<ZenoToy> {
    params.validate()?;
    let n = params.pointer_grid.n_points;
    let p = momentum_matrix(&params.pointer_grid);
    let mut h = DMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        h[(i, n + i)] = C64::from(params.v);
        h[(n + i, i)] = C64::from(params.v);
        h[(n + i, n + i)] = C64::from(params.e);
        for j in 0..n {
            h[(i, j)] += p[(i, j)] * params.gamma;
            h[(n + i, n + j)] -= p[(i, j)] * params.gamma;
        }
    }
    let mut warnings = Vec::new();
    let dx = params.pointer_grid.dx();
    if dx > params.pointer_width / 4.0 {
        warnings.push(format!(
            "grid spacing {dx} is coarse against the pointer width {}; branch separation is poorly resolved",
            params.pointer_width
        ));
    }
    Ok(ZenoToy { operator: Operator::new(h)?, warnings })
}

/// Momentum eigenvalues μⱼ = cos(jπ/(N+1))/Δx and the weight of the
/// initial pointer in each eigenvector iᵏ sin(k jπ/(N+1)).
struct PointerSpectrum {
    mu: Vec<f64>,
    weight: Vec<f64>,
}

impl PointerSpectrum {
    fn new(params: &ZenoToyParams) -> Self {
        let n = params.pointer_grid.n_points;
        let dx = params.pointer_grid.dx();
        let phi = params.pointer();
        let norm = (2.0 / (n + 1) as f64).sqrt();
        let i_pow = [C64::new(1.0, 0.0), C64::new(0.0, 1.0), C64::new(-1.0, 0.0), C64::new(0.0, -1.0)];
        let mut mu = Vec::with_capacity(n);
        let mut weight = Vec::with_capacity(n);
        for j in 1..=n {
            let theta = j as f64 * PI / (n + 1) as f64;
            let amp: C64 = (1..=n).map(|k| i_pow[k % 4].conj() * ((k as f64 * theta).sin() * norm * phi[k - 1])).sum();
            mu.push(theta.cos() / dx);
            weight.push(amp.norm_sqr());
        }
        Self { mu, weight }
    }

    fn p2(&self, params: &ZenoToyParams, t: f64) -> f64 {
        let v2 = params.v * params.v;
        self.mu
            .iter()
            .zip(&self.weight)
            .map(|(&mu, &w)| {
                let delta = params.gamma * mu - params.e / 2.0;
                let omega = (delta * delta + v2).sqrt();
                let s = if omega > 0.0 { (omega * t).sin() / omega } else { t };
                w * v2 * s * s
            })
            .sum()
    }

    fn branch_overlap(&self, params: &ZenoToyParams, t: f64) -> f64 {
        self.mu
            .iter()
            .zip(&self.weight)
            .map(|(&mu, &w)| C64::from_polar(w, 2.0 * params.gamma * mu * t))
            .sum::<C64>()
            .norm()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Quadratic,
    Linear,
    Suppressed,
    Unclassified,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Quadratic => "quadratic",
            Regime::Linear => "linear",
            Regime::Suppressed => "suppressed",
            Regime::Unclassified => "unclassified",
        })
    }
}

/// Windows are fractions of the unmonitored Rabi period.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegimeThresholds {
    pub early_window: (f64, f64),
    pub middle_window: (f64, f64),
    pub window_samples: usize,
    pub quadratic_slope: f64,
    pub quadratic_tolerance: f64,
    pub linear_slope: f64,
    pub linear_tolerance: f64,
    /// Suppressed when max P₂ is below this fraction of the Rabi maximum.
    pub suppression: f64,
}

impl Default for RegimeThresholds {
    fn default() -> Self {
        Self {
            early_window: (0.005, 0.05),
            middle_window: (0.2, 0.8),
            window_samples: 16,
            quadratic_slope: 2.0,
            quadratic_tolerance: 0.1,
            linear_slope: 1.0,
            linear_tolerance: 0.2,
            suppression: 0.1,
        }
    }
}

impl RegimeThresholds {
    pub fn classify(&self, early_slope: f64, middle_slope: f64, max_p2: f64, rabi_max: f64) -> Regime {
        if max_p2 < self.suppression * rabi_max {
            Regime::Suppressed
        } else if (middle_slope - self.linear_slope).abs() <= self.linear_tolerance {
            Regime::Linear
        } else if (early_slope - self.quadratic_slope).abs() <= self.quadratic_tolerance {
            Regime::Quadratic
        } else {
            Regime::Unclassified
        }
    }
}

/// Least-squares slope of ln y against ln t.
pub fn log_log_slope(ts: &[f64], ys: &[f64]) -> f64 {
    let n = ts.len() as f64;
    let lx: Vec<f64> = ts.iter().map(|t| t.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let cov: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    cov / var
}

fn log_space(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| a * (b / a).powf(i as f64 / (n - 1) as f64)).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct ZenoToyRecord {
    pub params: ZenoToyParams,
    pub times: Vec<f64>,
    /// Population of |2⟩.
    pub p2: Vec<f64>,
    /// |⟨φ₁(t)|φ₂(t)⟩| of the pointer branches displaced by ±γt.
    pub pointer_overlap: Vec<f64>,
    pub rabi_period: f64,
    pub t_resolve: f64,
    pub early_slope: f64,
    pub middle_slope: f64,
    pub max_p2: f64,
    pub regime: Regime,
    pub warnings: Vec<String>,
}

pub fn run_zeno_toy(params: &ZenoToyParams, t_max: f64, dt: f64) -> Result<ZenoToyRecord> {
    run_zeno_toy_with(params, t_max, dt, &RegimeThresholds::default())
}

pub fn run_zeno_toy_with(
    params: &ZenoToyParams,
    t_max: f64,
    dt: f64,
    thresholds: &RegimeThresholds,
) -> Result<ZenoToyRecord> {
    params.validate()?;
    require(params.v > 0.0, || Error::Configuration("V must be positive to drive transitions".into()))?;
    require(dt > 0.0 && t_max > 0.0, || Error::Configuration("t_max and dt must be positive".into()))?;
    let period = params.rabi_period();
    require(t_max >= thresholds.middle_window.1 * period, || {
        Error::Configuration(format!(
            "t_max = {t_max} ends before the middle window at {} of the period {period}",
            thresholds.middle_window.1
        ))
    })?;
    let steps = (t_max / dt).round().max(1.0) as usize;
    let clearance = params.edge_clearance();
    if params.gamma * t_max > clearance {
        let step = (clearance / (params.gamma * dt)).floor() as usize + 1;
        return Err(Error::DomainEscape {
            step,
            detail: format!("pointer drift gamma*t exceeds the clearance {clearance} to the grid edge"),
        });
    }

    let spectrum = PointerSpectrum::new(params);
    let times: Vec<f64> = (0..=steps).map(|s| s as f64 * dt).collect();
    let p2: Vec<f64> = times.iter().map(|&t| spectrum.p2(params, t)).collect();
    let pointer_overlap = times.iter().map(|&t| spectrum.branch_overlap(params, t)).collect();

    let window_slope = |(a, b): (f64, f64)| {
        let ts = log_space(a * period, b * period, thresholds.window_samples);
        let ys: Vec<f64> = ts.iter().map(|&t| spectrum.p2(params, t)).collect();
        log_log_slope(&ts, &ys)
    };
    let early_slope = window_slope(thresholds.early_window);
    let middle_slope = window_slope(thresholds.middle_window);
    let max_p2 = p2.iter().copied().fold(0.0, f64::max);
    let regime = thresholds.classify(early_slope, middle_slope, max_p2, params.rabi_max());

    let mut warnings = Vec::new();
    if params.pointer_grid.dx() > params.pointer_width / 4.0 {
        warnings.push("pointer grid spacing exceeds a quarter of the pointer width".to_string());
    }
    Ok(ZenoToyRecord {
        params: *params,
        times,
        p2,
        pointer_overlap,
        rabi_period: period,
        t_resolve: params.t_resolve(),
        early_slope,
        middle_slope,
        max_p2,
        regime,
        warnings,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZenoScanRow {
    pub gamma: f64,
    pub t_resolve: f64,
    pub early_slope: f64,
    pub middle_slope: f64,
    pub max_p2: f64,
    pub regime: Regime,
}

impl From<&ZenoToyRecord> for ZenoScanRow {
    fn from(r: &ZenoToyRecord) -> Self {
        Self {
            gamma: r.params.gamma,
            t_resolve: r.t_resolve,
            early_slope: r.early_slope,
            middle_slope: r.middle_slope,
            max_p2: r.max_p2,
            regime: r.regime,
        }
    }
}

/// Runs one toy model per coupling on its own thread; rows come back in
/// the order of `gammas`.
pub fn zeno_scan(base: &ZenoToyParams, gammas: &[f64], t_max: f64, dt: f64) -> Result<Vec<ZenoScanRow>> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = gammas
            .iter()
            .map(|&gamma| {
                let params = ZenoToyParams { gamma, ..*base };
                scope.spawn(move || run_zeno_toy(&params, t_max, dt).map(|r| ZenoScanRow::from(&r)))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("scan worker panicked")).collect()
    })
}

pub fn write_zeno_scan_csv<W: Write>(rows: &[ZenoScanRow], w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["gamma", "tResolve", "earlySlope", "middleSlope", "maxP2", "regimeLabel"])?;
    for r in rows {
        out.write_record([
            f(r.gamma),
            f(r.t_resolve),
            f(r.early_slope),
            f(r.middle_slope),
            f(r.max_p2),
            r.regime.to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::hermitian_eigenvalues;

    fn params(gamma: f64, e: f64, half_width: f64, n: usize) -> ZenoToyParams {
        ZenoToyParams {
            v: 1.0,
            e,
            gamma,
            pointer_grid: GridSpec::new(-half_width, half_width, n).unwrap(),
            pointer_width: 1.0,
        }
    }

    #[test]
    fn uncoupled_spectrum_is_two_level_spectrum() {
        let p = params(0.0, 3.0, 8.0, 24);
        let toy = build_zeno_toy(&p).unwrap();
        let eig = hermitian_eigenvalues(toy.operator.matrix());
        let root = (9.0f64 + 4.0).sqrt();
        let (lo, hi) = ((3.0 - root) / 2.0, (3.0 + root) / 2.0);
        for (i, e) in eig.iter().enumerate() {
            let want = if i < 24 { lo } else { hi };
            assert!((e - want).abs() < 1e-12);
        }
    }

    #[test]
    fn spectral_propagation_matches_dense_exponential() {
        let p = params(1.5, 2.0, 8.0, 40);
        let toy = build_zeno_toy(&p).unwrap();
        let spectrum = PointerSpectrum::new(&p);
        let phi = p.pointer();
        let mut psi0 = nalgebra::DVector::zeros(80);
        for (i, a) in phi.iter().enumerate() {
            psi0[i] = C64::from(*a);
        }
        for t in [0.1, 0.7, 1.9] {
            let psi = toy.operator.propagator(t) * &psi0;
            let dense: f64 = (40..80).map(|i| psi[i].norm_sqr()).sum();
            assert!((dense - spectrum.p2(&p, t)).abs() < 1e-12, "t={t}");
        }
    }

    #[test]
    fn decoupled_sectors_drift_apart() {
        let p = ZenoToyParams { v: 0.0, e: 0.0, ..params(1.0, 0.0, 8.0, 16) };
        let toy = build_zeno_toy(&p).unwrap();
        let m = toy.operator.matrix();
        assert!((0..16).all(|i| (16..32).all(|j| m[(i, j)].norm() == 0.0)));
        let upper = m.view((0, 0), (16, 16));
        let lower = m.view((16, 16), (16, 16));
        assert_eq!(upper.clone_owned(), -lower.clone_owned());
    }

    #[test]
    fn free_rabi_oscillation() {
        let p = params(0.0, 0.0, 8.0, 64);
        let rec = run_zeno_toy(&p, 4.0, 0.01).unwrap();
        for (t, p2) in rec.times.iter().zip(&rec.p2) {
            assert!((p2 - t.sin().powi(2)).abs() < 1e-12);
        }
        assert_eq!(rec.regime, Regime::Quadratic);
    }

    #[test]
    fn strong_coupling_suppresses() {
        let half = 48.0 * 2.0 * PI + 8.0;
        let p = ZenoToyParams { pointer_grid: GridSpec::new(-half, half, 4001).unwrap(), ..params(48.0, 0.0, 8.0, 16) };
        let rec = run_zeno_toy(&p, 2.0 * p.rabi_period(), 0.01).unwrap();
        assert_eq!(rec.regime, Regime::Suppressed, "{}", rec.max_p2);
    }

    #[test]
    fn escaping_pointer_is_reported() {
        let p = params(5.0, 0.0, 10.0, 64);
        match run_zeno_toy(&p, 4.0, 0.01) {
            Err(Error::DomainEscape { step, .. }) => assert!(step > 0 && step < 400),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn slope_of_power_law() {
        let ts = log_space(0.1, 1.0, 8);
        let ys: Vec<f64> = ts.iter().map(|t| 3.0 * t * t).collect();
        assert!((log_log_slope(&ts, &ys) - 2.0).abs() < 1e-12);
    }
}
