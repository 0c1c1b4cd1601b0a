//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Each export wraps a plain Rust function of the same name with a
//! `compute_` prefix so the numerics can be tested natively.

use decoherence::cats::{coherence_time, visibility_curve};
use decoherence::engine::{evolve_pure_decoherence, EvolutionParams, GridDensityMatrix, GridSpec, Scheme};
use decoherence::zeno::{run_zeno_toy, ZenoToyParams};
use decoherence::{Error, Result, C64};
use wasm_bindgen::prelude::*;

/// Grid points per axis of the coherence map.
pub const MAP_POINTS: usize = 96;
/// Position spread of each packet in the coherence map.
pub const PACKET_SIGMA: f64 = 0.7;
const MAP_RECORDS: usize = 40;

fn to_js(e: Error) -> JsError {
    JsError::new(&e.to_string())
}

#[wasm_bindgen]
pub struct CoherenceMap {
    half_width: f64,
    values: Vec<f64>,
    times: Vec<f64>,
    coherence: Vec<f64>,
    predicted: Vec<f64>,
    purity: f64,
}

#[wasm_bindgen]
impl CoherenceMap {
    #[wasm_bindgen(getter)]
    pub fn points(&self) -> usize {
        MAP_POINTS
    }

    #[wasm_bindgen(getter, js_name = halfWidth)]
    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    /// |ρ(x, x′)| at the final time, row-major, scaled to a peak of 1.
    #[wasm_bindgen(getter)]
    pub fn values(&self) -> Vec<f64> {
        self.values.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn times(&self) -> Vec<f64> {
        self.times.clone()
    }

    /// Largest |ρ(x, −x)| relative to its initial value.
    #[wasm_bindgen(getter)]
    pub fn coherence(&self) -> Vec<f64> {
        self.coherence.clone()
    }

    /// The same quantity for an infinitely heavy particle, where ρ(x, −x) decays as exp(−4Λ t x²).
    #[wasm_bindgen(getter)]
    pub fn predicted(&self) -> Vec<f64> {
        self.predicted.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn purity(&self) -> f64 {
        self.purity
    }
}

/// Grid half width that keeps both spreading packets clear of the edges.
pub fn map_half_width(separation: f64, lambda: f64, mass: f64, time: f64) -> f64 {
    let s2 = PACKET_SIGMA * PACKET_SIGMA;
    let spread =
        (s2 + time * time / (4.0 * mass * mass * s2) + 2.0 * lambda * time.powi(3) / (3.0 * mass * mass)).sqrt();
    separation / 2.0 + 7.0 * spread
}

pub fn compute_coherence_map(separation: f64, lambda: f64, mass: f64, time: f64) -> Result<CoherenceMap> {
    if !(separation >= 0.0 && lambda >= 0.0 && mass > 0.0 && time > 0.0 && mass.is_finite() && time.is_finite()) {
        return Err(Error::Configuration("separation and lambda must be non-negative, mass and time positive".into()));
    }
    let half = map_half_width(separation, lambda, mass, time);
    let grid = GridSpec::new(-half, half, MAP_POINTS)?;
    let rho0 = GridDensityMatrix::two_packet(grid, separation, 0.0, PACKET_SIGMA)?;
    let bound = 0.2 * mass * grid.dx() * grid.dx();
    let steps = ((time / bound).ceil() as usize).max(MAP_RECORDS);
    let params = EvolutionParams {
        mass,
        lambda: Some(lambda),
        dt: time / steps as f64,
        steps,
        record_every: steps.div_ceil(MAP_RECORDS),
        scheme: Scheme::SplitRk4,
        ..EvolutionParams::default()
    };
    let traj = evolve_pure_decoherence(&rho0, params)?;
    let last = traj.final_state();
    let peak = last.values().iter().map(|z| z.norm()).fold(0.0, f64::max);
    let initial = traj.summary[0].off_diagonal_peak;
    let mirror: Vec<(f64, f64)> =
        (0..MAP_POINTS).map(|i| (grid.x(i), rho0.values()[(i, MAP_POINTS - 1 - i)].norm())).collect();
    let static_peak = |t: f64| mirror.iter().map(|&(x, r)| r * (-4.0 * lambda * t * x * x).exp()).fold(0.0, f64::max);
    Ok(CoherenceMap {
        half_width: half,
        values: last.values().transpose().iter().map(|z: &C64| z.norm() / peak).collect(),
        times: traj.summary.iter().map(|r| r.t).collect(),
        coherence: traj.summary.iter().map(|r| r.off_diagonal_peak / initial).collect(),
        predicted: traj.summary.iter().map(|r| static_peak(r.t) / initial).collect(),
        purity: last.purity(),
    })
}

/// Evolve two separated packets under localization and return the final |ρ(x, x′)|.
#[wasm_bindgen(js_name = coherenceMap)]
pub fn coherence_map(separation: f64, lambda: f64, mass: f64, time: f64) -> std::result::Result<CoherenceMap, JsError> {
    compute_coherence_map(separation, lambda, mass, time).map_err(to_js)
}

#[wasm_bindgen]
pub struct ZenoCurve {
    times: Vec<f64>,
    p2: Vec<f64>,
    unmonitored: Vec<f64>,
    regime: String,
    t_resolve: f64,
}

#[wasm_bindgen]
impl ZenoCurve {
    #[wasm_bindgen(getter)]
    pub fn times(&self) -> Vec<f64> {
        self.times.clone()
    }

    /// Population of the upper level with the pointer attached.
    #[wasm_bindgen(getter)]
    pub fn p2(&self) -> Vec<f64> {
        self.p2.clone()
    }

    /// The same population with the pointer decoupled.
    #[wasm_bindgen(getter)]
    pub fn unmonitored(&self) -> Vec<f64> {
        self.unmonitored.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn regime(&self) -> String {
        self.regime.clone()
    }

    #[wasm_bindgen(getter, js_name = tResolve)]
    pub fn t_resolve(&self) -> f64 {
        self.t_resolve
    }
}

pub const POINTER_WIDTH: f64 = 1.0;
/// Finest pointer grid spacing; coarsened so the grid never exceeds `POINTER_POINTS`.
pub const POINTER_DX: f64 = 0.125;
pub const POINTER_POINTS: usize = 2001;
const ZENO_SAMPLES: f64 = 400.0;

pub fn compute_zeno_curve(v: f64, e: f64, gamma: f64) -> Result<ZenoCurve> {
    if !(v > 0.0 && v.is_finite() && e.is_finite() && gamma >= 0.0 && gamma.is_finite()) {
        return Err(Error::Configuration("V must be positive, E finite and gamma non-negative".into()));
    }
    let omega = (v * v + e * e / 4.0).sqrt();
    let t_max = 2.0 * std::f64::consts::PI / omega;
    let half = gamma * t_max + 8.0 * POINTER_WIDTH;
    let points = ((2.0 * half / POINTER_DX).round() as usize + 1).min(POINTER_POINTS);
    let params =
        ZenoToyParams { v, e, gamma, pointer_grid: GridSpec::new(-half, half, points)?, pointer_width: POINTER_WIDTH };
    let rec = run_zeno_toy(&params, t_max, t_max / ZENO_SAMPLES)?;
    let unmonitored = rec.times.iter().map(|t| (v / omega * (omega * t).sin()).powi(2)).collect();
    Ok(ZenoCurve {
        times: rec.times,
        p2: rec.p2,
        unmonitored,
        regime: rec.regime.to_string(),
        t_resolve: rec.t_resolve,
    })
}

/// Transition probability of a two-level system whose levels are read by a pointer of strength γ.
#[wasm_bindgen(js_name = zenoCurve)]
pub fn zeno_curve(v: f64, e: f64, gamma: f64) -> std::result::Result<ZenoCurve, JsError> {
    compute_zeno_curve(v, e, gamma).map_err(to_js)
}

#[wasm_bindgen]
pub struct CatCurve {
    times: Vec<f64>,
    visibility: Vec<f64>,
    d_factor: Vec<f64>,
    coherence_time: Option<f64>,
}

#[wasm_bindgen]
impl CatCurve {
    #[wasm_bindgen(getter)]
    pub fn times(&self) -> Vec<f64> {
        self.times.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn visibility(&self) -> Vec<f64> {
        self.visibility.clone()
    }

    #[wasm_bindgen(getter, js_name = dFactor)]
    pub fn d_factor(&self) -> Vec<f64> {
        self.d_factor.clone()
    }

    /// Time at which the decoherence factor reaches e⁻¹, if it ever does.
    #[wasm_bindgen(getter, js_name = coherenceTime)]
    pub fn coherence_time(&self) -> Option<f64> {
        self.coherence_time
    }
}

pub fn compute_cat_curve(alpha: f64, kappa: f64, t_max: f64, samples: usize) -> Result<CatCurve> {
    let a = C64::from(alpha);
    let curve = visibility_curve(a, kappa, t_max, samples)?;
    Ok(CatCurve {
        times: curve.iter().map(|c| c.0).collect(),
        visibility: curve.iter().map(|c| c.1).collect(),
        d_factor: curve.iter().map(|c| c.2).collect(),
        coherence_time: coherence_time(a, kappa),
    })
}

/// Fringe visibility of a damped cavity cat of real amplitude α.
#[wasm_bindgen(js_name = catCurve)]
pub fn cat_curve(alpha: f64, kappa: f64, t_max: f64, samples: usize) -> std::result::Result<CatCurve, JsError> {
    compute_cat_curve(alpha, kappa, t_max, samples).map_err(to_js)
}
