use serde::Serialize;

use super::GridSpec;
use crate::error::{Error, Result};
use crate::tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Equation {
    PureDecoherence,
    CaldeiraLeggett,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    /// Classical RK4 on the full right-hand side.
    #[default]
    Rk4,
    /// Exact half-step Gaussian damping around an RK4 step of the rest.
    SplitRk4,
}

/// Natural units throughout (ħ = k_B = 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvolutionParams {
    /// Particle mass; `f64::INFINITY` switches the kinetic term off.
    pub mass: f64,
    /// Localization rate Λ. For Caldeira–Leggett runs `None` means m γ T.
    pub lambda: Option<f64>,
    /// Friction constant γ; ignored by pure-decoherence runs.
    pub gamma: f64,
    pub temperature: f64,
    pub dt: f64,
    pub steps: usize,
    /// Summary rows and snapshots are kept every this many steps.
    pub record_every: usize,
    pub scheme: Scheme,
}

impl Default for EvolutionParams {
    fn default() -> Self {
        Self {
            mass: 1.0,
            lambda: None,
            gamma: 0.0,
            temperature: 0.0,
            dt: 1e-3,
            steps: 1000,
            record_every: 10,
            scheme: Scheme::Rk4,
        }
    }
}

impl EvolutionParams {
    pub fn effective_lambda(&self, equation: Equation) -> f64 {
        match (equation, self.lambda) {
            (_, Some(l)) => l,
            (Equation::PureDecoherence, None) => 0.0,
            (Equation::CaldeiraLeggett, None) => self.mass * self.gamma * self.temperature,
        }
    }

    pub fn effective_gamma(&self, equation: Equation) -> f64 {
        match equation {
            Equation::PureDecoherence => 0.0,
            Equation::CaldeiraLeggett => self.gamma,
        }
    }

    /// Every violated precondition, in a stable order.
    pub fn diagnostics(&self, grid: &GridSpec, equation: Equation) -> Vec<Error> {
        let mut out = Vec::new();
        if let Err(e) = grid.validate() {
            out.push(e);
            return out;
        }
        let mut fail = |msg: String| out.push(Error::Configuration(msg));
        if self.mass.is_nan() || self.mass <= 0.0 {
            fail(format!("mass must be positive, got {}", self.mass));
        }
        if equation == Equation::CaldeiraLeggett && self.mass.is_infinite() && self.lambda.is_none() {
            fail("Caldeira-Leggett runs need a finite mass unless lambda is given".into());
        }
        for (name, v) in [("gamma", self.gamma), ("temperature", self.temperature)] {
            if !(v >= 0.0 && v.is_finite()) {
                fail(format!("{name} must be non-negative, got {v}"));
            }
        }
        if let Some(l) = self.lambda {
            if !(l >= 0.0 && l.is_finite()) {
                fail(format!("lambda must be non-negative, got {l}"));
            }
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            fail(format!("dt must be positive, got {}", self.dt));
        }
        if self.steps == 0 {
            fail("steps must be at least 1".into());
        }
        if self.record_every == 0 {
            fail("record_every must be at least 1".into());
        }
        if !out.is_empty() {
            return out;
        }

        let dx = grid.dx();
        let bound = tolerances::GRID_STABILITY * self.mass * dx * dx;
        if self.dt > bound {
            out.push(Error::Configuration(format!(
                "dt = {} exceeds the stability bound {}·m·dx² = {bound:e}",
                self.dt,
                tolerances::GRID_STABILITY
            )));
        }
        let l = grid.length();
        let lambda = self.effective_lambda(equation);
        if self.scheme == Scheme::Rk4 && self.dt * lambda * l * l > tolerances::RK4_STABILITY {
            out.push(Error::Configuration(format!(
                "dt·lambda·L² = {:e} exceeds {}; reduce dt or use the split scheme",
                self.dt * lambda * l * l,
                tolerances::RK4_STABILITY
            )));
        }
        let friction = self.dt * 2.0 * self.effective_gamma(equation) * l / dx;
        if friction > tolerances::RK4_STABILITY {
            out.push(Error::Configuration(format!(
                "dt·2·gamma·L/dx = {friction:e} exceeds {}",
                tolerances::RK4_STABILITY
            )));
        }
        out
    }

    pub fn validate(&self, grid: &GridSpec, equation: Equation) -> Result<()> {
        match self.diagnostics(grid, equation).into_iter().next() {
            Some(e) => Err(e),
            None => Ok(()),
        }
    }
}
