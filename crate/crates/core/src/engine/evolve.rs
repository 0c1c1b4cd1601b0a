use nalgebra::DMatrix;
use serde::Serialize;

use super::{moments, Equation, EvolutionParams, GridDensityMatrix, GridSpec, Scheme};
use crate::error::{Error, Result};
use crate::{tolerances, C64};

/// Step-by-step integrator for one run.
///
/// Derivatives use three-point central differences with zero values beyond
/// the grid, which keeps the discrete Liouvillian exactly trace-free and
/// Hermiticity-preserving.
#[derive(Debug, Clone)]
pub struct Evolver {
    grid: GridSpec,
    params: EvolutionParams,
    equation: Equation,
    lambda: f64,
    /// 1/(2m), zero for infinite mass.
    kinetic: f64,
    /// Λ (xᵢ − xⱼ)².
    decay: DMatrix<f64>,
    /// γ (xᵢ − xⱼ).
    friction: DMatrix<f64>,
    /// exp(−Λ (dt/2)(xᵢ − xⱼ)²) for the split scheme.
    half_damping: DMatrix<f64>,
    rho: DMatrix<C64>,
    step: usize,
    scratch: Option<Box<[DMatrix<C64>; 5]>>,
}

impl Evolver {
    pub fn new(rho0: &GridDensityMatrix, params: EvolutionParams, equation: Equation) -> Result<Self> {
        rho0.validate()?;
        let grid = *rho0.grid();
        params.validate(&grid, equation)?;
        let n = grid.n_points;
        let lambda = params.effective_lambda(equation);
        let gamma = params.effective_gamma(equation);
        let x = grid.points();
        let decay = DMatrix::from_fn(n, n, |i, j| lambda * (x[i] - x[j]).powi(2));
        let friction = DMatrix::from_fn(n, n, |i, j| gamma * (x[i] - x[j]));
        let half_damping = decay.map(|d| (-0.5 * params.dt * d).exp());
        let zeros = DMatrix::zeros(n, n);
        Ok(Self {
            grid,
            params,
            equation,
            lambda,
            kinetic: if params.mass.is_infinite() { 0.0 } else { 0.5 / params.mass },
            decay,
            friction,
            half_damping,
            rho: rho0.values().clone(),
            step: 0,
            scratch: Some(Box::new(std::array::from_fn(|_| zeros.clone()))),
        })
    }

    pub fn equation(&self) -> Equation {
        self.equation
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn step_index(&self) -> usize {
        self.step
    }

    pub fn time(&self) -> f64 {
        self.step as f64 * self.params.dt
    }

    pub fn values(&self) -> &DMatrix<C64> {
        &self.rho
    }

    pub fn state(&self) -> GridDensityMatrix {
        GridDensityMatrix::unchecked(self.grid, self.rho.clone()).expect("grid shape fixed at construction")
    }

    /// Advance one time step, failing if density reaches the grid edge.
    pub fn step(&mut self) -> Result<()> {
        match self.params.scheme {
            Scheme::Rk4 => self.rk4(true),
            Scheme::SplitRk4 => {
                self.rho.component_mul_assign(&self.half_damping.map(C64::from));
                self.rk4(false);
                self.rho.component_mul_assign(&self.half_damping.map(C64::from));
            }
        }
        self.step += 1;
        let state = GridDensityMatrix::unchecked(self.grid, std::mem::take(&mut self.rho))?;
        let leak = state.boundary_leak();
        self.rho = state.into_values();
        match leak {
            Some(detail) => Err(Error::DomainEscape { step: self.step, detail }),
            None => Ok(()),
        }
    }

    fn rk4(&mut self, with_decay: bool) {
        let dt = self.params.dt;
        let mut scratch = self.scratch.take().expect("scratch buffers present between steps");
        let [k1, k2, k3, k4, tmp] = &mut *scratch;
        let stage = |tmp: &mut DMatrix<C64>, rho: &DMatrix<C64>, k: &DMatrix<C64>, h: f64| {
            for ((t, r), k) in tmp.iter_mut().zip(rho.iter()).zip(k.iter()) {
                *t = r + k * h;
            }
        };
        self.rhs(&self.rho, k1, with_decay);
        stage(tmp, &self.rho, k1, dt / 2.0);
        self.rhs(tmp, k2, with_decay);
        stage(tmp, &self.rho, k2, dt / 2.0);
        self.rhs(tmp, k3, with_decay);
        stage(tmp, &self.rho, k3, dt);
        self.rhs(tmp, k4, with_decay);
        let w = dt / 6.0;
        for idx in 0..self.rho.len() {
            self.rho[idx] += (k1[idx] + (k2[idx] + k3[idx]) * 2.0 + k4[idx]) * w;
        }
        self.scratch = Some(scratch);
    }

    fn rhs(&self, rho: &DMatrix<C64>, out: &mut DMatrix<C64>, with_decay: bool) {
        let n = self.grid.n_points;
        let dx = self.grid.dx();
        // −i/(2m)(ρD − Dρ): the centre terms of the two Laplacians cancel.
        let kin = C64::new(0.0, -self.kinetic / (dx * dx));
        let decay_on = if with_decay { 1.0 } else { 0.0 };
        let inv_2dx = 0.5 / dx;
        let zero = C64::new(0.0, 0.0);
        let zeros = vec![zero; n];
        let r = rho.as_slice();
        let o = out.as_mut_slice();
        let decay = self.decay.as_slice();
        let friction = self.friction.as_slice();
        for j in 0..n {
            let col = &r[j * n..(j + 1) * n];
            let left = if j > 0 { &r[(j - 1) * n..j * n] } else { &zeros[..] };
            let right = if j + 1 < n { &r[(j + 1) * n..(j + 2) * n] } else { &zeros[..] };
            let dec = &decay[j * n..(j + 1) * n];
            let fr = &friction[j * n..(j + 1) * n];
            let cell = |i: usize, up: C64, down: C64| {
                kin * (right[i] + left[i] - up - down) - col[i] * (dec[i] * decay_on)
                    // γ (x − x′)(ρGᵀ − Gρ)
                    + ((right[i] - left[i]) - (up - down)) * (inv_2dx * fr[i])
            };
            let out_col = &mut o[j * n..(j + 1) * n];
            out_col[0] = cell(0, col[1], zero);
            for i in 1..n - 1 {
                out_col[i] = cell(i, col[i + 1], col[i - 1]);
            }
            out_col[n - 1] = cell(n - 1, zero, col[n - 2]);
        }
    }
}

/// One recorded instant of a run.
#[derive(Debug, Clone)]
pub struct Snapshot {
    pub step: usize,
    pub t: f64,
    pub rho: GridDensityMatrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SummaryRow {
    pub step: usize,
    pub t: f64,
    pub trace: f64,
    pub purity: f64,
    pub x: f64,
    pub p: f64,
    pub x2: f64,
    pub p2: f64,
    pub off_diagonal_peak: f64,
    pub min_eigenvalue: f64,
    pub hermiticity_defect: f64,
}

/// A negative eigenvalue seen during a Caldeira–Leggett run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PositivityExcursion {
    pub step: usize,
    pub t: f64,
    pub min_eigenvalue: f64,
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub equation: Equation,
    pub grid: GridSpec,
    pub params: EvolutionParams,
    /// Λ actually used, after the Caldeira–Leggett default is applied.
    pub lambda: f64,
    pub snapshots: Vec<Snapshot>,
    pub summary: Vec<SummaryRow>,
    pub positivity_excursions: Vec<PositivityExcursion>,
}

impl Trajectory {
    pub fn final_state(&self) -> &GridDensityMatrix {
        &self.snapshots.last().expect("trajectory records the initial state").rho
    }
}

fn summarize(step: usize, t: f64, rho: &GridDensityMatrix) -> SummaryRow {
    let m = moments(rho);
    SummaryRow {
        step,
        t,
        trace: rho.trace().re,
        purity: rho.purity(),
        x: m.x,
        p: m.p,
        x2: m.x2,
        p2: m.p2,
        off_diagonal_peak: rho.off_diagonal_peak(),
        min_eigenvalue: rho.min_eigenvalue(),
        hermiticity_defect: rho.hermiticity_defect(),
    }
}

fn run(rho0: &GridDensityMatrix, params: EvolutionParams, equation: Equation) -> Result<Trajectory> {
    let mut ev = Evolver::new(rho0, params, equation)?;
    let mut traj = Trajectory {
        equation,
        grid: *rho0.grid(),
        params,
        lambda: ev.lambda(),
        snapshots: Vec::new(),
        summary: Vec::new(),
        positivity_excursions: Vec::new(),
    };
    let record = |ev: &Evolver, traj: &mut Trajectory| -> Result<()> {
        let state = ev.state();
        let row = summarize(ev.step_index(), ev.time(), &state);
        if row.min_eigenvalue < tolerances::GRID_POSITIVITY {
            match equation {
                Equation::PureDecoherence => {
                    return Err(Error::Domain(format!(
                        "eigenvalue {:e} at step {} in a positivity-preserving run",
                        row.min_eigenvalue, row.step
                    )))
                }
                Equation::CaldeiraLeggett => traj.positivity_excursions.push(PositivityExcursion {
                    step: row.step,
                    t: row.t,
                    min_eigenvalue: row.min_eigenvalue,
                }),
            }
        }
        traj.summary.push(row);
        traj.snapshots.push(Snapshot { step: row.step, t: row.t, rho: state });
        Ok(())
    };
    record(&ev, &mut traj)?;
    for s in 1..=params.steps {
        ev.step()?;
        if s % params.record_every == 0 || s == params.steps {
            record(&ev, &mut traj)?;
        }
    }
    Ok(traj)
}

/// Integrate the pure-decoherence equation (γ is ignored).
pub fn evolve_pure_decoherence(rho0: &GridDensityMatrix, params: EvolutionParams) -> Result<Trajectory> {
    run(rho0, params, Equation::PureDecoherence)
}

/// Integrate the Caldeira–Leggett equation; Λ defaults to m γ T.
pub fn evolve_caldeira_leggett(rho0: &GridDensityMatrix, params: EvolutionParams) -> Result<Trajectory> {
    run(rho0, params, Equation::CaldeiraLeggett)
}
