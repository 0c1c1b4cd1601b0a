use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{require, Error, Result};
use crate::{tolerances, C64};

/// Uniform grid of `n_points` positions from `x_min` to `x_max` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub n_points: usize,
}

impl GridSpec {
    pub fn new(x_min: f64, x_max: f64, n_points: usize) -> Result<Self> {
        let g = Self { x_min, x_max, n_points };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        require(self.n_points >= 8, || {
            Error::Configuration(format!("grid needs at least 8 points, got {}", self.n_points))
        })?;
        require(self.x_min.is_finite() && self.x_max.is_finite() && self.x_max > self.x_min, || {
            Error::Configuration(format!("grid bounds [{}, {}] are not increasing", self.x_min, self.x_max))
        })
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n_points - 1) as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x_min + i as f64 * self.dx()
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n_points).map(|i| self.x(i)).collect()
    }

    pub fn length(&self) -> f64 {
        self.x_max - self.x_min
    }
}

/// ρ(xᵢ, xⱼ) on a [`GridSpec`], normalized so that Σᵢ ρᵢᵢ Δx = 1.
#[derive(Debug, Clone, PartialEq)]
pub struct GridDensityMatrix {
    grid: GridSpec,
    values: DMatrix<C64>,
}

impl GridDensityMatrix {
    pub fn new(grid: GridSpec, values: DMatrix<C64>) -> Result<Self> {
        let rho = Self::unchecked(grid, values)?;
        rho.validate()?;
        Ok(rho)
    }

    pub(crate) fn unchecked(grid: GridSpec, values: DMatrix<C64>) -> Result<Self> {
        grid.validate()?;
        require(values.nrows() == grid.n_points && values.ncols() == grid.n_points, || {
            Error::Shape(format!("{}x{} values on a {}-point grid", values.nrows(), values.ncols(), grid.n_points))
        })?;
        Ok(Self { grid, values })
    }

    /// ρ = |ψ⟩⟨ψ| with ψ rescaled so that Σ|ψᵢ|² Δx = 1.
    pub fn from_wavefunction(grid: GridSpec, psi: &[C64]) -> Result<Self> {
        grid.validate()?;
        require(psi.len() == grid.n_points, || {
            Error::Shape(format!("{} amplitudes on a {}-point grid", psi.len(), grid.n_points))
        })?;
        let norm_sqr: f64 = psi.iter().map(|a| a.norm_sqr()).sum::<f64>() * grid.dx();
        require(norm_sqr > 0.0 && norm_sqr.is_finite(), || {
            Error::InvalidState("wavefunction vanishes on the grid".into())
        })?;
        let scale = norm_sqr.sqrt().recip();
        let psi: Vec<C64> = psi.iter().map(|a| a * scale).collect();
        let n = grid.n_points;
        let values = DMatrix::from_fn(n, n, |i, j| psi[i] * psi[j].conj());
        Self::new(grid, values)
    }

    /// Gaussian packet ψ ∝ exp(−(x − x₀)²/(4σ²) + i p₀ x).
    pub fn gaussian_packet(grid: GridSpec, x0: f64, p0: f64, sigma: f64) -> Result<Self> {
        require(sigma > 0.0, || Error::Configuration(format!("packet width {sigma} must be positive")))?;
        let psi: Vec<C64> = grid.points().iter().map(|&x| packet(x, x0, p0, sigma)).collect();
        Self::from_wavefunction(grid, &psi)
    }

    /// Two packets of width σ centred at ±d/2 with relative phase φ.
    pub fn two_packet(grid: GridSpec, separation: f64, phase: f64, sigma: f64) -> Result<Self> {
        require(sigma > 0.0, || Error::Configuration(format!("packet width {sigma} must be positive")))?;
        let rel = C64::from_polar(1.0, phase);
        let psi: Vec<C64> = grid
            .points()
            .iter()
            .map(|&x| packet(x, -separation / 2.0, 0.0, sigma) + rel * packet(x, separation / 2.0, 0.0, sigma))
            .collect();
        Self::from_wavefunction(grid, &psi)
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn values(&self) -> &DMatrix<C64> {
        &self.values
    }

    pub fn into_values(self) -> DMatrix<C64> {
        self.values
    }

    pub fn validate(&self) -> Result<()> {
        let h = self.hermiticity_defect();
        require(h <= tolerances::GRID_HERMITIAN, || Error::InvalidState(format!("Hermiticity defect {h:e}")))?;
        let tr = self.trace();
        require((tr.re - 1.0).abs() <= tolerances::GRID_TRACE && tr.im.abs() <= tolerances::GRID_TRACE, || {
            Error::InvalidState(format!("trace {tr} differs from 1"))
        })?;
        if let Some(detail) = self.boundary_leak() {
            return Err(Error::InvalidState(detail));
        }
        Ok(())
    }

    /// Σᵢ ρᵢᵢ Δx.
    pub fn trace(&self) -> C64 {
        self.values.diagonal().sum() * self.grid.dx()
    }

    /// Σᵢⱼ |ρᵢⱼ|² Δx².
    pub fn purity(&self) -> f64 {
        self.values.norm_squared() * self.grid.dx().powi(2)
    }

    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.values.nrows();
        let mut worst = 0.0f64;
        for j in 0..n {
            for i in 0..=j {
                worst = worst.max((self.values[(i, j)] - self.values[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Description of the offending edge if the density there exceeds the
    /// boundary tolerance relative to the peak.
    pub fn boundary_leak(&self) -> Option<String> {
        let n = self.values.nrows();
        let peak = (0..n).map(|i| self.values[(i, i)].re).fold(0.0, f64::max);
        let left = self.values[(0, 0)].re.abs();
        let right = self.values[(n - 1, n - 1)].re.abs();
        let limit = tolerances::GRID_BOUNDARY * peak;
        if left > limit || right > limit {
            Some(format!(
                "edge density {:e} exceeds {:e} of the peak {:e}",
                left.max(right),
                tolerances::GRID_BOUNDARY,
                peak
            ))
        } else {
            None
        }
    }

    /// Largest |ρ(x, x′)| on the mirror line x′ = x_min + x_max − x, which for
    /// a two-packet state centred on the grid passes through the interference
    /// term of the two branches.
    pub fn off_diagonal_peak(&self) -> f64 {
        let n = self.values.nrows();
        (0..n / 2).map(|i| self.values[(i, n - 1 - i)].norm()).fold(0.0, f64::max)
    }

    /// Smallest eigenvalue of the operator ρ Δx.
    pub fn min_eigenvalue(&self) -> f64 {
        crate::quantum::min_eigenvalue(&(self.values.clone() * C64::from(self.grid.dx())))
    }
}

fn packet(x: f64, x0: f64, p0: f64, sigma: f64) -> C64 {
    C64::from_polar((-(x - x0).powi(2) / (4.0 * sigma * sigma)).exp(), p0 * x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> GridSpec {
        GridSpec::new(-8.0, 8.0, 128).unwrap()
    }

    #[test]
    fn spec_checks() {
        assert!(GridSpec::new(0.0, 1.0, 7).is_err());
        assert!(GridSpec::new(1.0, 1.0, 16).is_err());
        let g = GridSpec::new(-1.0, 1.0, 9).unwrap();
        assert_eq!(g.dx(), 0.25);
        assert_eq!(g.x(8), 1.0);
    }

    #[test]
    fn packet_is_valid() {
        let rho = GridDensityMatrix::gaussian_packet(grid(), 0.5, 1.0, 1.0).unwrap();
        assert!((rho.trace().re - 1.0).abs() < 1e-14);
        assert!((rho.purity() - 1.0).abs() < 1e-12);
        assert_eq!(rho.hermiticity_defect(), 0.0);
        assert!(rho.min_eigenvalue() > -1e-12);
    }

    #[test]
    fn packet_touching_the_edge_is_rejected() {
        let err = GridDensityMatrix::gaussian_packet(grid(), 6.0, 0.0, 1.0).unwrap_err();
        assert!(matches!(err, Error::InvalidState(_)));
    }

    #[test]
    fn two_packet_coherence_sits_on_the_mirror_line() {
        let rho = GridDensityMatrix::two_packet(grid(), 6.0, 0.0, 0.5).unwrap();
        let peak = rho.off_diagonal_peak();
        let diag = (0..128).map(|i| rho.values()[(i, i)].re).fold(0.0, f64::max);
        assert!((peak / diag - 1.0).abs() < 1e-2);
    }
}
