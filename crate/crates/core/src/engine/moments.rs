use serde::Serialize;

use super::GridDensityMatrix;

/// First and second moments of position and momentum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Moments {
    pub x: f64,
    pub p: f64,
    pub x2: f64,
    pub p2: f64,
    /// Largest imaginary part among the four traces.
    pub imaginary_residue: f64,
}

impl Moments {
    pub fn variance_x(&self) -> f64 {
        self.x2 - self.x * self.x
    }

    pub fn variance_p(&self) -> f64 {
        self.p2 - self.p * self.p
    }
}

/// Momentum moments come from tr(Pρ) and tr(P²ρ) with P = −i∂ₓ and P² = −∂ₓ²
/// discretized by the same central differences as the evolution engine.
pub fn moments(rho: &GridDensityMatrix) -> Moments {
    let v = rho.values();
    let grid = rho.grid();
    let n = grid.n_points;
    let dx = grid.dx();
    let at = |i: isize, j: usize| {
        if i < 0 || i as usize >= n {
            crate::C64::new(0.0, 0.0)
        } else {
            v[(i as usize, j)]
        }
    };
    let (mut x, mut x2) = (0.0, 0.0);
    let mut p = crate::C64::new(0.0, 0.0);
    let mut p2 = crate::C64::new(0.0, 0.0);
    let mut diag_imag = 0.0f64;
    for i in 0..n {
        let xi = grid.x(i);
        let d = v[(i, i)];
        x += xi * d.re;
        x2 += xi * xi * d.re;
        diag_imag = diag_imag.max(d.im.abs());
        let ii = i as isize;
        // (Gρ)ᵢᵢ and (Dρ)ᵢᵢ
        let g = (at(ii + 1, i) - at(ii - 1, i)) / (2.0 * dx);
        let lap = (at(ii + 1, i) + at(ii - 1, i) - d * 2.0) / (dx * dx);
        p += crate::C64::new(0.0, -1.0) * g;
        p2 -= lap;
    }
    Moments {
        x: x * dx,
        p: p.re * dx,
        x2: x2 * dx,
        p2: p2.re * dx,
        imaginary_residue: (diag_imag * dx).max(p.im.abs() * dx).max(p2.im.abs() * dx),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::GridSpec;

    #[test]
    fn standing_packet_is_centred() {
        let g = GridSpec::new(-8.0, 8.0, 129).unwrap();
        let m = moments(&GridDensityMatrix::gaussian_packet(g, 0.0, 0.0, 1.0).unwrap());
        assert!(m.x.abs() < 1e-14);
        assert!(m.p.abs() < 1e-14);
        assert!(m.imaginary_residue < 1e-8);
    }

    #[test]
    fn gaussian_width_and_momentum() {
        let g = GridSpec::new(-10.0, 10.0, 321).unwrap();
        let m = moments(&GridDensityMatrix::gaussian_packet(g, 0.0, 1.0, 1.3).unwrap());
        assert!((m.x2 - 1.69).abs() < 1e-10);
        assert!((m.p - 1.0).abs() < 1e-3);
        // ⟨p²⟩ = p₀² + 1/(4σ²) up to O(dx²).
        assert!((m.p2 - (1.0 + 1.0 / (4.0 * 1.69))).abs() < 1e-2);
        assert!(m.imaginary_residue < 1e-8);
    }
}
