//! Coherent states and Schrödinger-cat field states of a single cavity mode.
//!
//! Fock-space states are truncated at a photon-number cutoff. The cat's
//! decoherence under cavity damping is handled exactly in the two-component
//! sector spanned by |α⟩ and |−α⟩, where a damping rate κ acting for time t
//! shrinks the amplitude to α e^{−κt/2} and multiplies the cross terms by
//! d(t) = exp(−2|α|²(1 − e^{−κt})).

use std::io::Write;

use nalgebra::{DMatrix, DVector, Matrix2};
use serde::Serialize;

use crate::csvfmt::f;
use crate::error::{require, Error, Result};
use crate::{tolerances, C64};

/// Normalized state over photon numbers 0..=cutoff.
#[derive(Debug, Clone, PartialEq)]
pub struct FockState {
    amplitudes: DVector<C64>,
}

impl FockState {
    pub fn new(amplitudes: DVector<C64>) -> Result<Self> {
        require(amplitudes.len() >= 5, || {
            Error::Truncation(format!("cutoff {} below 4", amplitudes.len().saturating_sub(1)))
        })?;
        let norm_sqr = amplitudes.norm_squared();
        require((norm_sqr - 1.0).abs() <= tolerances::FOCK_NORM, || {
            Error::InvalidState(format!("squared norm {norm_sqr} differs from 1"))
        })?;
        let tail = amplitudes[amplitudes.len() - 1].norm_sqr();
        require(tail < tolerances::FOCK_TAIL, || {
            Error::Truncation(format!("population {tail:e} in the top Fock level"))
        })?;
        Ok(Self { amplitudes })
    }

    pub fn cutoff(&self) -> usize {
        self.amplitudes.len() - 1
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amplitudes
    }

    pub fn inner(&self, other: &FockState) -> C64 {
        let n = self.amplitudes.len().min(other.amplitudes.len());
        self.amplitudes.rows(0, n).dotc(&other.amplitudes.rows(0, n))
    }

    pub fn mean_photon_number(&self) -> f64 {
        self.amplitudes.iter().enumerate().map(|(n, a)| n as f64 * a.norm_sqr()).sum()
    }
}

/// Smallest cutoff allowed for amplitude α: |α|² + 6√(|α|²+1), at least 4.
pub fn minimum_cutoff(alpha: C64) -> usize {
    let n = alpha.norm_sqr();
    ((n + 6.0 * (n + 1.0).sqrt()).ceil() as usize).max(4)
}

/// Smallest cutoff that satisfies [`minimum_cutoff`] and leaves less than
/// the tail tolerance in the top level of both |α⟩ and the cat built from
/// it, whose level populations are at most twice those of |α⟩.
pub fn mandated_cutoff(alpha: C64) -> usize {
    let mut cutoff = minimum_cutoff(alpha);
    while 2.0 * poisson_weight(alpha.norm_sqr(), cutoff) >= tolerances::FOCK_TAIL {
        cutoff += 1;
    }
    cutoff
}

fn poisson_weight(mean: f64, n: usize) -> f64 {
    if mean == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    let ln_fact: f64 = (1..=n).map(|k| (k as f64).ln()).sum();
    (n as f64 * mean.ln() - mean - ln_fact).exp()
}

/// e^{−|α|²/2} αⁿ/√n! for n ≤ cutoff, without renormalization.
fn coherent_amplitudes(alpha: C64, cutoff: usize) -> DVector<C64> {
    let mut a = DVector::zeros(cutoff + 1);
    a[0] = C64::new((-0.5 * alpha.norm_sqr()).exp(), 0.0);
    for n in 1..=cutoff {
        a[n] = a[n - 1] * alpha / (n as f64).sqrt();
    }
    a
}

fn check_cutoff(alpha: C64, cutoff: usize) -> Result<()> {
    let min = minimum_cutoff(alpha);
    require(cutoff >= min, || {
        Error::Truncation(format!("cutoff {cutoff} below {min} required for |alpha|^2 = {}", alpha.norm_sqr()))
    })
}

/// Truncated, renormalized coherent state |α⟩.
pub fn coherent_state(alpha: C64, cutoff: usize) -> Result<FockState> {
    check_cutoff(alpha, cutoff)?;
    let a = coherent_amplitudes(alpha, cutoff);
    let norm = a.norm();
    FockState::new(a / C64::from(norm))
}

/// Closed-form ⟨α|β⟩ = exp(−(|α|² + |β|²)/2 + ᾱβ).
pub fn coherent_overlap(alpha: C64, beta: C64) -> C64 {
    (-(alpha.norm_sqr() + beta.norm_sqr()) / 2.0 + alpha.conj() * beta).exp()
}

/// Amplitude and truncation of an even cat N(|α⟩ + |−α⟩).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CatSpec {
    pub alpha_re: f64,
    pub alpha_im: f64,
    pub cutoff: usize,
}

impl CatSpec {
    pub fn new(alpha: C64, cutoff: usize) -> Result<Self> {
        check_cutoff(alpha, cutoff)?;
        Ok(Self { alpha_re: alpha.re, alpha_im: alpha.im, cutoff })
    }

    pub fn with_mandated_cutoff(alpha: C64) -> Self {
        Self { alpha_re: alpha.re, alpha_im: alpha.im, cutoff: mandated_cutoff(alpha) }
    }

    pub fn alpha(&self) -> C64 {
        C64::new(self.alpha_re, self.alpha_im)
    }
}

/// N = [2(1 + e^{−2|α|²})]^{−1/2}.
pub fn cat_normalization(alpha: C64) -> f64 {
    (2.0 * (1.0 + (-2.0 * alpha.norm_sqr()).exp())).sqrt().recip()
}

pub fn cat_state(spec: &CatSpec) -> Result<FockState> {
    let alpha = spec.alpha();
    check_cutoff(alpha, spec.cutoff)?;
    let sum = coherent_amplitudes(alpha, spec.cutoff) + coherent_amplitudes(-alpha, spec.cutoff);
    let norm = sum.norm();
    FockState::new(sum / C64::from(norm))
}

/// Density operator Σ r_ab |a⟩⟨b| with a, b ∈ {|α⟩, |−α⟩}.
///
/// The frame is not orthogonal: the trace is r₀₀ + r₁₁ + 2 Re(r₀₁ ⟨−α|α⟩).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatSector {
    pub alpha: C64,
    pub coefficients: Matrix2<C64>,
}

impl CatSector {
    pub fn pure_cat(alpha: C64) -> Self {
        let n2 = C64::from(cat_normalization(alpha).powi(2));
        Self { alpha, coefficients: Matrix2::from_element(n2) }
    }

    /// ½(|α⟩⟨α| + |−α⟩⟨−α|).
    pub fn mixture(alpha: C64) -> Self {
        Self { alpha, coefficients: Matrix2::from_diagonal_element(C64::from(0.5)) }
    }

    pub fn trace(&self) -> f64 {
        let s = coherent_overlap(-self.alpha, self.alpha);
        let r = &self.coefficients;
        (r[(0, 0)] + r[(1, 1)] + r[(0, 1)] * s + r[(1, 0)] * s.conj()).re
    }

    /// The sector operator written out in the Fock basis up to `cutoff`.
    pub fn to_fock(&self, cutoff: usize) -> DMatrix<C64> {
        let w =
            DMatrix::from_columns(&[coherent_amplitudes(self.alpha, cutoff), coherent_amplitudes(-self.alpha, cutoff)]);
        let r = DMatrix::from_fn(2, 2, |i, j| self.coefficients[(i, j)]);
        &w * r * w.adjoint()
    }
}

/// Cross-term factor d(t) = exp(−2|α|²(1 − e^{−κt})).
pub fn cat_decoherence_factor(alpha: C64, kappa: f64, t: f64) -> f64 {
    (-2.0 * alpha.norm_sqr() * (-(kappa * t)).exp_m1().abs()).exp()
}

/// Cavity damping at rate κ for time t applied to a two-component state.
pub fn cat_dephase(rho: &CatSector, kappa: f64, t: f64) -> Result<CatSector> {
    require(t >= 0.0, || Error::Domain(format!("negative time {t}")))?;
    require(kappa >= 0.0, || Error::Domain(format!("negative damping rate {kappa}")))?;
    let d = C64::from(cat_decoherence_factor(rho.alpha, kappa, t));
    let mut coefficients = rho.coefficients;
    coefficients[(0, 1)] *= d;
    coefficients[(1, 0)] *= d;
    Ok(CatSector { alpha: rho.alpha * (-0.5 * kappa * t).exp(), coefficients })
}

/// |r₀₁| / √(r₀₀ r₁₁): 1 for the pure cat, 0 for the equal mixture.
pub fn fringe_visibility(rho: &CatSector) -> f64 {
    let r = &rho.coefficients;
    let diag = (r[(0, 0)].re * r[(1, 1)].re).sqrt();
    if diag > 0.0 {
        (r[(0, 1)].norm() / diag).min(1.0)
    } else {
        0.0
    }
}

/// Time at which d(t) = e⁻¹; `None` when 2|α|² ≤ 1 and d never gets there.
pub fn coherence_time(alpha: C64, kappa: f64) -> Option<f64> {
    let x = 1.0 / (2.0 * alpha.norm_sqr());
    (x < 1.0 && kappa > 0.0).then(|| -(-x).ln_1p() / kappa)
}

/// Visibility curve t, visibility, dFactor at `samples` evenly spaced times
/// in [0, t_max], starting from the pure cat.
pub fn visibility_curve(alpha: C64, kappa: f64, t_max: f64, samples: usize) -> Result<Vec<(f64, f64, f64)>> {
    require(samples >= 2, || Error::Configuration("need at least two samples".into()))?;
    let cat = CatSector::pure_cat(alpha);
    (0..samples)
        .map(|i| {
            let t = t_max * i as f64 / (samples - 1) as f64;
            let rho = cat_dephase(&cat, kappa, t)?;
            Ok((t, fringe_visibility(&rho), cat_decoherence_factor(alpha, kappa, t)))
        })
        .collect()
}

pub fn write_visibility_csv<W: Write>(curve: &[(f64, f64, f64)], w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["t", "visibility", "dFactor"])?;
    for &(t, v, d) in curve {
        out.write_record([f(t), f(v), f(d)])?;
    }
    out.flush()?;
    Ok(())
}
