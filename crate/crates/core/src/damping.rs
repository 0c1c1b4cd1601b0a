//! Gaussian coherence damping exp(−rate · t · separation²).
//!
//! The same kernel describes spatial coherence under scattering and the
//! coherence between superposed gravitational field strengths; both modules
//! call this function so the two agree bit for bit.

/// exp(−rate · t · separation²). Callers validate their own domains.
#[inline]
pub fn gaussian_damping(rate: f64, t: f64, separation: f64) -> f64 {
    (-rate * t * separation * separation).exp()
}

/// Separation at which [`gaussian_damping`] reaches e⁻¹: (rate · t)^{-1/2}.
#[inline]
pub fn coherence_width(rate_times_t: f64) -> f64 {
    rate_times_t.sqrt().recip()
}
