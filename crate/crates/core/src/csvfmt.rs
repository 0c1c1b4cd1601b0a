//! Number formatting shared by the CSV exporters.

/// 17 significant digits, enough to round-trip any f64.
pub(crate) fn f(x: f64) -> String {
    format!("{x:.16e}")
}
