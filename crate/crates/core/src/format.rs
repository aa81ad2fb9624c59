//! Fixed float formatting for tabular output.

/// Twelve significant digits in scientific notation, stable across runs.
pub fn sig12(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.11e}")
    } else {
        x.to_string()
    }
}
