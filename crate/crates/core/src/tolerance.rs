//! Numerical tolerances shared by every module.
//!
//! All closed forms in this crate are exact, so residuals only measure
//! floating-point rounding. Quantities whose magnitude grows (powers of
//! loxodromic elements, traces of long words) are compared relative to
//! their scale; see [`scaled`].

/// Structural identities: `R² = I`, `M* J M = J`, normalization of polars.
pub const EPS_FORM: f64 = 1e-10;

/// Band around zero for the trace discriminant and for certificate margins.
pub const EPS_CLASS: f64 = 1e-9;

/// Slack on geometric comparisons made by the orbit oracle.
pub const EPS_GEO: f64 = 1e-8;

/// Tolerance `eps` scaled to a quantity of magnitude `scale`, never below `eps`.
pub fn scaled(eps: f64, scale: f64) -> f64 {
    eps * scale.abs().max(1.0)
}
