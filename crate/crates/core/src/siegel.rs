//! The asymptotic case `m₃ = 0` in the Siegel domain.
//!
//! The boundary of the Siegel domain minus `∞` is the Heisenberg group. `R₃`
//! is the reflection in the unit chain, which swaps the inside and the outside
//! of the unit Cygan sphere `S`, while `R₂R₁` is a Heisenberg translation.

use std::f64::consts::{PI, SQRT_2};
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::certify::{decide, Verdict};
use crate::error::{Error, Result};
use crate::hermitian::{cvec, ComplexMatrix3, ComplexVector3, HermitianModel, IsometryMatrix};
use crate::tolerance::EPS_FORM;
use crate::triangle::fold_angle;

const SIEGEL: HermitianModel = HermitianModel::Siegel;

/// A point `[ζ, t]` of the Heisenberg group `ℂ × ℝ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HeisenbergPoint {
    pub zeta: Complex64,
    pub t: f64,
}

impl HeisenbergPoint {
    pub const ORIGIN: HeisenbergPoint = HeisenbergPoint { zeta: Complex64::new(0., 0.), t: 0. };

    pub fn new(zeta: Complex64, t: f64) -> Self {
        HeisenbergPoint { zeta, t }
    }

    /// `[ζ₁, t₁] ∗ [ζ₂, t₂] = [ζ₁ + ζ₂, t₁ + t₂ + 2 Im(ζ₁ ζ̄₂)]`.
    pub fn compose(&self, other: &HeisenbergPoint) -> HeisenbergPoint {
        HeisenbergPoint { zeta: self.zeta + other.zeta, t: self.t + other.t + 2. * (self.zeta * other.zeta.conj()).im }
    }

    pub fn inverse(&self) -> HeisenbergPoint {
        HeisenbergPoint { zeta: -self.zeta, t: -self.t }
    }

    /// Null vector `(−|ζ|² + it, √2 ζ, 1)` representing the point.
    pub fn lift(&self) -> ComplexVector3 {
        cvec(Complex64::new(-self.zeta.norm_sqr(), self.t), self.zeta * SQRT_2, Complex64::new(1., 0.))
    }

    /// Inverse of [`lift`](Self::lift) up to scale. Fails on lifts of `∞`.
    pub fn from_lift(v: &ComplexVector3) -> Result<HeisenbergPoint> {
        if v[2].norm() <= EPS_FORM * v.norm() {
            return Err(Error::ZeroVector);
        }
        let w = v / v[2];
        Ok(HeisenbergPoint { zeta: w[1] / SQRT_2, t: w[0].im })
    }
}

impl fmt::Display for HeisenbergPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} {:+}i, {}]", self.zeta.re, self.zeta.im, self.t)
    }
}

/// Cygan metric `ρ₀(p, q) = | |ζ₁ − ζ₂|² − i t₁ + i t₂ − 2i Im(ζ₁ ζ̄₂) |^{1/2}`.
pub fn cygan_distance(p: &HeisenbergPoint, q: &HeisenbergPoint) -> f64 {
    let w = Complex64::new((p.zeta - q.zeta).norm_sqr(), -p.t + q.t - 2. * (p.zeta * q.zeta.conj()).im);
    w.norm().sqrt()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CyganSphere {
    pub center: HeisenbergPoint,
    pub radius: f64,
}

impl CyganSphere {
    pub fn new(center: HeisenbergPoint, radius: f64) -> Result<Self> {
        if radius.is_nan() || radius <= 0. {
            return Err(Error::InvalidParams(format!("Cygan radius must be positive, got {radius}")));
        }
        Ok(CyganSphere { center, radius })
    }

    /// The sphere `S` of radius 1 about `o`.
    pub fn unit() -> Self {
        CyganSphere { center: HeisenbergPoint::ORIGIN, radius: 1. }
    }

    /// Signed `ρ₀(center, p) − radius`; negative inside.
    pub fn signed_gap(&self, p: &HeisenbergPoint) -> f64 {
        cygan_distance(&self.center, p) - self.radius
    }

    /// Sufficient test by the triangle inequality: `ρ₀(c₁, c₂) ≥ r₁ + r₂`.
    pub fn separated_from(&self, other: &CyganSphere) -> bool {
        cygan_distance(&self.center, &other.center) >= self.radius + other.radius
    }
}

/// Parameters `(r₁, r₂, α)` with `r₁ ≥ r₂ > 1` and `θ = (π − α)/2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroParams {
    r1: f64,
    r2: f64,
    alpha: f64,
}

impl ZeroParams {
    pub fn new(r1: f64, r2: f64, alpha: f64) -> Result<Self> {
        if ![r1, r2, alpha].iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidParams("parameters must be finite".into()));
        }
        if !(r1 >= r2 && r2 > 1.) {
            return Err(Error::InvalidParams(format!("need r1 >= r2 > 1, got r1 = {r1}, r2 = {r2}")));
        }
        Ok(ZeroParams { r1, r2, alpha: fold_angle(alpha) })
    }

    /// From distances `m₁ ≥ m₂ > 0`, with `r_j = cosh(m_j/2)`.
    pub fn from_distances(m1: f64, m2: f64, alpha: f64) -> Result<Self> {
        Self::new((m1 / 2.).cosh(), (m2 / 2.).cosh(), alpha)
    }

    /// From the plotting coordinates `X ≥ 0`, `Y > 0`.
    pub fn from_xy(x: f64, y: f64, alpha: f64) -> Result<Self> {
        let (r1, r2) = xy_to_r(x, y)?;
        Self::new(r1, r2, alpha)
    }

    pub fn r1(&self) -> f64 {
        self.r1
    }

    pub fn r2(&self) -> f64 {
        self.r2
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn cos_alpha(&self) -> f64 {
        self.alpha.cos()
    }

    pub fn theta(&self) -> f64 {
        (PI - self.alpha) / 2.
    }

    pub fn xy(&self) -> (f64, f64) {
        r_to_xy(self.r1, self.r2)
    }
}

/// `(X, Y) = ((r₁² − 1)/(r₂² − 1) − 1, 1/(r₂² − 1))`.
pub fn r_to_xy(r1: f64, r2: f64) -> (f64, f64) {
    let d = r2 * r2 - 1.;
    ((r1 * r1 - 1.) / d - 1., 1. / d)
}

/// `(r₁, r₂) = (√(1 + (X + 1)/Y), √(1 + 1/Y))`.
pub fn xy_to_r(x: f64, y: f64) -> Result<(f64, f64)> {
    if !(x >= 0. && y > 0. && x.is_finite() && y.is_finite()) {
        return Err(Error::InvalidParams(format!("need X >= 0 and Y > 0, got ({x}, {y})")));
    }
    Ok(((1. + (x + 1.) / y).sqrt(), (1. + 1. / y).sqrt()))
}

/// Matrix of the Heisenberg translation `T_{[ζ, t]}`.
pub fn heisenberg_translation(p: &HeisenbergPoint) -> IsometryMatrix {
    let (z, one, zero) = (p.zeta, Complex64::new(1., 0.), Complex64::new(0., 0.));
    #[rustfmt::skip]
    let m = ComplexMatrix3::new(
        one, -z.conj() * SQRT_2, Complex64::new(-z.norm_sqr(), p.t),
        zero, one, z * SQRT_2,
        zero, zero, one,
    );
    IsometryMatrix::new_unchecked(m, SIEGEL)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZeroGenerators {
    pub r1: IsometryMatrix,
    pub r2: IsometryMatrix,
    pub r3: IsometryMatrix,
}

impl ZeroGenerators {
    /// `w⁽ⁿ⁾ = R₁(R₂R₁)ⁿR₃` as a matrix product.
    pub fn word(&self, n: i64) -> IsometryMatrix {
        let r2r1 = &self.r2 * &self.r1;
        &(&self.r1 * &r2r1.pow(n)) * &self.r3
    }
}

pub fn generators_zero(z: &ZeroParams) -> ZeroGenerators {
    let (r1, r2, th) = (z.r1, z.r2, z.theta());
    let e = Complex64::from_polar(1., th);
    let c = |x: f64| Complex64::new(x, 0.);
    let (o, zero) = (c(1.), c(0.));
    let s = 2. * SQRT_2;
    #[rustfmt::skip]
    let m1 = ComplexMatrix3::new(
        c(-1.), e.conj() * (s * r2), c(4. * r2 * r2),
        zero, o, e * (s * r2),
        zero, zero, c(-1.),
    );
    #[rustfmt::skip]
    let m2 = ComplexMatrix3::new(
        c(-1.), -e * (s * r1), c(4. * r1 * r1),
        zero, o, -e.conj() * (s * r1),
        zero, zero, c(-1.),
    );
    #[rustfmt::skip]
    let m3 = ComplexMatrix3::new(
        zero, zero, o,
        zero, c(-1.), zero,
        o, zero, zero,
    );
    ZeroGenerators {
        r1: IsometryMatrix::new_unchecked(m1, SIEGEL),
        r2: IsometryMatrix::new_unchecked(m2, SIEGEL),
        r3: IsometryMatrix::new_unchecked(m3, SIEGEL),
    }
}

/// The Heisenberg translation vector of `R₂R₁`:
/// `[2(r₁e^{−iθ} + r₂e^{iθ}), −8 r₁ r₂ sin 2θ]`.
pub fn r2r1_translation(z: &ZeroParams) -> HeisenbergPoint {
    let th = z.theta();
    HeisenbergPoint {
        zeta: (Complex64::from_polar(z.r1, -th) + Complex64::from_polar(z.r2, th)) * 2.,
        t: -8. * z.r1 * z.r2 * (2. * th).sin(),
    }
}

/// `h(t) = −4 r₁ r₂ (r₁² + r₂²) t + r₁⁴ + 6 r₁² r₂² + r₂⁴ − 1`.
pub fn h_value(r1: f64, r2: f64, t: f64) -> f64 {
    let (q1, q2) = (r1 * r1, r2 * r2);
    -4. * r1 * r2 * (q1 + q2) * t + q1 * q1 + 6. * q1 * q2 + q2 * q2 - 1.
}

/// `cos α` at which `w⁽ⁿ⁾` is unipotent.
pub fn t_n_zero(r1: f64, r2: f64, n: u32) -> f64 {
    let (q1, q2, n) = (r1 * r1, r2 * r2, n as f64);
    ((q1 + q2) * n * n + q2 * (2. * n + 1.) - 1.) / (2. * r1 * r2 * n * (n + 1.))
}

/// `tr w⁽ⁿ⁾ = 4(n r₁ − (n + 1) r₂)² − 1 + 8n(n + 1) r₁ r₂ (1 − cos α)`.
pub fn trace_w_zero(r1: f64, r2: f64, alpha: f64, n: u32) -> f64 {
    trace_w_zero_at(r1, r2, alpha.cos(), n)
}

pub fn trace_w_zero_at(r1: f64, r2: f64, cos_alpha: f64, n: u32) -> f64 {
    let n = n as f64;
    4. * (n * r1 - (n + 1.) * r2).powi(2) - 1. + 8. * n * (n + 1.) * r1 * r2 * (1. - cos_alpha)
}

/// Left-hand side of the `𝒦_n′` condition; equals `n(n + 1) h(t_n)`.
pub fn kn_condition_lhs(r1: f64, r2: f64, n: u32) -> f64 {
    let (q1, q2, n) = (r1 * r1, r2 * r2, n as f64);
    -n * n * ((q1 - q2).powi(2) + 1.) + n * ((q1 + q2).powi(2) - 4. * q2 * q2 - 1.) - 2. * (q1 + q2) * (q2 - 1.)
}

/// Smallest `X` treated as positive; below it the strip index would overflow.
const MIN_X: f64 = 1e-9;

/// Every `n ≥ 1` with `2/n ≤ X ≤ 2/(n − 1)`. On a strip boundary `X = 2/k`
/// both `k` and `k + 1` are returned.
pub fn region_index_n(r1: f64, r2: f64) -> Result<Vec<u32>> {
    if r2.is_nan() || r2 <= 1. {
        return Err(Error::InvalidParams(format!("need r2 > 1, got {r2}")));
    }
    let (x, _) = r_to_xy(r1, r2);
    region_index_from_x(x)
}

pub fn region_index_from_x(x: f64) -> Result<Vec<u32>> {
    if !x.is_finite() || x < -1e-12 {
        return Err(Error::InvalidParams(format!("need X >= 0 (r1 >= r2), got X = {x}")));
    }
    if x < MIN_X {
        return Err(Error::NoRegionIndex);
    }
    // Boundary slack absorbs rounding in X, e.g. (√3, √2) gives X = 1 − 2e−16.
    let slack = 1e-12 * x.max(1.);
    let fits = |n: u32| {
        let lower = 2. / n as f64 <= x + slack;
        let upper = n == 1 || x <= 2. / (n - 1) as f64 + slack;
        lower && upper
    };
    let guess = (2. / x).ceil().max(1.) as u32;
    Ok((guess.saturating_sub(1).max(1)..=guess + 1).filter(|&n| fits(n)).collect())
}

/// Evaluation of one region index `n`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IndexCheck {
    pub n: u32,
    pub kn_lhs: f64,
    pub t_n: f64,
    pub trace: f64,
    /// `trace − 3`; nonnegative means non-elliptic.
    pub trace_margin: f64,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroCertificate {
    pub r1: f64,
    pub r2: f64,
    pub alpha: f64,
    pub cos_alpha: f64,
    pub theta: f64,
    pub x: f64,
    pub y: f64,
    /// `h(cos α)`, the Cygan separation margin of `S` and `R₂R₁(S)`.
    pub h_margin: f64,
    pub region_indices: Vec<u32>,
    pub checks: Vec<IndexCheck>,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

impl ZeroCertificate {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Certifies through the region index; with two candidate indices either may
/// certify.
pub fn certify_theorem3(z: &ZeroParams) -> Result<ZeroCertificate> {
    let (r1, r2, c) = (z.r1, z.r2, z.cos_alpha());
    let (x, y) = z.xy();
    let mut cert = ZeroCertificate {
        r1,
        r2,
        alpha: z.alpha,
        cos_alpha: c,
        theta: z.theta(),
        x,
        y,
        h_margin: h_value(r1, r2, c),
        region_indices: Vec::new(),
        checks: Vec::new(),
        verdict: Verdict::NotCertified,
        notes: Vec::new(),
    };
    match region_index_n(r1, r2) {
        Ok(ns) => cert.region_indices = ns,
        Err(Error::NoRegionIndex) => {
            cert.notes.push("X = 0 (r1 = r2) lies in no region".into());
            return Ok(cert);
        }
        Err(e) => return Err(e),
    }
    for &n in &cert.region_indices {
        let kn_lhs = kn_condition_lhs(r1, r2, n);
        let trace = trace_w_zero_at(r1, r2, c, n);
        let verdict = decide(&[kn_lhs], &[trace - 3.], false);
        cert.checks.push(IndexCheck { n, kn_lhs, t_n: t_n_zero(r1, r2, n), trace, trace_margin: trace - 3., verdict });
    }
    let has = |v| cert.checks.iter().any(|ch| ch.verdict == v);
    cert.verdict = if has(Verdict::CertifiedDiscreteFaithful) {
        Verdict::CertifiedDiscreteFaithful
    } else if has(Verdict::Inconclusive) {
        Verdict::Inconclusive
    } else {
        Verdict::NotCertified
    };
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian::classify_isometry;
    use approx::assert_abs_diff_eq;

    fn hp(re: f64, im: f64, t: f64) -> HeisenbergPoint {
        HeisenbergPoint::new(Complex64::new(re, im), t)
    }

    #[test]
    fn group_law_basics() {
        let p = hp(0.3, -1.2, 0.7);
        assert_eq!(p.compose(&HeisenbergPoint::ORIGIN), p);
        let q = p.compose(&p.inverse());
        assert_abs_diff_eq!(q.zeta.norm(), 0.);
        assert_abs_diff_eq!(q.t, 0.);
    }

    #[test]
    fn cygan_simple_values() {
        assert_eq!(cygan_distance(&hp(1., 0., 0.), &HeisenbergPoint::ORIGIN), 1.);
        assert_abs_diff_eq!(cygan_distance(&hp(0., 0., 16.), &HeisenbergPoint::ORIGIN), 4., epsilon = 1e-15);
    }

    #[test]
    fn lift_is_null_and_round_trips() {
        let p = hp(0.4, 2.1, -3.3);
        let v = p.lift();
        assert_abs_diff_eq!(SIEGEL.norm_sq(&v), 0., epsilon = 1e-13);
        let back = HeisenbergPoint::from_lift(&(v * Complex64::new(0.3, -2.))).unwrap();
        assert_abs_diff_eq!((back.zeta - p.zeta).norm(), 0., epsilon = 1e-13);
        assert_abs_diff_eq!(back.t, p.t, epsilon = 1e-13);
        assert!(HeisenbergPoint::from_lift(&cvec(1.0.into(), 0.0.into(), 0.0.into())).is_err());
    }

    #[test]
    fn translation_acts_by_left_multiplication() {
        let (g, p) = (hp(1.5, -0.5, 2.), hp(-0.2, 0.9, 0.4));
        let image = HeisenbergPoint::from_lift(&heisenberg_translation(&g).apply(&p.lift())).unwrap();
        let expect = g.compose(&p);
        assert_abs_diff_eq!((image.zeta - expect.zeta).norm(), 0., epsilon = 1e-13);
        assert_abs_diff_eq!(image.t, expect.t, epsilon = 1e-13);
    }

    #[test]
    fn generators_are_involutions_in_su21() {
        let z = ZeroParams::new(2.3, 1.4, 1.1).unwrap();
        let g = generators_zero(&z);
        for r in [&g.r1, &g.r2, &g.r3] {
            assert!(IsometryMatrix::new(*r.matrix(), SIEGEL).is_ok());
            assert!(r.pow(2).relative_distance(&IsometryMatrix::identity(SIEGEL)) < 1e-14);
        }
    }

    #[test]
    fn r2r1_is_the_printed_translation() {
        let z = ZeroParams::new(2.3, 1.4, 1.1).unwrap();
        let g = generators_zero(&z);
        let t = heisenberg_translation(&r2r1_translation(&z));
        assert!((&g.r2 * &g.r1).relative_distance(&t) < 1e-14);
    }

    #[test]
    fn r3_swaps_inside_and_outside_of_unit_sphere() {
        let g = generators_zero(&ZeroParams::new(2., 1.5, 0.).unwrap());
        let s = CyganSphere::unit();
        for p in [hp(2., 0., 0.), hp(0.3, 0.4, 3.), hp(-1.1, 0.2, -0.5)] {
            assert!(s.signed_gap(&p) > 0.);
            let q = HeisenbergPoint::from_lift(&g.r3.apply(&p.lift())).unwrap();
            assert!(s.signed_gap(&q) < 0.);
        }
    }

    #[test]
    fn h_at_sqrt2() {
        let r = SQRT_2;
        for t in [-1., 0., 0.5, 31. / 32., 1.] {
            assert_abs_diff_eq!(h_value(r, r, t), 31. - 32. * t, epsilon = 1e-12);
        }
    }

    #[test]
    fn t1_for_2_sqrt2() {
        assert_abs_diff_eq!(t_n_zero(2., SQRT_2, 1), 11. / (8. * SQRT_2), epsilon = 1e-15);
        let tr = 4. * (2. - 2. * SQRT_2).powi(2) - 1. + 32. * SQRT_2 * (1. - 11. / (8. * SQRT_2));
        assert_abs_diff_eq!(tr, 3., epsilon = 1e-12);
        assert_abs_diff_eq!(trace_w_zero_at(2., SQRT_2, t_n_zero(2., SQRT_2, 1), 1), 3., epsilon = 1e-12);
    }

    #[test]
    fn trace_matches_matrix_word() {
        let z = ZeroParams::new(3.1, 1.7, 0.8).unwrap();
        let g = generators_zero(&z);
        for n in 1..8 {
            let tr = g.word(n as i64).trace();
            let closed = trace_w_zero(z.r1(), z.r2(), z.alpha(), n);
            assert_abs_diff_eq!(tr.re, closed, epsilon = 1e-10 * closed.abs().max(1.));
            assert_abs_diff_eq!(tr.im, 0., epsilon = 1e-10 * closed.abs().max(1.));
        }
    }

    #[test]
    fn trace_minus_one_at_boundary() {
        // n = 1, r₁ = 2r₂, cos α = 1 gives τ = −1.
        let tr = trace_w_zero_at(3., 1.5, 1., 1);
        assert_abs_diff_eq!(tr, -1., epsilon = 1e-12);
        let z = ZeroParams::new(3., 1.5, 0.).unwrap();
        let class = classify_isometry(&generators_zero(&z).word(1)).unwrap();
        assert_abs_diff_eq!(class.trace.re, -1., epsilon = 1e-12);
    }

    #[test]
    fn region_indices() {
        assert_eq!(region_index_n(2., SQRT_2).unwrap(), vec![1, 2]);
        assert_eq!(region_index_n(3f64.sqrt(), SQRT_2).unwrap(), vec![2, 3]);
        assert_eq!(region_index_from_x(5.).unwrap(), vec![1]);
        assert_eq!(region_index_from_x(0.75).unwrap(), vec![3]);
        assert_eq!(region_index_from_x(0.5).unwrap(), vec![4, 5]);
        assert!(matches!(region_index_n(2., 2.), Err(Error::NoRegionIndex)));
        assert!(region_index_n(1.5, 2.).is_err());
        assert!(region_index_n(1.5, 1.).is_err());
    }

    #[test]
    fn kn_lhs_hand_values() {
        assert_abs_diff_eq!(kn_condition_lhs(2., SQRT_2, 1), 2., epsilon = 1e-12);
        assert_abs_diff_eq!(kn_condition_lhs(3f64.sqrt(), SQRT_2, 2), -2., epsilon = 1e-12);
        assert_abs_diff_eq!(kn_condition_lhs(3f64.sqrt(), SQRT_2, 3), -4., epsilon = 1e-12);
    }

    #[test]
    fn xy_round_trip() {
        let (r1, r2) = xy_to_r(2., 1.).unwrap();
        assert_abs_diff_eq!(r1, 2., epsilon = 1e-15);
        assert_abs_diff_eq!(r2, SQRT_2, epsilon = 1e-15);
        let (x, y) = r_to_xy(r1, r2);
        assert_abs_diff_eq!(x, 2., epsilon = 1e-14);
        assert_abs_diff_eq!(y, 1., epsilon = 1e-14);
        assert!(xy_to_r(-0.1, 1.).is_err());
    }

    #[test]
    fn zero_family_2_sqrt2() {
        let t1 = 11. / (8. * SQRT_2);
        let ok = certify_theorem3(&ZeroParams::new(2., SQRT_2, (t1 - 1e-3).acos()).unwrap()).unwrap();
        assert_eq!(ok.verdict, Verdict::CertifiedDiscreteFaithful);
        assert_eq!(ok.region_indices, vec![1, 2]);
        let bad = certify_theorem3(&ZeroParams::new(2., SQRT_2, (t1 + 1e-3).acos()).unwrap()).unwrap();
        assert_eq!(bad.verdict, Verdict::NotCertified);
    }

    #[test]
    fn zero_counterexample_cell() {
        for alpha in [0., 0.5, 1.5, PI] {
            let c = certify_theorem3(&ZeroParams::new(3f64.sqrt(), SQRT_2, alpha).unwrap()).unwrap();
            assert_eq!(c.verdict, Verdict::NotCertified);
        }
    }

    #[test]
    fn zero_equal_radii_has_no_region() {
        let c = certify_theorem3(&ZeroParams::new(2., 2., 1.).unwrap()).unwrap();
        assert!(c.region_indices.is_empty());
        assert_eq!(c.verdict, Verdict::NotCertified);
    }
}
