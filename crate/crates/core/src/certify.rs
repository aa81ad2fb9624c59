//! Discreteness certificates for `m₃ > 0`.
//!
//! A group passes when three things hold:
//!
//! 1. `cos α < (r₁² + r₂²) / (2 r₁ r₂ r₃)`, so `C₃` and `C₁₂` are ultra-parallel;
//! 2. `a₂ cos²α + a₁ cos α + a₀ ≥ 0`, so `S₃` misses its `(R₂R₁)ⁿ` images;
//! 3. the words `w⁽ⁿ⁾ = R₁(R₂R₁)ⁿR₃` are non-elliptic. Only `n ∈ {l − 1, l − 2}`
//!    need checking, where the projection of the center of `S₃` onto the
//!    translation axis lies in the segment `(v_{l−1}, v_l]`.
//!
//! The trace of `w⁽ⁿ⁾` is real and affine decreasing in `cos α`, so the word is
//! non-elliptic exactly when `tr ≥ 3`, that is when `cos α ≤ tₙ`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hermitian::{classify_isometry, IsometryClass};
use crate::tolerance::EPS_CLASS;
use crate::triangle::{generators, sinh_from_cosh, v_coordinate, TriangleParams};

/// Coefficients of `g(t) = a₂t² + a₁t + a₀`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadraticCoeffs {
    pub a0: f64,
    pub a1: f64,
    pub a2: f64,
}

impl QuadraticCoeffs {
    pub fn eval(&self, t: f64) -> f64 {
        (self.a2 * t + self.a1) * t + self.a0
    }

    /// Axis of symmetry `−a₁ / (2a₂)`.
    pub fn axis(&self) -> f64 {
        -self.a1 / (2. * self.a2)
    }
}

pub fn quadratic_coeffs(r1: f64, r2: f64, r3: f64) -> QuadraticCoeffs {
    let (q1, q2, q3) = (r1 * r1, r2 * r2, r3 * r3);
    QuadraticCoeffs {
        a2: 4. * q1 * q2 * q3,
        a1: 2. * r1 * r2 * r3 * (1. - 2. * q3 * (q1 + q2)),
        a0: 4. * q1 * q2 * q3 * q3 + q3 * (q1 - q2).powi(2) - q1 - q2 - q3 + 1.,
    }
}

/// The value of `cos α` at which `w⁽ⁿ⁾` has trace 3.
pub fn t_n_threshold(r1: f64, r2: f64, r3: f64, n: u32) -> f64 {
    let s3 = sinh_from_cosh(r3);
    let (up, down) = (r3 + s3, r3 - s3);
    let e = 2 * n as i32 + 2;
    let b = (2. * r1 * r1 * r3 * r3 - r1 * r1 + r2 * r2) * s3;
    let c = 2. * r1 * r1 * r3 * (r3 * r3 - 1.);
    let a0 = down.powi(e) * (b + c);
    let a1 = up.powi(e) * (b - c);
    let a2 = -2. * s3 * (r1 * r1 + r2 * r2 + 2. * r3 * r3 - 2.);
    let den = 2. * r1 * r2 * s3 * (up.powi(e - 1) + down.powi(e - 1) - 2. * r3);
    (a0 + a1 + a2) / den
}

/// Closed-form trace of `w⁽ⁿ⁾` at an arbitrary value of `cos α`.
pub fn trace_w_at(r1: f64, r2: f64, r3: f64, cos_alpha: f64, n: u32) -> f64 {
    let s3 = sinh_from_cosh(r3);
    let (up, down) = (r3 + s3, r3 - s3);
    let e = 2 * n as i32 + 2;
    let b = (2. * r1 * r1 * r3 * r3 - r1 * r1 + r2 * r2) * s3;
    let c = 2. * r1 * r1 * r3 * (r3 * r3 - 1.);
    let k = 2. * r1 * r2 * s3 * cos_alpha;
    let a0 = down.powi(e) * (b + c - k * up);
    let a1 = up.powi(e) * (b - c - k * down);
    let a2 = s3 * (4. * r1 * r2 * r3 * cos_alpha - 2. * r1 * r1 - 2. * r2 * r2 - r3 * r3 + 1.);
    (a0 + a1 + a2) / s3.powi(3)
}

pub fn trace_w(p: &TriangleParams, n: u32) -> f64 {
    trace_w_at(p.r1(), p.r2(), p.r3(), p.cos_alpha(), n)
}

/// `f(t)`: projection of the center of `S₃` onto the axis when `t = cos α`.
///
/// Uses `y₀ = r₁²(r₃ − s₃)² + r₂²`. Both radicands are then perfect squares at
/// `t = 1` and `x₀y₁ − x₁y₀ = 4 r₁ r₂ s₃ (r₁² − r₂²)`, so `f` is nondecreasing.
pub fn projection_f(r1: f64, r2: f64, r3: f64, t: f64) -> Result<f64> {
    let (x0, x1, y0, y1) = projection_coeffs(r1, r2, r3);
    let (rx, ry) = (x0 - x1 * t, y0 - y1 * t);
    // Clamp rounding-level negatives at t = 1 (exact squares there).
    let slack = 1e-12 * x0.max(y0);
    for r in [rx, ry] {
        if r < -slack {
            return Err(Error::NegativeRadicand(r));
        }
    }
    let (a, b) = (rx.max(0.).sqrt(), ry.max(0.).sqrt());
    Ok((a - b) / (a + b))
}

/// `(x₀, x₁, y₀, y₁)` of [`projection_f`].
pub fn projection_coeffs(r1: f64, r2: f64, r3: f64) -> (f64, f64, f64, f64) {
    let s3 = sinh_from_cosh(r3);
    let (up, down) = (r3 + s3, r3 - s3);
    (r1 * r1 * up * up + r2 * r2, 2. * r1 * r2 * up, r1 * r1 * down * down + r2 * r2, 2. * r1 * r2 * down)
}

/// Index `l` of the segment `(v_{l−1}, v_l]` containing the axis projection `pi`.
pub fn segment_index_from_projection(r3: f64, pi: f64) -> Result<u32> {
    if !(pi > 0. && pi < 1.) {
        return Err(Error::ProjectionOutOfRange(pi));
    }
    let s3 = sinh_from_cosh(r3);
    let ratio = ((1. + pi).ln() - (1. - pi).ln()) / ((r3 + s3).ln() - (r3 - s3).ln());
    // Snap to integers so that pi = v_k lands in (v_{k-1}, v_k].
    let nearest = ratio.round();
    let l = if (ratio - nearest).abs() <= 1e-9 * ratio.max(1.) { nearest } else { ratio.ceil() };
    Ok(l.max(1.) as u32)
}

pub fn segment_index_l(p: &TriangleParams) -> Result<u32> {
    let pi = projection_f(p.r1(), p.r2(), p.r3(), p.cos_alpha())?;
    segment_index_from_projection(p.r3(), pi)
}

/// `{l − 1, l − 2} ∩ ℤ⁺` in increasing order.
pub fn indices_to_check(p: &TriangleParams) -> Result<Vec<u32>> {
    let l = segment_index_l(p)?;
    Ok(indices_for_segment(l))
}

fn indices_for_segment(l: u32) -> Vec<u32> {
    [l.saturating_sub(2), l.saturating_sub(1)].into_iter().filter(|&n| n >= 1).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    CertifiedDiscreteFaithful,
    NotCertified,
    Inconclusive,
}

impl Verdict {
    /// CLI exit code: 0 certified, 1 not certified, 2 inconclusive.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::CertifiedDiscreteFaithful => 0,
            Verdict::NotCertified => 1,
            Verdict::Inconclusive => 2,
        }
    }
}

/// Evaluation of one word `w⁽ⁿ⁾`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WordCheck {
    pub n: u32,
    /// Closed-form trace.
    pub trace: f64,
    /// `trace − 3`; nonnegative means non-elliptic.
    pub trace_margin: f64,
    /// Discriminant class of the matrix product, kept as a cross-check.
    pub class: IsometryClass,
}

impl WordCheck {
    pub fn evaluate(p: &TriangleParams, n: u32) -> Result<Self> {
        let trace = trace_w(p, n);
        let class = classify_isometry(&generators(p).word(n as i64))?;
        Ok(WordCheck { n, trace, trace_margin: trace - 3., class })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub r1: f64,
    pub r2: f64,
    pub r3: f64,
    pub alpha: f64,
    pub cos_alpha: f64,
    /// `(r₁² + r₂²) / (2 r₁ r₂ r₃) − cos α`, must be positive.
    pub cond1_margin: f64,
    /// `g(cos α)`, must be nonnegative.
    pub cond2_margin: f64,
    pub axis_projection: Option<f64>,
    pub segment_index: Option<u32>,
    pub indices_checked: Vec<u32>,
    /// Candidates `l − 1, l − 2` that are not positive. Those words are
    /// products of reflections in disjoint mirrors and never elliptic.
    pub indices_excluded: Vec<i64>,
    pub word_checks: Vec<WordCheck>,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

impl Certificate {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Combines margins into a verdict.
///
/// Any margin below `−EPS_CLASS` fails. Banded margins within `±EPS_CLASS`
/// of their threshold are inconclusive. Lenient margins (word traces) pass
/// inside the band, since a trace of exactly 3 is still non-elliptic.
pub(crate) fn decide(banded: &[f64], lenient: &[f64], undecided: bool) -> Verdict {
    if banded.iter().chain(lenient).any(|&m| m < -EPS_CLASS) {
        Verdict::NotCertified
    } else if undecided || banded.iter().any(|m| m.abs() <= EPS_CLASS) {
        Verdict::Inconclusive
    } else {
        Verdict::CertifiedDiscreteFaithful
    }
}

fn base_certificate(p: &TriangleParams) -> Certificate {
    let (r1, r2, r3, c) = (p.r1(), p.r2(), p.r3(), p.cos_alpha());
    Certificate {
        r1,
        r2,
        r3,
        alpha: p.alpha(),
        cos_alpha: c,
        cond1_margin: (r1 * r1 + r2 * r2) / (2. * r1 * r2 * r3) - c,
        cond2_margin: quadratic_coeffs(r1, r2, r3).eval(c),
        axis_projection: None,
        segment_index: None,
        indices_checked: Vec::new(),
        indices_excluded: Vec::new(),
        word_checks: Vec::new(),
        verdict: Verdict::Inconclusive,
        notes: Vec::new(),
    }
}

fn finish(mut cert: Certificate, undecided: bool) -> Result<Certificate> {
    let lenient: Vec<f64> = cert.word_checks.iter().map(|w| w.trace_margin).collect();
    cert.verdict = decide(&[cert.cond1_margin, cert.cond2_margin], &lenient, undecided);
    Ok(cert)
}

/// Runs the three-condition test with the two-index selection.
pub fn certify_theorem1(p: &TriangleParams) -> Result<Certificate> {
    let mut cert = base_certificate(p);
    if cert.cond1_margin <= 0. {
        cert.notes.push("C3 and C12 are not ultra-parallel; S3 is undefined".into());
    }
    let mut undecided = false;
    match projection_f(p.r1(), p.r2(), p.r3(), p.cos_alpha())
        .and_then(|pi| Ok((pi, segment_index_from_projection(p.r3(), pi)?)))
    {
        Ok((pi, l)) => {
            cert.axis_projection = Some(pi);
            cert.segment_index = Some(l);
            cert.indices_checked = indices_for_segment(l);
            cert.indices_excluded = [l as i64 - 2, l as i64 - 1].into_iter().filter(|&n| n < 1).collect();
            for &n in &cert.indices_checked {
                cert.word_checks.push(WordCheck::evaluate(p, n)?);
            }
        }
        Err(e) => {
            undecided = true;
            cert.notes.push(format!("segment index unavailable: {e}"));
        }
    }
    finish(cert, undecided)
}

/// Brute-force variant checking every `w⁽ⁿ⁾` with `1 ≤ n ≤ n_max`.
pub fn certify_all_n(p: &TriangleParams, n_max: u32) -> Result<Certificate> {
    let mut cert = base_certificate(p);
    cert.axis_projection = projection_f(p.r1(), p.r2(), p.r3(), p.cos_alpha()).ok();
    cert.indices_checked = (1..=n_max).collect();
    for n in 1..=n_max {
        cert.word_checks.push(WordCheck::evaluate(p, n)?);
    }
    cert.notes.push(format!("brute force over n = 1..={n_max}"));
    finish(cert, false)
}

/// Membership of `(r₁, r₂)` in `K_j` and `K_j′` for fixed `r₃` and `j₀`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionMembership {
    pub j: u32,
    pub j0: u32,
    /// `t_1, …, t_{j₀+1}`.
    pub thresholds: Vec<f64>,
    pub t_j: f64,
    pub in_kj: bool,
    pub in_kj_prime: bool,
    /// Left-hand sides of the four `K_j′` conditions.
    pub condition_margins: [f64; 4],
}

impl RegionMembership {
    /// `t_j > 1`: the word `w⁽ʲ⁾` is loxodromic for every `α`.
    pub fn always_loxodromic(&self) -> bool {
        self.t_j > 1.
    }
}

pub fn region_membership(r1: f64, r2: f64, r3: f64, j: u32, j0: u32) -> Result<RegionMembership> {
    let thresholds = region_thresholds(r1, r2, r3, j0)?;
    membership_from_thresholds(r1, r2, r3, j, j0, thresholds)
}

fn region_thresholds(r1: f64, r2: f64, r3: f64, j0: u32) -> Result<Vec<f64>> {
    if !(1. < r2 && r2 <= r1 && r3 > 1.) {
        return Err(Error::InvalidParams(format!("need 1 < r2 <= r1 and r3 > 1, got ({r1}, {r2}, {r3})")));
    }
    if j0 < 1 {
        return Err(Error::InvalidParams("j0 must be positive".into()));
    }
    Ok((1..=j0 + 1).map(|k| t_n_threshold(r1, r2, r3, k)).collect())
}

fn membership_from_thresholds(
    r1: f64,
    r2: f64,
    r3: f64,
    j: u32,
    j0: u32,
    thresholds: Vec<f64>,
) -> Result<RegionMembership> {
    if !(1..=j0).contains(&j) {
        return Err(Error::InvalidParams(format!("need 1 <= j <= j0, got j = {j}, j0 = {j0}")));
    }
    let t_j = thresholds[j as usize - 1];
    let in_kj = thresholds.iter().all(|&t| t_j <= t);
    let q = quadratic_coeffs(r1, r2, r3);
    let f1 = projection_f(r1, r2, r3, 1.)?;
    let condition_margins = [
        r1 * r1 + r2 * r2 - 2. * r1 * r2 * r3 * t_j,
        2. * r3 * r3 * (r1 * r1 + r2 * r2) - 4. * r1 * r2 * r3 * t_j - 1.,
        q.eval(t_j),
        v_coordinate(r3, j as i64 + 2) - f1,
    ];
    let in_kj_prime = in_kj && condition_margins.iter().all(|&m| m >= 0.);
    Ok(RegionMembership { j, j0, thresholds, t_j, in_kj, in_kj_prime, condition_margins })
}

/// Every `j ∈ 1..=j₀` with `(r₁, r₂) ∈ K_j`; more than one only on ties.
pub fn regions_containing(r1: f64, r2: f64, r3: f64, j0: u32) -> Result<Vec<RegionMembership>> {
    let thresholds = region_thresholds(r1, r2, r3, j0)?;
    let mut out = Vec::new();
    for j in 1..=j0 {
        let m = membership_from_thresholds(r1, r2, r3, j, j0, thresholds.clone())?;
        if m.in_kj {
            out.push(m);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn quadratic_at_sqrt2() {
        let r = 2f64.sqrt();
        let q = quadratic_coeffs(r, r, r);
        assert_abs_diff_eq!(q.a2, 32., epsilon = 1e-12);
        // a₁ = 2·2√2·(1 − 2·2·4) = −60√2
        assert_abs_diff_eq!(q.a1, -60. * r, epsilon = 1e-12);
        // a₀ = 4·2·2·4 + 0 − 2 − 2 − 2 + 1 = 59
        assert_abs_diff_eq!(q.a0, 59., epsilon = 1e-12);
    }

    #[test]
    fn quadratic_axis() {
        let (r1, r2, r3) = (5., 3., 1.4);
        let q = quadratic_coeffs(r1, r2, r3);
        let expect = (2. * r3 * r3 * (r1 * r1 + r2 * r2) - 1.) / (4. * r1 * r2 * r3);
        assert_abs_diff_eq!(q.axis(), expect, epsilon = 1e-12);
    }

    #[test]
    fn threshold_is_root_of_trace() {
        let (r1, r2, r3) = (4.2, 2.5, 1.3);
        for n in 1..6 {
            let t = t_n_threshold(r1, r2, r3, n);
            assert_abs_diff_eq!(trace_w_at(r1, r2, r3, t, n), 3., epsilon = 1e-8);
        }
    }

    #[test]
    fn t1_below_one_at_8_4_101() {
        assert!(t_n_threshold(8., 4., 1.01, 1) < 1.);
    }

    #[test]
    fn threshold_limit_for_large_n() {
        let (r1, r2, r3) = (3., 2., 1.2);
        let s3 = sinh_from_cosh(r3);
        let lim = (r3 + s3) * ((2. * r1 * r1 * r3 * r3 - r1 * r1 + r2 * r2) * s3 - 2. * r1 * r1 * r3 * (r3 * r3 - 1.))
            / (2. * r1 * r2 * s3);
        assert_abs_diff_eq!(t_n_threshold(r1, r2, r3, 50), lim, epsilon = 1e-9);
    }

    #[test]
    fn trace_slope_in_cos_alpha() {
        let (r1, r2, r3, n) = (3.5, 2.2, 1.6, 3);
        let s3 = sinh_from_cosh(r3);
        let slope = trace_w_at(r1, r2, r3, 1., n) - trace_w_at(r1, r2, r3, 0., n);
        let e = 2 * n as i32 + 1;
        let expect = -2. * r1 * r2 * ((r3 - s3).powi(e) + (r3 + s3).powi(e) - 2. * r3) / (s3 * s3);
        assert_abs_diff_eq!(slope, expect, epsilon = 1e-9 * expect.abs());
        assert!(slope < 0.);
    }

    #[test]
    fn f_constant_when_r1_equals_r2() {
        let (x0, x1, y0, y1) = projection_coeffs(3., 3., 1.5);
        assert_abs_diff_eq!(x0 * y1 - x1 * y0, 0., epsilon = 1e-10);
        let a = projection_f(3., 3., 1.5, -0.7).unwrap();
        let b = projection_f(3., 3., 1.5, 0.9).unwrap();
        assert_abs_diff_eq!(a, b, epsilon = 1e-14);
    }

    #[test]
    fn f_monotone_on_grid() {
        let (r1, r2, r3) = (6., 2.5, 1.3);
        let vals: Vec<f64> = (0..100).map(|i| projection_f(r1, r2, r3, -1. + 2. * i as f64 / 99.).unwrap()).collect();
        assert!(vals.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn segment_boundaries() {
        let r3 = 1.25;
        assert_eq!(segment_index_from_projection(r3, 0.3).unwrap(), 1);
        assert_eq!(segment_index_from_projection(r3, v_coordinate(r3, 1)).unwrap(), 1);
        assert_eq!(segment_index_from_projection(r3, v_coordinate(r3, 2)).unwrap(), 2);
        assert_eq!(segment_index_from_projection(r3, v_coordinate(r3, 2) + 1e-6).unwrap(), 3);
        assert!(segment_index_from_projection(r3, 0.).is_err());
        assert!(segment_index_from_projection(r3, 1.).is_err());
    }

    #[test]
    fn index_clipping() {
        assert_eq!(indices_for_segment(3), vec![1, 2]);
        assert_eq!(indices_for_segment(2), vec![1]);
        assert!(indices_for_segment(1).is_empty());
    }

    #[test]
    fn decide_semantics() {
        assert_eq!(decide(&[0.5, 0.2], &[1.0], false), Verdict::CertifiedDiscreteFaithful);
        assert_eq!(decide(&[0.5, 1e-12], &[1.0], false), Verdict::Inconclusive);
        assert_eq!(decide(&[-0.5, 1e-12], &[1.0], false), Verdict::NotCertified);
        assert_eq!(decide(&[0.5, 0.2], &[0.0], false), Verdict::CertifiedDiscreteFaithful);
        assert_eq!(decide(&[0.5, 0.2], &[-1e-3], false), Verdict::NotCertified);
        assert_eq!(decide(&[0.5, 0.2], &[], true), Verdict::Inconclusive);
    }

    #[test]
    fn cond1_violation_not_certified() {
        // (r1² + r2²)/(2 r1 r2 r3) = 2/3 < cos α = 0.7, still inside the existence bound.
        let p = TriangleParams::new(2., 2., 1.5, 0.7f64.acos()).unwrap();
        let cert = certify_theorem1(&p).unwrap();
        assert!(cert.cond1_margin < 0.);
        assert_eq!(cert.verdict, Verdict::NotCertified);
    }

    #[test]
    fn cond2_band_is_inconclusive() {
        // Put cos α on a root of g so the disk images are tangent.
        let (r1, r2, r3) = (1.1, 1.05, 1.05);
        let q = quadratic_coeffs(r1, r2, r3);
        let disc = (q.a1 * q.a1 - 4. * q.a2 * q.a0).sqrt();
        let root = (-q.a1 - disc) / (2. * q.a2);
        assert!(root.abs() < 1.);
        let p = TriangleParams::new(r1, r2, r3, root.acos()).unwrap();
        let cert = certify_theorem1(&p).unwrap();
        assert!(cert.cond2_margin.abs() <= EPS_CLASS, "{}", cert.cond2_margin);
        assert!(cert.cond1_margin > 0.);
        assert_ne!(cert.verdict, Verdict::CertifiedDiscreteFaithful);
    }

    #[test]
    fn anchor_8_4_is_certified_below_t1() {
        let t1 = t_n_threshold(8., 4., 1.01, 1);
        let p = TriangleParams::new(8., 4., 1.01, (t1 - 0.01).acos()).unwrap();
        let cert = certify_theorem1(&p).unwrap();
        assert_eq!(cert.verdict, Verdict::CertifiedDiscreteFaithful, "{cert:#?}");
        let p = TriangleParams::new(8., 4., 1.01, (t1 + 0.005).acos()).unwrap();
        assert_eq!(certify_theorem1(&p).unwrap().verdict, Verdict::NotCertified);
    }

    #[test]
    fn kj_anchor_points() {
        for (r2, j) in [(4., 1), (5., 2), (6., 3)] {
            let m = region_membership(8., r2, 1.01, j, 3).unwrap();
            assert!(m.in_kj_prime, "{m:?}");
            assert!(m.t_j < 1.);
        }
    }

    #[test]
    fn region_input_errors() {
        assert!(region_membership(2., 3., 1.2, 1, 3).is_err());
        assert!(region_membership(3., 2., 1.2, 4, 3).is_err());
        assert!(region_membership(3., 2., 1.2, 0, 3).is_err());
    }

    #[test]
    fn certificate_json_has_every_margin() {
        let p = TriangleParams::new(8., 4., 1.01, PI / 2.).unwrap();
        let json = certify_theorem1(&p).unwrap().to_json().unwrap();
        for key in ["cond1_margin", "cond2_margin", "indices_checked", "word_checks", "verdict"] {
            assert!(json.contains(key), "{key}");
        }
    }
}
