//! Ultra-parallel `[m₁, m₂, m₃]`-triangle groups with `m₃ > 0`, ball model.
//!
//! With `r_j = cosh(m_j/2)`, `s_j = sinh(m_j/2)` and angular invariant `α`,
//! the mirror polars are normalized as
//!
//! ```text
//! n₁ = (0, r₃, s₃),  n₂ = (0, 1, 0),  n₃ = (z₁, r₁, z₃)
//! z₃ = (r₁r₃ − r₂e^{−iα}) / s₃,  z₁ = sqrt(|z₃|² − r₁² + 1)
//! ```
//!
//! The common perpendicular `C₁₂` of the first two mirrors has polar
//! `(1, 0, 0)`; it is identified with the unit disk through `(0, u, 1) ↦ u`.
//! Inside it `R₂R₁` is a hyperbolic translation along the real diameter.

use std::f64::consts::PI;

use nalgebra::Matrix3;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hermitian::{cvec, rvec, ComplexVector3, HermitianModel, IsometryMatrix};
use crate::tolerance::EPS_FORM;

/// Parameters `(r₁, r₂, r₃, α)` of a triangle group with `r₁ ≥ r₂ ≥ r₃ > 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TriangleParams {
    r1: f64,
    r2: f64,
    r3: f64,
    alpha: f64,
}

impl TriangleParams {
    /// Validates ordering and the existence bound. `α` is reduced into
    /// `[0, 2π)` and then folded into `[0, π]` by `α ↦ 2π − α`.
    pub fn new(r1: f64, r2: f64, r3: f64, alpha: f64) -> Result<Self> {
        if ![r1, r2, r3, alpha].iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidParams("parameters must be finite".into()));
        }
        if !(r1 >= r2 && r2 >= r3 && r3 > 1.0) {
            return Err(Error::InvalidParams(format!("need r1 >= r2 >= r3 > 1, got ({r1}, {r2}, {r3})")));
        }
        let alpha = fold_angle(alpha);
        let bound = existence_bound(r1, r2, r3);
        if alpha.cos() > bound + EPS_FORM {
            return Err(Error::ExistenceBound { cos_alpha: alpha.cos(), bound });
        }
        Ok(TriangleParams { r1, r2, r3, alpha })
    }

    /// Same as [`TriangleParams::new`] from mirror distances, `r_j = cosh(m_j/2)`.
    pub fn from_distances(m1: f64, m2: f64, m3: f64, alpha: f64) -> Result<Self> {
        Self::new((m1 / 2.).cosh(), (m2 / 2.).cosh(), (m3 / 2.).cosh(), alpha)
    }

    pub fn r1(&self) -> f64 {
        self.r1
    }

    pub fn r2(&self) -> f64 {
        self.r2
    }

    pub fn r3(&self) -> f64 {
        self.r3
    }

    pub fn s3(&self) -> f64 {
        sinh_from_cosh(self.r3)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn cos_alpha(&self) -> f64 {
        self.alpha.cos()
    }

    /// Mirror distances `(m₁, m₂, m₃)`.
    pub fn distances(&self) -> (f64, f64, f64) {
        (2. * self.r1.acosh(), 2. * self.r2.acosh(), 2. * self.r3.acosh())
    }
}

pub(crate) fn sinh_from_cosh(r: f64) -> f64 {
    (r * r - 1.0).max(0.0).sqrt()
}

pub(crate) fn fold_angle(alpha: f64) -> f64 {
    let a = alpha.rem_euclid(2. * PI);
    if a > PI {
        log::warn!("angular invariant {alpha} folded to {} (conjugate group)", 2. * PI - a);
        2. * PI - a
    } else {
        a
    }
}

/// `(r₁² + r₂² + r₃² − 1) / (2 r₁ r₂ r₃)`; the group exists iff `cos α` is at most this.
pub fn existence_bound(r1: f64, r2: f64, r3: f64) -> f64 {
    (r1 * r1 + r2 * r2 + r3 * r3 - 1.0) / (2. * r1 * r2 * r3)
}

/// The three normalized mirror polars.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolarTriple {
    pub n1: ComplexVector3,
    pub n2: ComplexVector3,
    pub n3: ComplexVector3,
}

impl PolarTriple {
    /// Recovers `(r₁, r₂, r₃, α)` from the pairwise products.
    pub fn invariants(&self) -> (f64, f64, f64, f64) {
        let b = HermitianModel::Ball;
        let p13 = b.product(&self.n1, &self.n3);
        let p21 = b.product(&self.n2, &self.n1);
        let p32 = b.product(&self.n3, &self.n2);
        let alpha = (p13 * p21 * p32).arg().rem_euclid(2. * PI);
        (p32.norm(), p13.norm(), p21.norm(), alpha)
    }
}

/// Entry `z₃` of the third polar.
pub fn z3(p: &TriangleParams) -> Complex64 {
    (Complex64::from(p.r1 * p.r3) - p.r2 * Complex64::cis(-p.alpha)) / p.s3()
}

/// Entry `z₁` of the third polar; the nonnegative root, clamped at the bound.
pub fn z1(p: &TriangleParams) -> f64 {
    (z3(p).norm_sqr() - p.r1 * p.r1 + 1.0).max(0.0).sqrt()
}

pub fn polar_vectors(p: &TriangleParams) -> PolarTriple {
    PolarTriple { n1: rvec(0., p.r3, p.s3()), n2: rvec(0., 1., 0.), n3: cvec(z1(p).into(), p.r1.into(), z3(p)) }
}

/// The generating reflections of a triangle group.
#[derive(Clone, Debug, PartialEq)]
pub struct Generators {
    pub r1: IsometryMatrix,
    pub r2: IsometryMatrix,
    pub r3: IsometryMatrix,
}

impl Generators {
    /// `w⁽ⁿ⁾ = R₁ (R₂R₁)ⁿ R₃` as a matrix product.
    pub fn word(&self, n: i64) -> IsometryMatrix {
        let r21 = &self.r2 * &self.r1;
        &(&self.r1 * &r21.pow(n)) * &self.r3
    }
}

/// Closed-form generators in the ball model.
pub fn generators(p: &TriangleParams) -> Generators {
    let (r, s) = (p.r3, p.s3());
    let (a, b) = (r * r + s * s, 2. * r * s);
    let ball = HermitianModel::Ball;
    let c = |x: f64| Complex64::from(x);
    #[rustfmt::skip]
    let m1 = Matrix3::new(
        c(-1.), c(0.), c(0.),
        c(0.), c(a), c(-b),
        c(0.), c(b), c(-a),
    );
    let m2 = Matrix3::from_diagonal(&rvec(-1., 1., -1.));
    let (x1, x3, r1) = (z1(p), z3(p), p.r1);
    #[rustfmt::skip]
    let m3 = Matrix3::new(
        c(2. * x1 * x1 - 1.), c(2. * x1 * r1), -2. * x1 * x3.conj(),
        c(2. * x1 * r1), c(2. * r1 * r1 - 1.), -2. * r1 * x3.conj(),
        2. * x1 * x3, 2. * r1 * x3, c(-2. * x3.norm_sqr() - 1.),
    );
    Generators {
        r1: IsometryMatrix::new_unchecked(m1, ball),
        r2: IsometryMatrix::new_unchecked(m2, ball),
        r3: IsometryMatrix::new_unchecked(m3, ball),
    }
}

/// `(R₂R₁)ⁿ` in closed form. Only `r₃` matters.
pub fn power_r2r1(p: &TriangleParams, n: i64) -> IsometryMatrix {
    power_r2r1_r3(p.r3, n)
}

pub(crate) fn power_r2r1_r3(r3: f64, n: i64) -> IsometryMatrix {
    let s3 = sinh_from_cosh(r3);
    let e = 2 * n as i32;
    let (lo, hi) = ((r3 - s3).powi(e), (r3 + s3).powi(e));
    let (d, o) = (Complex64::from((lo + hi) / 2.), Complex64::from((lo - hi) / 2.));
    let (z, one) = (Complex64::from(0.), Complex64::from(1.));
    #[rustfmt::skip]
    let m = Matrix3::new(
        one, z, z,
        z, d, o,
        z, o, d,
    );
    IsometryMatrix::new_unchecked(m, HermitianModel::Ball)
}

/// The disk `S₃ = Π₁₂(C₃)` inside `C₁₂`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProjectedDisk {
    /// Unit-disk coordinate of `p₃ = C₀ ∩ C₁₂`.
    pub center: Complex64,
    /// Hyperbolic radius `d₃`.
    pub radius: f64,
    /// `M = cosh²(ρ(C₃, C₁₂)/2)`.
    pub m: f64,
}

/// `M = (r₁² + r₂² + r₃² − 2r₁r₂r₃ cos α − 1) / (r₃² − 1)`.
pub fn m_value(p: &TriangleParams) -> f64 {
    let (r1, r2, r3) = (p.r1, p.r2, p.r3);
    (r1 * r1 + r2 * r2 + r3 * r3 - 2. * r1 * r2 * r3 * p.cos_alpha() - 1.) / (r3 * r3 - 1.)
}

pub fn projected_disk(p: &TriangleParams) -> Result<ProjectedDisk> {
    let m = m_value(p);
    if m <= 1.0 {
        return Err(Error::NotUltraParallel(m));
    }
    let center = Complex64::from(p.s3() * p.r1) / (Complex64::from(p.r1 * p.r3) - p.r2 * Complex64::cis(-p.alpha));
    let radius = ((m + 1.) / (m - 1.)).acosh();
    Ok(ProjectedDisk { center, radius, m })
}

/// Homogeneous lift `(0, s₃r₁, r₁r₃ − r₂e^{−iα})` of the disk center.
pub fn p3_vector(p: &TriangleParams) -> ComplexVector3 {
    cvec(0.0.into(), (p.s3() * p.r1).into(), Complex64::from(p.r1 * p.r3) - p.r2 * Complex64::cis(-p.alpha))
}

/// Orthogonal projection of a unit-disk point onto the diameter `(−1, 1)`.
pub fn project_to_axis(z: Complex64) -> Result<f64> {
    let n2 = z.norm_sqr();
    if n2 >= 1.0 || !n2.is_finite() {
        return Err(Error::OutsideDisk(z));
    }
    let plus = (n2 + 2. * z.re + 1.).sqrt();
    let minus = (n2 - 2. * z.re + 1.).sqrt();
    Ok((plus - minus) / (plus + minus))
}

/// Axis point `v_j = tanh(j m₃ / 2)`, at distance `|j| m₃` from `v₀ = 0`.
///
/// Evaluated through `q = ((r₃ − s₃)/(r₃ + s₃))^{|j|}` so large `j` cannot overflow.
pub fn v_coordinate(r3: f64, j: i64) -> f64 {
    let s3 = sinh_from_cosh(r3);
    let q = ((r3 - s3) / (r3 + s3)).powi(j.unsigned_abs().min(i32::MAX as u64) as i32);
    (j.signum() as f64) * (1. - q) / (1. + q)
}

/// Poincaré distance between two points of the unit disk.
pub fn disk_distance(u: Complex64, w: Complex64) -> f64 {
    let num = (u - w).norm_sqr();
    let den = (1. - u.norm_sqr()) * (1. - w.norm_sqr());
    2. * (num / den).sqrt().asinh()
}
