//! Linear algebra on ℂ^{2,1}.
//!
//! Two Hermitian forms of signature (2,1) are supported: the unit-ball form
//! `z₁w̄₁ + z₂w̄₂ − z₃w̄₃` and the Siegel form `z₁w̄₃ + z₂w̄₂ + z₃w̄₁`. Both are
//! written as `⟨z, w⟩ = w* J z` with `J` the Gram matrix of the model.

use std::ops::Mul;

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tolerance::{scaled, EPS_CLASS, EPS_FORM};

pub type ComplexVector3 = Vector3<Complex64>;
pub type ComplexMatrix3 = Matrix3<Complex64>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Builds a vector from three complex entries.
pub fn cvec(a: Complex64, b: Complex64, c: Complex64) -> ComplexVector3 {
    Vector3::new(a, b, c)
}

/// Builds a vector from three real entries.
pub fn rvec(a: f64, b: f64, c: f64) -> ComplexVector3 {
    Vector3::new(a.into(), b.into(), c.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HermitianModel {
    Ball,
    Siegel,
}

impl HermitianModel {
    /// Gram matrix `J` of the form. It is real, symmetric and an involution.
    pub fn gram(self) -> ComplexMatrix3 {
        match self {
            HermitianModel::Ball => Matrix3::from_diagonal(&Vector3::new(ONE, ONE, -ONE)),
            HermitianModel::Siegel => Matrix3::new(ZERO, ZERO, ONE, ZERO, ONE, ZERO, ONE, ZERO, ZERO),
        }
    }

    pub fn product(self, z: &ComplexVector3, w: &ComplexVector3) -> Complex64 {
        match self {
            HermitianModel::Ball => z[0] * w[0].conj() + z[1] * w[1].conj() - z[2] * w[2].conj(),
            HermitianModel::Siegel => z[0] * w[2].conj() + z[1] * w[1].conj() + z[2] * w[0].conj(),
        }
    }

    /// `⟨z, z⟩`, which is real.
    pub fn norm_sq(self, z: &ComplexVector3) -> f64 {
        self.product(z, z).re
    }
}

pub fn hermitian_product(z: &ComplexVector3, w: &ComplexVector3, model: HermitianModel) -> Complex64 {
    model.product(z, w)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum VectorClass {
    Negative,
    Null,
    Positive,
}

/// Sign of `⟨z, z⟩`. Values within `EPS_FORM · |z|²` of zero count as null.
pub fn vector_class(z: &ComplexVector3, model: HermitianModel) -> Result<VectorClass> {
    let euclid = z.norm_squared();
    if euclid == 0.0 {
        return Err(Error::ZeroVector);
    }
    let q = model.norm_sq(z);
    Ok(if q.abs() <= EPS_FORM * euclid {
        VectorClass::Null
    } else if q < 0.0 {
        VectorClass::Negative
    } else {
        VectorClass::Positive
    })
}

/// Hermitian cross product: a vector form-orthogonal to both `z` and `w`.
///
/// The ball model uses the classical component formula. For the Siegel model
/// the orthogonal complement is computed from the Gram matrix as
/// `(J z̄) × (J w̄)`, which is orthogonal to both inputs for any real
/// symmetric `J`.
pub fn hermitian_cross(z: &ComplexVector3, w: &ComplexVector3, model: HermitianModel) -> Result<ComplexVector3> {
    let out = match model {
        HermitianModel::Ball => {
            let (z, w) = (z.map(|c| c.conj()), w.map(|c| c.conj()));
            cvec(z[1] * w[2] - z[2] * w[1], z[2] * w[0] - z[0] * w[2], z[1] * w[0] - z[0] * w[1])
        }
        HermitianModel::Siegel => {
            let j = model.gram();
            let a = j * z.map(|c| c.conj());
            let b = j * w.map(|c| c.conj());
            a.cross(&b)
        }
    };
    if out.norm() <= EPS_FORM * z.norm() * w.norm() {
        return Err(Error::DegenerateCross);
    }
    Ok(out)
}

/// Bergman distance between two points of complex hyperbolic space, given by
/// `cosh²(ρ/2) = ⟨z,w⟩⟨w,z⟩ / (⟨z,z⟩⟨w,w⟩)`.
pub fn bergman_distance(z: &ComplexVector3, w: &ComplexVector3, model: HermitianModel) -> Result<f64> {
    let zz = model.norm_sq(z);
    let ww = model.norm_sq(w);
    if vector_class(z, model)? != VectorClass::Negative {
        return Err(Error::NotNegative(zz));
    }
    if vector_class(w, model)? != VectorClass::Negative {
        return Err(Error::NotNegative(ww));
    }
    let zw = model.product(z, w).norm_sqr();
    // sinh² form keeps ρ(z, z) at zero instead of sqrt(rounding).
    let sinh_sq = ((zw - zz * ww) / (zz * ww)).max(0.0);
    Ok(2.0 * sinh_sq.sqrt().asinh())
}

/// Complex reflection `z ↦ −z + 2 ⟨z,n⟩/⟨n,n⟩ n` with polar vector `n`.
pub fn reflection_from_polar(n: &ComplexVector3, model: HermitianModel) -> Result<IsometryMatrix> {
    let nn = model.norm_sq(n);
    if vector_class(n, model)? != VectorClass::Positive {
        return Err(Error::NotPositive(nn));
    }
    let row = n.adjoint() * model.gram();
    let m = -ComplexMatrix3::identity() + (n * row) * Complex64::from(2.0 / nn);
    IsometryMatrix::new(m, model)
}

/// A 3×3 complex matrix preserving the form of its model, with determinant 1.
#[derive(Clone, Debug, PartialEq)]
pub struct IsometryMatrix {
    m: ComplexMatrix3,
    model: HermitianModel,
}

impl IsometryMatrix {
    /// Validates `M* J M = J` and `det M = 1`, both relative to the size of `M`.
    pub fn new(m: ComplexMatrix3, model: HermitianModel) -> Result<Self> {
        let out = IsometryMatrix { m, model };
        let residual = out.form_residual();
        if residual > EPS_FORM {
            return Err(Error::NotFormPreserving { model, residual });
        }
        let det = out.m.determinant();
        if (det - ONE).norm() > scaled(EPS_FORM, out.scale().powi(3)) {
            return Err(Error::NotUnimodular(det));
        }
        Ok(out)
    }

    /// Wraps a matrix known to be an isometry (products of checked isometries).
    pub(crate) fn new_unchecked(m: ComplexMatrix3, model: HermitianModel) -> Self {
        IsometryMatrix { m, model }
    }

    pub fn identity(model: HermitianModel) -> Self {
        IsometryMatrix { m: ComplexMatrix3::identity(), model }
    }

    pub fn matrix(&self) -> &ComplexMatrix3 {
        &self.m
    }

    pub fn model(&self) -> HermitianModel {
        self.model
    }

    pub fn trace(&self) -> Complex64 {
        self.m.trace()
    }

    pub fn determinant(&self) -> Complex64 {
        self.m.determinant()
    }

    /// Largest entry modulus.
    pub fn scale(&self) -> f64 {
        self.m.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// `max |M* J M − J|` divided by `max(1, scale²)`.
    pub fn form_residual(&self) -> f64 {
        let j = self.model.gram();
        let r = self.m.adjoint() * j * self.m - j;
        let worst = r.iter().map(|c| c.norm()).fold(0.0, f64::max);
        worst / self.scale().powi(2).max(1.0)
    }

    /// `J M* J`, the inverse of a form-preserving matrix.
    pub fn inverse(&self) -> Self {
        let j = self.model.gram();
        IsometryMatrix::new_unchecked(j * self.m.adjoint() * j, self.model)
    }

    /// Integer power by repeated squaring; negative powers use the inverse.
    pub fn pow(&self, n: i64) -> Self {
        let mut base = if n < 0 { self.inverse() } else { self.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = IsometryMatrix::identity(self.model);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    pub fn apply(&self, z: &ComplexVector3) -> ComplexVector3 {
        self.m * z
    }

    /// Entrywise distance to another matrix, relative to the larger scale.
    pub fn relative_distance(&self, other: &IsometryMatrix) -> f64 {
        let diff = (self.m - other.m).iter().map(|c| c.norm()).fold(0.0, f64::max);
        diff / self.scale().max(other.scale()).max(1.0)
    }
}

impl Mul for &IsometryMatrix {
    type Output = IsometryMatrix;

    fn mul(self, rhs: &IsometryMatrix) -> IsometryMatrix {
        assert_eq!(self.model, rhs.model, "cannot compose isometries of different models");
        IsometryMatrix::new_unchecked(self.m * rhs.m, self.model)
    }
}

impl Mul for IsometryMatrix {
    type Output = IsometryMatrix;

    fn mul(self, rhs: IsometryMatrix) -> IsometryMatrix {
        &self * &rhs
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum IsometryKind {
    Loxodromic,
    RegularElliptic,
    /// `|f(τ)| ≤ EPS_CLASS`: parabolic, or elliptic with a repeated eigenvalue.
    Boundary,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IsometryClass {
    pub kind: IsometryKind,
    /// Value of the trace discriminant `f(τ)`.
    pub margin: f64,
    pub trace: Complex64,
}

impl IsometryClass {
    /// Boundary element whose trace is 3, i.e. a unipotent candidate.
    pub fn is_unipotent_trace(&self) -> bool {
        self.kind == IsometryKind::Boundary && (self.trace - Complex64::from(3.0)).norm() <= EPS_CLASS
    }

    pub fn is_non_elliptic(&self) -> bool {
        self.kind == IsometryKind::Loxodromic || self.is_unipotent_trace()
    }
}

/// `f(τ) = |τ|⁴ − 8 Re(τ³) + 18 |τ|² − 27`.
///
/// For real τ this factors as `(τ − 3)³ (τ + 1)`.
pub fn trace_discriminant(tau: Complex64) -> f64 {
    let n2 = tau.norm_sqr();
    n2 * n2 - 8.0 * (tau * tau * tau).re + 18.0 * n2 - 27.0
}

pub fn classify_isometry(m: &IsometryMatrix) -> Result<IsometryClass> {
    let det = m.determinant();
    if (det - ONE).norm() > scaled(EPS_FORM, m.scale().powi(3)) {
        return Err(Error::NotUnimodular(det));
    }
    let trace = m.trace();
    let margin = trace_discriminant(trace);
    let kind = if margin > EPS_CLASS {
        IsometryKind::Loxodromic
    } else if margin < -EPS_CLASS {
        IsometryKind::RegularElliptic
    } else {
        IsometryKind::Boundary
    };
    Ok(IsometryClass { kind, margin, trace })
}
