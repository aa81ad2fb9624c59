use num_complex::Complex64;
use thiserror::Error;

use crate::hermitian::HermitianModel;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("the zero vector has no projective class")]
    ZeroVector,
    #[error("inputs are proportional, the cross product degenerates")]
    DegenerateCross,
    #[error("expected a negative vector, got <z, z> = {0}")]
    NotNegative(f64),
    #[error("expected a positive polar vector, got <n, n> = {0}")]
    NotPositive(f64),
    #[error("matrix does not preserve the {model:?} form (relative residual {residual:e})")]
    NotFormPreserving { model: HermitianModel, residual: f64 },
    #[error("determinant {0} is not 1")]
    NotUnimodular(Complex64),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("cos(alpha) = {cos_alpha} exceeds the existence bound {bound}")]
    ExistenceBound { cos_alpha: f64, bound: f64 },
    #[error("C3 and C12 are not ultra-parallel (M = {0} <= 1)")]
    NotUltraParallel(f64),
    #[error("{0} is not inside the open unit disk")]
    OutsideDisk(Complex64),
    #[error("negative radicand {0} in the axis projection")]
    NegativeRadicand(f64),
    #[error("axis projection {0} is outside (-1, 1)")]
    ProjectionOutOfRange(f64),
    #[error("X = {0} < 0, r1 must not be smaller than r2")]
    NegativeX(f64),
    #[error("X = 0 (r1 = r2) lies in no region K_n")]
    NoRegionIndex,
    #[error("invalid scan config: {0}")]
    Config(String),
    #[error("empty table, nothing to plot")]
    EmptyTable,
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Toml(#[from] toml::de::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
