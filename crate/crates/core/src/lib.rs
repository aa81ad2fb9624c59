//! Discreteness of complex hyperbolic triangle groups of type `[m₁, m₂, 0; 0]`.
//!
//! The group `⟨R₁, R₂, R₃⟩` is generated by complex reflections of order 2 in
//! three complex geodesics `C₁, C₂, C₃` in `H²_ℂ`, where `C₁, C₂` are asymptotic
//! and the other pairs are at distances `m₁, m₂, m₃`. The crate certifies
//! discreteness and faithfulness of such groups, scans parameter regions and
//! checks the disjointness of the underlying fundamental domains numerically.

pub mod certify;
pub mod error;
pub mod format;
pub mod hermitian;
pub mod oracle;
pub mod scan;
pub mod siegel;
pub mod tolerance;
pub mod triangle;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub struct Introduction;
    #[doc = include_str!("../../../book/src/hermitian.md")]
    pub struct Hermitian;
    #[doc = include_str!("../../../book/src/triangle.md")]
    pub struct Triangle;
    #[doc = include_str!("../../../book/src/certify.md")]
    pub struct Certify;
    #[doc = include_str!("../../../book/src/siegel.md")]
    pub struct Siegel;
    #[doc = include_str!("../../../book/src/oracle.md")]
    pub struct Oracle;
    #[doc = include_str!("../../../book/src/scan.md")]
    pub struct Scan;
    #[doc = include_str!("../../../book/src/tolerances.md")]
    pub struct Tolerances;
}
