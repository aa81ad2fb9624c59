//! Brute-force checks of the ping-pong hypotheses.
//!
//! The certificates reduce disjointness of infinitely many disks or spheres
//! to a few closed-form inequalities. This module enumerates group words as
//! explicit matrix products and measures the distances directly.

use std::fmt;
use std::io::Write;

use nalgebra::Matrix2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::format::sig12;
use crate::hermitian::{cvec, ComplexVector3, IsometryMatrix};
use crate::siegel::{cygan_distance, generators_zero, h_value, HeisenbergPoint, ZeroParams};
use crate::tolerance::{EPS_FORM, EPS_GEO};
use crate::triangle::{generators, p3_vector, projected_disk, v_coordinate, Generators, TriangleParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Letter {
    R1,
    R2,
    R3,
}

impl Letter {
    fn matrix<'a>(&self, g: &'a Generators) -> &'a IsometryMatrix {
        match self {
            Letter::R1 => &g.r1,
            Letter::R2 => &g.r2,
            Letter::R3 => &g.r3,
        }
    }
}

/// A word in the generating involutions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct GroupWord {
    letters: Vec<Letter>,
}

impl GroupWord {
    /// Builds the freely reduced form: adjacent equal letters cancel.
    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        GroupWord { letters: out }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| w[0] != w[1])
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// `(R₂R₁)ⁿ`; negative powers are `(R₁R₂)^{|n|}`.
    pub fn r2r1_power(n: i64) -> Self {
        let pair = if n >= 0 { [Letter::R2, Letter::R1] } else { [Letter::R1, Letter::R2] };
        GroupWord::new(std::iter::repeat_n(pair, n.unsigned_abs() as usize).flatten())
    }

    /// `R₁(R₂R₁)ⁿ`.
    pub fn r1_r2r1_power(n: i64) -> Self {
        GroupWord::new(std::iter::once(Letter::R1).chain(Self::r2r1_power(n).letters))
    }

    /// Product of the letter matrices, left to right.
    pub fn evaluate(&self, g: &Generators) -> IsometryMatrix {
        let model = g.r1.model();
        self.letters.iter().fold(IsometryMatrix::identity(model), |acc, l| &acc * l.matrix(g))
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("id");
        }
        let s: Vec<&str> = self
            .letters
            .iter()
            .map(|l| match l {
                Letter::R1 => "R1",
                Letter::R2 => "R2",
                Letter::R3 => "R3",
            })
            .collect();
        f.write_str(&s.join(" "))
    }
}

/// Row families of an oracle report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WordFamily {
    /// `(R₂R₁)ⁿ(S₃)` against `S₃`.
    R2r1Power,
    /// `R₁(R₂R₁)ⁿ(S₃)` against `S₃`.
    R1R2r1Power,
    /// `(R₂R₁)ⁿ(S₃)` against the point `C₁ ∩ C₁₂`.
    MirrorC1,
    /// `(R₂R₁)ⁿ(S₃)` against the point `C₂ ∩ C₁₂`.
    MirrorC2,
    /// `(R₂R₁)ⁿ(S)` against the unit Cygan sphere `S`.
    CyganTranslation,
}

impl WordFamily {
    pub fn label(self) -> &'static str {
        match self {
            WordFamily::R2r1Power => "r2r1_power",
            WordFamily::R1R2r1Power => "r1_r2r1_power",
            WordFamily::MirrorC1 => "mirror_c1",
            WordFamily::MirrorC2 => "mirror_c2",
            WordFamily::CyganTranslation => "cygan_translation",
        }
    }
}

#[derive(Clone, Debug)]
pub struct G2Element {
    pub family: WordFamily,
    pub n: i64,
    pub word: GroupWord,
    pub matrix: IsometryMatrix,
}

/// Nontrivial elements `(R₂R₁)ⁿ` and `R₁(R₂R₁)ⁿ` with `|n| ≤ max_n`.
///
/// Every element of `⟨R₁, R₂⟩` has exactly one of these forms, so the list
/// has `4·max_n + 1` distinct entries.
pub fn enumerate_g2_words(g: &Generators, max_n: u32) -> Vec<G2Element> {
    let max_n = max_n as i64;
    let mut out = Vec::new();
    for n in -max_n..=max_n {
        if n != 0 {
            let word = GroupWord::r2r1_power(n);
            out.push(G2Element { family: WordFamily::R2r1Power, n, matrix: word.evaluate(g), word });
        }
    }
    for n in -max_n..=max_n {
        let word = GroupWord::r1_r2r1_power(n);
        out.push(G2Element { family: WordFamily::R1R2r1Power, n, matrix: word.evaluate(g), word });
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Proximity {
    Disjoint,
    /// Within `EPS_GEO` of touching; never counted as an overlap.
    Tangent,
    Overlap,
}

impl Proximity {
    pub fn classify(distance: f64, threshold: f64) -> Self {
        if distance < threshold - EPS_GEO {
            Proximity::Overlap
        } else if distance <= threshold + EPS_GEO {
            Proximity::Tangent
        } else {
            Proximity::Disjoint
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Proximity::Disjoint => "disjoint",
            Proximity::Tangent => "tangent",
            Proximity::Overlap => "overlap",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleRow {
    pub family: WordFamily,
    pub n: i64,
    pub distance: f64,
    pub threshold: f64,
    pub verdict: Proximity,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub rows: Vec<OracleRow>,
    /// `h(cos α)` for Cygan reports.
    pub h_margin: Option<f64>,
}

impl OracleReport {
    pub fn overlaps(&self) -> impl Iterator<Item = &OracleRow> {
        self.rows.iter().filter(|r| r.verdict == Proximity::Overlap)
    }

    pub fn has_overlap(&self) -> bool {
        self.overlaps().next().is_some()
    }

    pub fn row(&self, family: WordFamily, n: i64) -> Option<&OracleRow> {
        self.rows.iter().find(|r| r.family == family && r.n == n)
    }

    /// CSV with columns `family,n,distance,threshold,verdict`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["family", "n", "distance", "threshold", "verdict"])?;
        for r in &self.rows {
            out.write_record([
                r.family.label().to_string(),
                r.n.to_string(),
                sig12(r.distance),
                sig12(r.threshold),
                r.verdict.label().to_string(),
            ])?;
        }
        out.flush()?;
        Ok(())
    }
}

/// Distance between the points of `H²_ℂ` spanned by `g·p` and `p`.
///
/// Uses `⟨gp, gp⟩ = ⟨p, p⟩`, which keeps precision when `g` is large.
fn displacement(g: &IsometryMatrix, p: &ComplexVector3) -> f64 {
    let model = g.model();
    let pp = model.norm_sq(p);
    let ratio = model.product(&g.apply(p), p).norm() / pp.abs();
    2. * ratio.max(1.).acosh()
}

/// Distance from `g·p` to `q`, taking `⟨gp, gp⟩ = ⟨p, p⟩` from `p` directly.
fn image_distance(g: &IsometryMatrix, p: &ComplexVector3, q: &ComplexVector3) -> f64 {
    let model = g.model();
    let ratio = model.product(&g.apply(p), q).norm() / (model.norm_sq(p) * model.norm_sq(q)).sqrt();
    2. * ratio.max(1.).acosh()
}

/// Lower-right 2×2 block of a `⟨R₁, R₂⟩` element, its action on `C₁₂`.
///
/// Fails if the matrix does not preserve the `e₁` axis.
pub fn restrict_to_c12(g: &IsometryMatrix) -> Result<Matrix2<Complex64>> {
    let m = g.matrix();
    let off = [m[(0, 1)], m[(0, 2)], m[(1, 0)], m[(2, 0)]].iter().map(|c| c.norm()).fold(0., f64::max);
    if off > EPS_FORM * g.scale() {
        return Err(Error::NotFormPreserving { model: g.model(), residual: off });
    }
    Ok(Matrix2::new(m[(1, 1)], m[(1, 2)], m[(2, 1)], m[(2, 2)]))
}

/// Möbius action of a restricted block on the unit disk.
pub fn disk_action(b: &Matrix2<Complex64>, u: Complex64) -> Complex64 {
    (b[(0, 0)] * u + b[(0, 1)]) / (b[(1, 0)] * u + b[(1, 1)])
}

/// Disk-disjointness report for `S₃` and its `⟨R₁, R₂⟩`-images in `C₁₂`.
///
/// All images share the radius `d₃`, so two of them are disjoint exactly when
/// their centers are at least `2d₃` apart. The mirror rows compare
/// `(R₂R₁)ⁿ(p₃)` with the points `v₁ = C₁ ∩ C₁₂` and `v₀ = C₂ ∩ C₁₂` against `d₃`.
pub fn check_disk_disjointness(p: &TriangleParams, max_n: u32) -> Result<OracleReport> {
    let disk = projected_disk(p)?;
    let g = generators(p);
    let center = p3_vector(p);
    let mut report = OracleReport::default();
    for e in enumerate_g2_words(&g, max_n) {
        let distance = displacement(&e.matrix, &center);
        let threshold = 2. * disk.radius;
        report.rows.push(OracleRow {
            family: e.family,
            n: e.n,
            distance,
            threshold,
            verdict: Proximity::classify(distance, threshold),
        });
    }
    let v1 = v_coordinate(p.r3(), 1);
    let mirrors = [
        (WordFamily::MirrorC1, cvec(0.0.into(), v1.into(), 1.0.into())),
        (WordFamily::MirrorC2, cvec(0.0.into(), 0.0.into(), 1.0.into())),
    ];
    for (family, point) in mirrors {
        for n in 1..=max_n as i64 {
            let distance = image_distance(&GroupWord::r2r1_power(n).evaluate(&g), &center, &point);
            report.rows.push(OracleRow {
                family,
                n,
                distance,
                threshold: disk.radius,
                verdict: Proximity::classify(distance, disk.radius),
            });
        }
    }
    Ok(report)
}

/// Cygan separation of `S` from `(R₂R₁)ⁿ(S)`, `1 ≤ n ≤ max_n`.
///
/// `ρ₀ ≥ 2` is sufficient for disjointness of two unit spheres; the raw
/// distance is reported so near misses stay inspectable.
pub fn check_cygan_disjointness(z: &ZeroParams, max_n: u32) -> Result<OracleReport> {
    let g = generators_zero(z);
    let r2r1 = &g.r2 * &g.r1;
    let o = HeisenbergPoint::ORIGIN;
    let mut report = OracleReport { rows: Vec::new(), h_margin: Some(h_value(z.r1(), z.r2(), z.cos_alpha())) };
    for n in 1..=max_n as i64 {
        let image = HeisenbergPoint::from_lift(&r2r1.pow(n).apply(&o.lift()))?;
        let distance = cygan_distance(&o, &image);
        report.rows.push(OracleRow {
            family: WordFamily::CyganTranslation,
            n,
            distance,
            threshold: 2.,
            verdict: Proximity::classify(distance, 2.),
        });
    }
    Ok(report)
}
