//! Parameter-grid scans of the regions `K_j′` (for `m₃ > 0`) and `𝒦_n′`
//! (for `m₃ = 0`), with CSV and SVG output.
//!
//! A scan is described by a flat TOML file:
//!
//! ```toml
//! mode = "ultra"      # or "zero"
//! r3 = 1.01           # ultra only
//! j0 = 3              # ultra only
//! x_min = 1.0
//! x_max = 10.0
//! x_step = 0.25
//! y_min = 1.0
//! y_max = 10.0
//! y_step = 0.25
//! csv = "regions.csv" # optional
//! svg = "regions.svg" # optional
//! ```
//!
//! In ultra mode the grid axes are `(r₁, r₂)`, in zero mode `(X, Y)`.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::certify::regions_containing;
use crate::error::{Error, Result};
use crate::format::sig12;
use crate::siegel::{kn_condition_lhs, region_index_from_x, t_n_zero, xy_to_r};

/// Largest grid accepted, to catch typos in step sizes.
pub const MAX_CELLS: usize = 4_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScanMode {
    #[serde(rename = "ultra", alias = "ultra_kj")]
    UltraKj,
    #[serde(rename = "zero", alias = "zero_kn")]
    ZeroKn,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanConfig {
    pub mode: ScanMode,
    #[serde(default)]
    pub r3: Option<f64>,
    #[serde(default)]
    pub j0: Option<u32>,
    pub x_min: f64,
    pub x_max: f64,
    pub x_step: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub y_step: f64,
    #[serde(default)]
    pub csv: Option<PathBuf>,
    #[serde(default)]
    pub svg: Option<PathBuf>,
}

impl ScanConfig {
    pub fn from_toml_str(s: &str) -> Result<Self> {
        let cfg: ScanConfig = toml::from_str(s)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_toml_str(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        for (name, v) in [
            ("x_min", self.x_min),
            ("x_max", self.x_max),
            ("x_step", self.x_step),
            ("y_min", self.y_min),
            ("y_max", self.y_max),
            ("y_step", self.y_step),
        ] {
            if !v.is_finite() {
                return bad(format!("{name} must be finite"));
            }
        }
        if !(self.x_step > 0. && self.y_step > 0.) {
            return bad("grid steps must be positive".into());
        }
        if self.x_min > self.x_max || self.y_min > self.y_max {
            return bad("grid ranges must be nonempty (min <= max)".into());
        }
        if self.mode == ScanMode::UltraKj {
            match self.r3 {
                Some(r3) if r3 > 1. && r3.is_finite() => {}
                Some(r3) => return bad(format!("r3 must exceed 1, got {r3}")),
                None => return bad("ultra mode needs r3".into()),
            }
            match self.j0 {
                Some(j0) if j0 >= 1 => {}
                _ => return bad("ultra mode needs j0 >= 1".into()),
            }
        }
        let cells = self.axis_len(true) * self.axis_len(false);
        if cells > MAX_CELLS as f64 {
            return bad(format!("grid has {cells} cells, limit is {MAX_CELLS}"));
        }
        Ok(())
    }

    fn bounds(&self, x: bool) -> (f64, f64, f64) {
        if x {
            (self.x_min, self.x_max, self.x_step)
        } else {
            (self.y_min, self.y_max, self.y_step)
        }
    }

    fn axis_len(&self, x: bool) -> f64 {
        let (lo, hi, step) = self.bounds(x);
        ((hi - lo) / step + 1e-9).floor() + 1.
    }

    fn axis(&self, x: bool) -> Vec<f64> {
        let (lo, _, step) = self.bounds(x);
        (0..self.axis_len(x) as usize).map(|i| lo + i as f64 * step).collect()
    }

    /// Grid points, `x` outer and `y` inner.
    pub fn grid(&self) -> Vec<(f64, f64)> {
        let ys = self.axis(false);
        self.axis(true).into_iter().flat_map(|x| ys.iter().map(move |&y| (x, y))).collect()
    }
}

/// One `(r₁, r₂)` cell of an ultra scan.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UltraRow {
    pub r1: f64,
    pub r2: f64,
    /// Region index `j` with `(r₁, r₂) ∈ K_j`, preferring `K_j′` on ties.
    pub j: Option<u32>,
    pub in_kj: bool,
    pub in_kj_prime: bool,
    pub t_j: Option<f64>,
}

impl UltraRow {
    /// `t_j > 1`: the word is loxodromic for every `α`.
    pub fn always_loxodromic(&self) -> bool {
        self.t_j.is_some_and(|t| t > 1.)
    }
}

/// One `(X, Y)` cell of a zero scan.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroRow {
    pub x: f64,
    pub y: f64,
    pub r1: f64,
    pub r2: f64,
    /// Every `n` with `X` in the strip of `𝒦_n`.
    pub indices: Vec<u32>,
    /// The smallest index meeting the `𝒦_n′` condition, else the one closest to it.
    pub n: Option<u32>,
    pub kn_lhs: Option<f64>,
    pub t_n: Option<f64>,
    pub in_kn_prime: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum ScanRows {
    Ultra(Vec<UltraRow>),
    Zero(Vec<ZeroRow>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanTable {
    pub config: ScanConfig,
    pub rows: ScanRows,
}

impl ScanTable {
    pub fn len(&self) -> usize {
        match &self.rows {
            ScanRows::Ultra(r) => r.len(),
            ScanRows::Zero(r) => r.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        let opt = |v: Option<f64>| v.map(sig12).unwrap_or_default();
        match &self.rows {
            ScanRows::Ultra(rows) => {
                out.write_record(["r1", "r2", "j", "in_kj", "in_kj_prime", "t_j", "t_j_gt_1"])?;
                for r in rows {
                    out.write_record([
                        sig12(r.r1),
                        sig12(r.r2),
                        r.j.map(|j| j.to_string()).unwrap_or_default(),
                        r.in_kj.to_string(),
                        r.in_kj_prime.to_string(),
                        opt(r.t_j),
                        r.always_loxodromic().to_string(),
                    ])?;
                }
            }
            ScanRows::Zero(rows) => {
                out.write_record(["x", "y", "r1", "r2", "indices", "n", "kn_lhs", "in_kn_prime", "t_n"])?;
                for r in rows {
                    let idx: Vec<String> = r.indices.iter().map(u32::to_string).collect();
                    out.write_record([
                        sig12(r.x),
                        sig12(r.y),
                        sig12(r.r1),
                        sig12(r.r2),
                        idx.join(";"),
                        r.n.map(|n| n.to_string()).unwrap_or_default(),
                        opt(r.kn_lhs),
                        r.in_kn_prime.to_string(),
                        opt(r.t_n),
                    ])?;
                }
            }
        }
        out.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is utf-8"))
    }
}

pub fn run_scan(config: &ScanConfig) -> Result<ScanTable> {
    match config.mode {
        ScanMode::UltraKj => scan_ultra(config),
        ScanMode::ZeroKn => scan_zero(config),
    }
}

/// Region memberships over an `(r₁, r₂)` grid. Cells without `1 < r₂ ≤ r₁`
/// are skipped.
pub fn scan_ultra(config: &ScanConfig) -> Result<ScanTable> {
    config.validate()?;
    if config.mode != ScanMode::UltraKj {
        return Err(Error::Config("scan_ultra needs mode = \"ultra\"".into()));
    }
    let (r3, j0) = (config.r3.unwrap_or_default(), config.j0.unwrap_or_default());
    let cells: Vec<Option<UltraRow>> =
        config.grid().into_par_iter().map(|(r1, r2)| ultra_cell(r1, r2, r3, j0)).collect::<Result<_>>()?;
    Ok(ScanTable { config: config.clone(), rows: ScanRows::Ultra(cells.into_iter().flatten().collect()) })
}

fn ultra_cell(r1: f64, r2: f64, r3: f64, j0: u32) -> Result<Option<UltraRow>> {
    if !(1. < r2 && r2 <= r1) {
        return Ok(None);
    }
    let found = regions_containing(r1, r2, r3, j0)?;
    let best = found.iter().find(|m| m.in_kj_prime).or(found.first());
    Ok(Some(UltraRow {
        r1,
        r2,
        j: best.map(|m| m.j),
        in_kj: best.is_some(),
        in_kj_prime: best.is_some_and(|m| m.in_kj_prime),
        t_j: best.map(|m| m.t_j),
    }))
}

/// `𝒦_n′` membership over an `(X, Y)` grid. Cells with `X < 0` or `Y ≤ 0`
/// are skipped.
pub fn scan_zero(config: &ScanConfig) -> Result<ScanTable> {
    config.validate()?;
    if config.mode != ScanMode::ZeroKn {
        return Err(Error::Config("scan_zero needs mode = \"zero\"".into()));
    }
    let cells: Vec<Option<ZeroRow>> =
        config.grid().into_par_iter().map(|(x, y)| zero_cell(x, y)).collect::<Result<_>>()?;
    Ok(ScanTable { config: config.clone(), rows: ScanRows::Zero(cells.into_iter().flatten().collect()) })
}

fn zero_cell(x: f64, y: f64) -> Result<Option<ZeroRow>> {
    if !(x >= 0. && y > 0.) {
        return Ok(None);
    }
    let (r1, r2) = xy_to_r(x, y)?;
    let indices = match region_index_from_x(x) {
        Ok(ns) => ns,
        Err(Error::NoRegionIndex) => Vec::new(),
        Err(e) => return Err(e),
    };
    let scored: Vec<(u32, f64)> = indices.iter().map(|&n| (n, kn_condition_lhs(r1, r2, n))).collect();
    let best = scored.iter().find(|c| c.1 >= 0.).or_else(|| scored.iter().max_by(|a, b| a.1.total_cmp(&b.1))).copied();
    Ok(Some(ZeroRow {
        x,
        y,
        r1,
        r2,
        n: best.map(|b| b.0),
        kn_lhs: best.map(|b| b.1),
        t_n: best.map(|b| t_n_zero(r1, r2, b.0)),
        in_kn_prime: best.is_some_and(|b| b.1 >= 0.),
        indices,
    }))
}

const PALETTE: [(&str, &str); 6] = [
    ("#b2182b", "#f4a582"),
    ("#2166ac", "#92c5de"),
    ("#1b7837", "#a6dba0"),
    ("#762a83", "#c2a5cf"),
    ("#8c510a", "#dfc27d"),
    ("#01665e", "#80cdc1"),
];
const OUTSIDE_PRIME: &str = "#d9d9d9";
const NO_REGION: &str = "#ffffff";

const WIDTH: f64 = 640.;
const HEIGHT: f64 = 640.;
const MARGIN: f64 = 60.;

fn color(index: u32, dark: bool) -> &'static str {
    let pair = PALETTE[(index.max(1) as usize - 1) % PALETTE.len()];
    if dark {
        pair.0
    } else {
        pair.1
    }
}

/// Renders a scan as a deterministic SVG region plot.
///
/// Ultra scans color `K_j′` by `j`, dark where `t_j > 1` and light where
/// `t_j ≤ 1`. Zero scans color `𝒦_n′` by `n` and draw the strip boundaries
/// `X = 2/n`.
pub fn emit_svg(table: &ScanTable) -> Result<String> {
    if table.is_empty() {
        return Err(Error::EmptyTable);
    }
    let c = &table.config;
    let (x0, x1) = (c.x_min - c.x_step / 2., c.x_max + c.x_step / 2.);
    let (y0, y1) = (c.y_min - c.y_step / 2., c.y_max + c.y_step / 2.);
    let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2. * MARGIN);
    let sy = |y: f64| HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2. * MARGIN);
    let cw = c.x_step / (x1 - x0) * (WIDTH - 2. * MARGIN);
    let ch = c.y_step / (y1 - y0) * (HEIGHT - 2. * MARGIN);

    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    )
    .unwrap();
    writeln!(s, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#).unwrap();
    let mut cell = |x: f64, y: f64, fill: &str| {
        writeln!(
            s,
            r#"<rect x="{:.3}" y="{:.3}" width="{:.3}" height="{:.3}" fill="{fill}"/>"#,
            sx(x) - cw / 2.,
            sy(y) - ch / 2.,
            cw,
            ch
        )
        .unwrap();
    };
    let (xlabel, ylabel, title) = match &table.rows {
        ScanRows::Ultra(rows) => {
            for r in rows {
                let fill = match r.j {
                    Some(j) if r.in_kj_prime => color(j, r.always_loxodromic()),
                    Some(_) => OUTSIDE_PRIME,
                    None => NO_REGION,
                };
                cell(r.r1, r.r2, fill);
            }
            ("r₁", "r₂", format!("K_j′ regions, r₃ = {}, j₀ = {}", c.r3.unwrap_or_default(), c.j0.unwrap_or_default()))
        }
        ScanRows::Zero(rows) => {
            for r in rows {
                let fill = match r.n {
                    Some(n) if r.in_kn_prime => color(n, true),
                    Some(_) => OUTSIDE_PRIME,
                    None => NO_REGION,
                };
                cell(r.x, r.y, fill);
            }
            ("X", "Y", "𝒦_n′ regions, m₃ = 0".to_string())
        }
    };
    if let ScanRows::Zero(_) = table.rows {
        for n in 1..=1000u32 {
            let x = 2. / n as f64;
            if x < x0 {
                break;
            }
            if x <= x1 {
                writeln!(
                    s,
                    r#"<line x1="{0:.3}" y1="{1:.3}" x2="{0:.3}" y2="{2:.3}" stroke="black" stroke-width="0.8" stroke-dasharray="4 3"/>"#,
                    sx(x),
                    MARGIN,
                    HEIGHT - MARGIN
                )
                .unwrap();
            }
        }
    }
    axes(&mut s, (x0, x1), (y0, y1), &sx, &sy);
    writeln!(
        s,
        r#"<text x="{:.3}" y="{:.3}" text-anchor="middle" font-size="16">{xlabel}</text>"#,
        WIDTH / 2.,
        HEIGHT - 15.
    )
    .unwrap();
    writeln!(
        s,
        r#"<text x="18" y="{:.3}" text-anchor="middle" font-size="16" transform="rotate(-90 18 {:.3})">{ylabel}</text>"#,
        HEIGHT / 2.,
        HEIGHT / 2.
    )
    .unwrap();
    writeln!(s, r#"<text x="{:.3}" y="30" text-anchor="middle" font-size="16">{title}</text>"#, WIDTH / 2.).unwrap();
    s.push_str("</svg>\n");
    Ok(s)
}

fn axes(s: &mut String, (x0, x1): (f64, f64), (y0, y1): (f64, f64), sx: &dyn Fn(f64) -> f64, sy: &dyn Fn(f64) -> f64) {
    writeln!(
        s,
        r#"<rect x="{MARGIN}" y="{MARGIN}" width="{:.3}" height="{:.3}" fill="none" stroke="black"/>"#,
        WIDTH - 2. * MARGIN,
        HEIGHT - 2. * MARGIN
    )
    .unwrap();
    for k in 0..=4 {
        let f = k as f64 / 4.;
        let (x, y) = (x0 + f * (x1 - x0), y0 + f * (y1 - y0));
        writeln!(
            s,
            r#"<text x="{:.3}" y="{:.3}" text-anchor="middle" font-size="11">{x:.2}</text>"#,
            sx(x),
            HEIGHT - MARGIN + 16.
        )
        .unwrap();
        writeln!(
            s,
            r#"<text x="{:.3}" y="{:.3}" text-anchor="end" font-size="11">{y:.2}</text>"#,
            MARGIN - 6.,
            sy(y) + 4.
        )
        .unwrap();
    }
}

/// Writes the CSV and SVG files named in the config.
pub fn write_outputs(table: &ScanTable) -> Result<()> {
    if let Some(path) = &table.config.csv {
        table.write_csv(std::fs::File::create(path)?)?;
    }
    if let Some(path) = &table.config.svg {
        std::fs::write(path, emit_svg(table)?)?;
    }
    Ok(())
}
