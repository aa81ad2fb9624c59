use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use ultraparallel::certify::{certify_all_n, certify_theorem1, t_n_threshold, trace_w, Certificate, Verdict};
use ultraparallel::format::sig12;
use ultraparallel::hermitian::{classify_isometry, IsometryClass};
use ultraparallel::oracle::{check_cygan_disjointness, check_disk_disjointness};
use ultraparallel::scan::{emit_svg, run_scan, ScanConfig};
use ultraparallel::siegel::{certify_theorem3, generators_zero, t_n_zero, trace_w_zero, ZeroCertificate, ZeroParams};
use ultraparallel::triangle::{generators, TriangleParams};

const EXIT_INPUT: u8 = 3;

#[derive(Parser)]
#[command(
    name = "ultraparallel",
    version,
    about = "Discreteness certificates for ultra-parallel complex hyperbolic triangle groups"
)]
struct Cli {
    /// Log more (-v info, -vv debug).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certify a triangle group with m₃ > 0.
    Certify {
        #[command(flatten)]
        point: UltraPoint,
        /// Also brute-force every word index 1..=N.
        #[arg(long, value_name = "N")]
        all_n: Option<u32>,
        /// Print the certificate as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Certify a triangle group with m₃ = 0.
    CertifyZero {
        #[command(flatten)]
        point: ZeroPoint,
        #[arg(long)]
        json: bool,
    },
    /// Region scan driven by a config file.
    Scan {
        #[arg(long, value_name = "FILE")]
        config: PathBuf,
    },
    /// Brute-force orbit check of the disjointness conditions.
    ///
    /// Without --r3/--m3 the m₃ = 0 Cygan-sphere check runs.
    Oracle {
        #[command(flatten)]
        point: AnyPoint,
        #[arg(long, default_value_t = 10)]
        max_n: u32,
        /// Write the CSV here instead of stdout.
        #[arg(long, value_name = "FILE")]
        csv: Option<PathBuf>,
    },
    /// Trace of w⁽ⁿ⁾ = R₁(R₂R₁)ⁿR₃ and its elliptic threshold t_n.
    ///
    /// Without --r3/--m3 the m₃ = 0 formulas are used.
    Trace {
        #[command(flatten)]
        point: AnyPoint,
        #[arg(long)]
        n: u32,
    },
}

/// Either `r` parameters or complex distances `m`; `r = cosh(m/2)`.
#[derive(Args)]
struct UltraPoint {
    #[arg(long, conflicts_with_all = ["m1", "m2", "m3"], requires_all = ["r2", "r3"])]
    r1: Option<f64>,
    #[arg(long)]
    r2: Option<f64>,
    #[arg(long)]
    r3: Option<f64>,
    #[arg(long, requires_all = ["m2", "m3"])]
    m1: Option<f64>,
    #[arg(long)]
    m2: Option<f64>,
    #[arg(long)]
    m3: Option<f64>,
    /// Angular invariant in radians.
    #[arg(long, allow_negative_numbers = true)]
    alpha: f64,
}

#[derive(Args)]
struct ZeroPoint {
    #[arg(long, conflicts_with_all = ["m1", "m2"], requires = "r2")]
    r1: Option<f64>,
    #[arg(long)]
    r2: Option<f64>,
    #[arg(long, requires = "m2")]
    m1: Option<f64>,
    #[arg(long)]
    m2: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    alpha: f64,
}

#[derive(Args)]
struct AnyPoint {
    #[arg(long, conflicts_with_all = ["m1", "m2", "m3"], requires = "r2")]
    r1: Option<f64>,
    #[arg(long)]
    r2: Option<f64>,
    #[arg(long, requires = "r1")]
    r3: Option<f64>,
    #[arg(long, requires = "m2")]
    m1: Option<f64>,
    #[arg(long)]
    m2: Option<f64>,
    #[arg(long, requires = "m1")]
    m3: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    alpha: f64,
}

enum Point {
    Ultra(TriangleParams),
    Zero(ZeroParams),
}

impl UltraPoint {
    fn params(&self) -> Result<TriangleParams> {
        Ok(match (self.r1, self.r2, self.r3, self.m1, self.m2, self.m3) {
            (Some(r1), Some(r2), Some(r3), ..) => TriangleParams::new(r1, r2, r3, self.alpha)?,
            (.., Some(m1), Some(m2), Some(m3)) => TriangleParams::from_distances(m1, m2, m3, self.alpha)?,
            _ => bail!("give --r1 --r2 --r3 or --m1 --m2 --m3"),
        })
    }
}

impl ZeroPoint {
    fn params(&self) -> Result<ZeroParams> {
        Ok(match (self.r1, self.r2, self.m1, self.m2) {
            (Some(r1), Some(r2), ..) => ZeroParams::new(r1, r2, self.alpha)?,
            (.., Some(m1), Some(m2)) => ZeroParams::from_distances(m1, m2, self.alpha)?,
            _ => bail!("give --r1 --r2 or --m1 --m2"),
        })
    }
}

impl AnyPoint {
    fn params(&self) -> Result<Point> {
        let third = self.r3.or(self.m3);
        if third.is_some() {
            let p = UltraPoint {
                r1: self.r1,
                r2: self.r2,
                r3: self.r3,
                m1: self.m1,
                m2: self.m2,
                m3: self.m3,
                alpha: self.alpha,
            };
            return Ok(Point::Ultra(p.params()?));
        }
        let z = ZeroPoint { r1: self.r1, r2: self.r2, m1: self.m1, m2: self.m2, alpha: self.alpha };
        Ok(Point::Zero(z.params()?))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_INPUT) } else { ExitCode::SUCCESS };
        }
    };
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new().filter_level(level).init();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.chain().any(|c| {
        let io = c.downcast_ref::<std::io::Error>().or_else(|| match c.downcast_ref::<ultraparallel::Error>() {
            Some(ultraparallel::Error::Io(io)) => Some(io),
            _ => None,
        });
        io.is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe)
    })
}

fn run(command: Command) -> Result<u8> {
    let mut out = std::io::stdout().lock();
    match command {
        Command::Certify { point, all_n, json } => {
            let p = point.params()?;
            let cert = match all_n {
                Some(n) => certify_all_n(&p, n)?,
                None => certify_theorem1(&p)?,
            };
            if json {
                writeln!(out, "{}", cert.to_json()?)?;
            } else {
                print_certificate(&mut out, &cert)?;
            }
            Ok(exit_code(cert.verdict))
        }
        Command::CertifyZero { point, json } => {
            let cert = certify_theorem3(&point.params()?)?;
            if json {
                writeln!(out, "{}", cert.to_json()?)?;
            } else {
                print_zero_certificate(&mut out, &cert)?;
            }
            Ok(exit_code(cert.verdict))
        }
        Command::Scan { config } => {
            let cfg = ScanConfig::load(&config).with_context(|| format!("reading {}", config.display()))?;
            let table = run_scan(&cfg)?;
            match &cfg.csv {
                Some(path) => table.write_csv(std::fs::File::create(path)?)?,
                None => table.write_csv(&mut out)?,
            }
            if let Some(path) = &cfg.svg {
                if table.is_empty() {
                    log::warn!("empty scan, no SVG written");
                } else {
                    std::fs::write(path, emit_svg(&table)?)?;
                }
            }
            log::info!("{} rows", table.len());
            Ok(0)
        }
        Command::Oracle { point, max_n, csv } => {
            let report = match point.params()? {
                Point::Ultra(p) => check_disk_disjointness(&p, max_n)?,
                Point::Zero(z) => check_cygan_disjointness(&z, max_n)?,
            };
            match csv {
                Some(path) => report.write_csv(std::fs::File::create(path)?)?,
                None => report.write_csv(&mut out)?,
            }
            eprintln!("{} rows, {} overlapping", report.rows.len(), report.overlaps().count());
            Ok(0)
        }
        Command::Trace { point, n } => {
            if n == 0 {
                bail!("--n must be positive");
            }
            let (trace, t_n, cos_alpha, class) = match point.params()? {
                Point::Ultra(p) => {
                    let class = classify_isometry(&generators(&p).word(n as i64))?;
                    (trace_w(&p, n), t_n_threshold(p.r1(), p.r2(), p.r3(), n), p.cos_alpha(), class)
                }
                Point::Zero(z) => {
                    let class = classify_isometry(&generators_zero(&z).word(n as i64))?;
                    (trace_w_zero(z.r1(), z.r2(), z.alpha(), n), t_n_zero(z.r1(), z.r2(), n), z.cos_alpha(), class)
                }
            };
            writeln!(out, "n,trace,trace_margin,t_n,cos_alpha,class")?;
            writeln!(
                out,
                "{n},{},{},{},{},{}",
                sig12(trace),
                sig12(trace - 3.),
                sig12(t_n),
                sig12(cos_alpha),
                class_label(&class)
            )?;
            Ok(0)
        }
    }
}

fn exit_code(v: Verdict) -> u8 {
    v.exit_code() as u8
}

fn class_label(c: &IsometryClass) -> &'static str {
    use ultraparallel::hermitian::IsometryKind::*;
    match c.kind {
        Loxodromic => "loxodromic",
        RegularElliptic => "regular_elliptic",
        Boundary => "boundary",
    }
}

fn verdict_label(v: Verdict) -> &'static str {
    match v {
        Verdict::CertifiedDiscreteFaithful => "certified discrete and faithful",
        Verdict::NotCertified => "not certified",
        Verdict::Inconclusive => "inconclusive",
    }
}

fn print_certificate(out: &mut impl Write, c: &Certificate) -> Result<()> {
    writeln!(out, "r = ({}, {}, {}), alpha = {}", c.r1, c.r2, c.r3, c.alpha)?;
    writeln!(out, "condition 1 margin: {}", sig12(c.cond1_margin))?;
    writeln!(out, "condition 2 margin: {}", sig12(c.cond2_margin))?;
    if let (Some(pi), Some(l)) = (c.axis_projection, c.segment_index) {
        writeln!(out, "axis projection {} in segment {l}", sig12(pi))?;
    }
    for w in &c.word_checks {
        writeln!(
            out,
            "w({}): trace {} margin {} ({})",
            w.n,
            sig12(w.trace),
            sig12(w.trace_margin),
            class_label(&w.class)
        )?;
    }
    for note in &c.notes {
        writeln!(out, "note: {note}")?;
    }
    writeln!(out, "verdict: {}", verdict_label(c.verdict))?;
    Ok(())
}

fn print_zero_certificate(out: &mut impl Write, c: &ZeroCertificate) -> Result<()> {
    writeln!(out, "r = ({}, {}), alpha = {}, (X, Y) = ({}, {})", c.r1, c.r2, c.alpha, sig12(c.x), sig12(c.y))?;
    writeln!(out, "h margin: {}", sig12(c.h_margin))?;
    for k in &c.checks {
        writeln!(
            out,
            "n = {}: K_n lhs {}, t_n {}, trace margin {} ({})",
            k.n,
            sig12(k.kn_lhs),
            sig12(k.t_n),
            sig12(k.trace_margin),
            verdict_label(k.verdict)
        )?;
    }
    for note in &c.notes {
        writeln!(out, "note: {note}")?;
    }
    writeln!(out, "verdict: {}", verdict_label(c.verdict))?;
    Ok(())
}
