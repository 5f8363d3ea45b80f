//! CSV and SVG artifacts for benchmark runs.
//!
//! File layout inside the output directory:
//!
//! * `iters_<solver>_<problem>.csv`: one row per outer iteration
//! * `ktable_tau<tau>.csv`: first-hit counts, `inf` when never reached
//! * `profile_<kind>_tau<tau>.csv`: profile values on the alpha grid
//! * `profile_<kind>_tau<tau>.svg`: line plot of the same curves

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::bench::BenchmarkRun;
use crate::profiles::{CurveKind, FirstHit, ProfileCurve, ProfileTable};
use crate::trust_region::IterationRecord;
use crate::{Error, Result};

pub const ITERATION_HEADER: &str = "k,F,pi1,delta,rho,step_norm,accepted,inner_iters,backtracks,gamma";

/// Profile curves sharing a kind, accuracy level and alpha grid.
#[derive(Debug, Clone)]
pub struct ProfileSet {
    pub kind: CurveKind,
    pub tau: f64,
    pub curves: Vec<ProfileCurve>,
}

/// Formats a float so that it parses back to the same value; non-finite
/// values become `inf`, `-inf` and `nan`.
pub fn fmt_f64(v: f64) -> String {
    if v.is_nan() {
        "nan".to_string()
    } else if v == f64::INFINITY {
        "inf".to_string()
    } else if v == f64::NEG_INFINITY {
        "-inf".to_string()
    } else {
        format!("{v}")
    }
}

/// `1e-3`, `1e-6`, ... as used in file names.
pub fn fmt_tau(tau: f64) -> String {
    format!("{tau:e}")
}

fn fmt_hit(k: FirstHit) -> String {
    k.map_or_else(|| "inf".to_string(), |k| k.to_string())
}

/// File-name-safe version of a label.
fn sanitize(label: &str) -> String {
    label
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '-' || c == '.' {
                c
            } else {
                '_'
            }
        })
        .collect()
}

pub fn iteration_csv(records: &[IterationRecord]) -> String {
    let mut s = String::from(ITERATION_HEADER);
    s.push('\n');
    for r in records {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{},{},{}",
            r.k,
            fmt_f64(r.f),
            fmt_f64(r.pi),
            fmt_f64(r.delta),
            fmt_f64(r.rho.unwrap_or(f64::NAN)),
            fmt_f64(r.step_norm),
            u8::from(r.accepted),
            r.inner_iters,
            r.backtracks,
            fmt_f64(r.gamma_used),
        );
    }
    s
}

pub fn ktable_csv(table: &ProfileTable) -> String {
    let mut s = String::from("problem");
    for label in &table.solvers {
        s.push(',');
        s.push_str(label);
    }
    s.push('\n');
    for (name, row) in table.problems.iter().zip(&table.k) {
        s.push_str(name);
        for &k in row {
            s.push(',');
            s.push_str(&fmt_hit(k));
        }
        s.push('\n');
    }
    s
}

/// Parses the output of [`ktable_csv`].
pub fn parse_ktable(text: &str, tau: f64) -> Result<ProfileTable> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| Error::Parse("empty k-table".into()))?;
    let mut cols = header.split(',').map(str::trim);
    if cols.next() != Some("problem") {
        return Err(Error::Parse("k-table header must start with `problem`".into()));
    }
    let solvers: Vec<String> = cols.map(String::from).collect();
    let mut problems = Vec::new();
    let mut k = Vec::new();
    for (lineno, line) in lines.enumerate() {
        let mut fields = line.split(',').map(str::trim);
        let name = fields.next().unwrap_or_default().to_string();
        let row = fields
            .map(|f| match f {
                "inf" => Ok(None),
                v => v
                    .parse::<usize>()
                    .map(Some)
                    .map_err(|_| Error::Parse(format!("row {}: bad count `{v}`", lineno + 2))),
            })
            .collect::<Result<Vec<_>>>()?;
        if row.len() != solvers.len() {
            return Err(Error::Parse(format!(
                "row {} has {} entries, expected {}",
                lineno + 2,
                row.len(),
                solvers.len()
            )));
        }
        problems.push(name);
        k.push(row);
    }
    ProfileTable::new(solvers, problems, k, tau)
}

/// Reads the accuracy level out of a `ktable_tau<tau>.csv` file name.
pub fn tau_from_ktable_name(path: &Path) -> Option<f64> {
    path.file_stem()?.to_str()?.strip_prefix("ktable_tau")?.parse().ok()
}

/// All curves must share the same alpha grid.
pub fn profile_csv(curves: &[ProfileCurve]) -> String {
    let mut s = String::from("alpha");
    for c in curves {
        s.push(',');
        s.push_str(&c.solver);
    }
    s.push('\n');
    if let Some(first) = curves.first() {
        for (i, (alpha, _)) in first.points.iter().enumerate() {
            s.push_str(&fmt_f64(*alpha));
            for c in curves {
                s.push(',');
                s.push_str(&fmt_f64(c.points[i].1));
            }
            s.push('\n');
        }
    }
    s
}

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

/// Standalone SVG step plot. Data profiles use a `log10(1 + alpha)` axis,
/// performance profiles a `log2(alpha)` axis; points are thinned to roughly
/// log-uniform spacing.
pub fn profile_svg(set: &ProfileSet) -> String {
    let (w, h) = (640.0, 420.0);
    let (left, right, top, bottom) = (60.0, 150.0, 30.0, 50.0);
    let pw = w - left - right;
    let ph = h - top - bottom;
    let xform: fn(f64) -> f64 = match set.kind {
        CurveKind::Data => |a| (1.0 + a).log10(),
        CurveKind::Performance => |a| a.max(1.0).log2(),
    };
    let (xmin, xmax) = set
        .curves
        .iter()
        .flat_map(|c| c.points.iter().map(|p| xform(p.0)))
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| (lo.min(x), hi.max(x)));
    let (xmin, xmax) = if xmin.is_finite() && xmax > xmin {
        (xmin, xmax)
    } else {
        (0.0, 1.0)
    };
    let sx = |x: f64| left + (x - xmin) / (xmax - xmin) * pw;
    let sy = |y: f64| top + (1.0 - y) * ph;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    let title = match set.kind {
        CurveKind::Data => "Data profile",
        CurveKind::Performance => "Performance profile",
    };
    let _ = writeln!(
        s,
        r#"<text x="{}" y="18" text-anchor="middle">{title}, tau = {}</text>"#,
        left + pw / 2.0,
        fmt_tau(set.tau)
    );
    let _ = writeln!(
        s,
        r#"<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
    );
    for i in 0..=4 {
        let y = i as f64 / 4.0;
        let _ = writeln!(
            s,
            r##"<line x1="{left}" y1="{0:.2}" x2="{1}" y2="{0:.2}" stroke="#ddd"/><text x="{2}" y="{3:.2}" text-anchor="end">{y}</text>"##,
            sy(y),
            left + pw,
            left - 6.0,
            sy(y) + 4.0
        );
    }
    let xlabel = match set.kind {
        CurveKind::Data => "iteration budget alpha (log10(1 + alpha) scale)",
        CurveKind::Performance => "ratio alpha (log2 scale)",
    };
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle">{xlabel}</text>"#,
        left + pw / 2.0,
        h - 12.0
    );
    for tick in axis_ticks(set.kind, xmin, xmax) {
        let x = sx(xform(tick));
        let _ = writeln!(
            s,
            r#"<text x="{x:.2}" y="{}" text-anchor="middle">{}</text>"#,
            top + ph + 16.0,
            fmt_f64(tick)
        );
    }
    for (i, c) in set.curves.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let mut pts = String::new();
        let mut prev_y: Option<f64> = None;
        let mut last_x = f64::NEG_INFINITY;
        let n = c.points.len();
        for (j, &(a, y)) in c.points.iter().enumerate() {
            let x = xform(a);
            // keep value changes, the endpoints, and ~400 evenly spaced columns
            let keep = j == 0 || j + 1 == n || prev_y != Some(y) || x - last_x >= (xmax - xmin) / 400.0;
            if !keep {
                continue;
            }
            if let Some(py) = prev_y {
                let _ = write!(pts, "{:.2},{:.2} ", sx(x), sy(py));
            }
            let _ = write!(pts, "{:.2},{:.2} ", sx(x), sy(y));
            prev_y = Some(y);
            last_x = x;
        }
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
            pts.trim_end()
        );
        let ly = top + 14.0 + 18.0 * i as f64;
        let _ = writeln!(
            s,
            r#"<line x1="{0}" y1="{ly}" x2="{1}" y2="{ly}" stroke="{color}" stroke-width="2"/><text x="{2}" y="{3}">{4}</text>"#,
            left + pw + 10.0,
            left + pw + 30.0,
            left + pw + 36.0,
            ly + 4.0,
            c.solver
        );
    }
    s.push_str("</svg>\n");
    s
}

fn axis_ticks(kind: CurveKind, xmin: f64, xmax: f64) -> Vec<f64> {
    match kind {
        CurveKind::Data => [0.0_f64, 9.0, 99.0, 999.0, 9999.0, 99999.0]
            .into_iter()
            .filter(|&a: &f64| (1.0 + a).log10() >= xmin - 1e-12 && (1.0 + a).log10() <= xmax + 1e-12)
            .collect(),
        CurveKind::Performance => (0..=10)
            .map(|e| 2f64.powi(e))
            .filter(|a| a.log2() >= xmin - 1e-12 && a.log2() <= xmax + 1e-12)
            .step_by(2)
            .collect(),
    }
}

fn write(path: PathBuf, contents: &str) -> Result<PathBuf> {
    fs::write(&path, contents).map_err(|e| Error::io(&path, e))?;
    Ok(path)
}

/// Writes every artifact of a benchmark run into `dir` (created if missing)
/// and returns the paths written.
pub fn emit_outputs(dir: &Path, run: &BenchmarkRun, profiles: &[ProfileSet]) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut written = Vec::new();
    for r in &run.results {
        let records = r.outcome.as_ref().map(|o| o.records.as_slice()).unwrap_or(&[]);
        let name = format!("iters_{}_{}.csv", sanitize(&r.solver), sanitize(&r.problem));
        written.push(write(dir.join(name), &iteration_csv(records))?);
    }
    for t in &run.tables {
        written.push(write(
            dir.join(format!("ktable_tau{}.csv", fmt_tau(t.tau))),
            &ktable_csv(t),
        )?);
    }
    for set in profiles {
        let stem = format!("profile_{}_tau{}", set.kind.as_str(), fmt_tau(set.tau));
        written.push(write(dir.join(format!("{stem}.csv")), &profile_csv(&set.curves))?);
        written.push(write(dir.join(format!("{stem}.svg")), &profile_svg(set))?);
    }
    Ok(written)
}
