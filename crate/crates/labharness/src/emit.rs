//! CSV, JSON and SVG output

use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;
use swssb_core::ScalingSeries;

use crate::error::{HarnessError, HarnessResult};
use crate::sweep::SweepRecord;

fn create(path: &Path) -> HarnessResult<BufWriter<File>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;
    }
    File::create(path).map(BufWriter::new).map_err(|e| HarnessError::io(path, e))
}

fn core_io(path: &Path, e: swssb_core::Error) -> HarnessError {
    match e {
        swssb_core::Error::Io(source) => HarnessError::io(path, source),
        other => HarnessError::Config(format!("{}: {other}", path.display())),
    }
}

/// ell,value,stderr columns
pub fn write_csv(series: &ScalingSeries, path: &Path) -> HarnessResult<()> {
    let mut w = create(path)?;
    series.write_csv(&mut w).map_err(|e| core_io(path, e))?;
    w.flush().map_err(|e| HarnessError::io(path, e))
}

pub fn read_csv(path: &Path) -> HarnessResult<ScalingSeries> {
    let f = File::open(path).map_err(|e| HarnessError::io(path, e))?;
    ScalingSeries::read_csv(BufReader::new(f)).map_err(|e| core_io(path, e))
}

/// pretty JSON followed by a newline
pub fn write_json<T: Serialize>(value: &T, path: &Path) -> HarnessResult<()> {
    let mut w = create(path)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w).and_then(|_| w.flush()).map_err(|e| HarnessError::io(path, e))
}

pub fn write_svg(series: &ScalingSeries, overlay: Option<&[(f64, f64)]>, title: &str, path: &Path) -> HarnessResult<()> {
    let mut w = create(path)?;
    w.write_all(render_svg(series, overlay, title).as_bytes())
        .and_then(|_| w.flush())
        .map_err(|e| HarnessError::io(path, e))
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

const W: f64 = 640.0;
const H: f64 = 440.0;
const PAD_L: f64 = 72.0;
const PAD_R: f64 = 24.0;
const PAD_T: f64 = 40.0;
const PAD_B: f64 = 56.0;

struct Axes {
    x: (f64, f64),
    y: (f64, f64),
}

impl Axes {
    fn px(&self, l: f64) -> f64 {
        PAD_L + (l.log10() - self.x.0) / (self.x.1 - self.x.0) * (W - PAD_L - PAD_R)
    }

    fn py(&self, v: f64) -> f64 {
        H - PAD_B - (v.log10() - self.y.0) / (self.y.1 - self.y.0) * (H - PAD_T - PAD_B)
    }
}

fn span(vals: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = vals.filter(|v| *v > 0.0 && v.is_finite()).map(f64::log10).fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| {
        (a.min(v), b.max(v))
    });
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    let (lo, hi) = (lo.floor(), hi.ceil());
    if hi > lo {
        (lo, hi)
    } else {
        (lo, lo + 1.0)
    }
}

/// log-log plot of the series with error bars, and the overlay as a dashed line
pub fn render_svg(series: &ScalingSeries, overlay: Option<&[(f64, f64)]>, title: &str) -> String {
    let over = overlay.unwrap_or(&[]);
    let ax = Axes {
        x: span(series.ell.iter().copied().chain(over.iter().map(|p| p.0))),
        y: span(series.values.iter().copied().chain(over.iter().map(|p| p.1))),
    };
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#);
    let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{}" y="24" text-anchor="middle" font-size="14">{}</text>"#, W / 2.0, escape(title));
    let (x0, x1, y0, y1) = (PAD_L, W - PAD_R, PAD_T, H - PAD_B);
    let _ = writeln!(s, r#"<rect x="{x0}" y="{y0}" width="{}" height="{}" fill="none" stroke="black"/>"#, x1 - x0, y1 - y0);
    for d in (ax.x.0 as i32)..=(ax.x.1 as i32) {
        let x = ax.px(10f64.powi(d));
        let _ = writeln!(s, r#"<line x1="{x:.2}" y1="{y1}" x2="{x:.2}" y2="{}" stroke="black"/>"#, y1 + 5.0);
        let _ = writeln!(s, r#"<text x="{x:.2}" y="{}" text-anchor="middle">1e{d}</text>"#, y1 + 18.0);
    }
    for d in (ax.y.0 as i32)..=(ax.y.1 as i32) {
        let y = ax.py(10f64.powi(d));
        let _ = writeln!(s, r#"<line x1="{}" y1="{y:.2}" x2="{x0}" y2="{y:.2}" stroke="black"/>"#, x0 - 5.0);
        let _ = writeln!(s, r#"<text x="{}" y="{:.2}" text-anchor="end">1e{d}</text>"#, x0 - 8.0, y + 4.0);
    }
    let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle">ell</text>"#, (x0 + x1) / 2.0, H - 16.0);
    let _ = writeln!(
        s,
        r#"<text x="18" y="{}" text-anchor="middle" transform="rotate(-90 18 {})">{}</text>"#,
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0,
        escape(&series.meta.estimator)
    );
    let pts: Vec<String> = over
        .iter()
        .filter(|p| p.0 > 0.0 && p.1 > 0.0)
        .map(|&(l, v)| format!("{:.2},{:.2}", ax.px(l), ax.py(v)))
        .collect();
    if !pts.is_empty() {
        let _ = writeln!(s, r#"<polyline points="{}" fill="none" stroke="firebrick" stroke-dasharray="6 4"/>"#, pts.join(" "));
    }
    for ((&l, &v), &e) in series.ell.iter().zip(&series.values).zip(&series.stderr) {
        if !(l > 0.0 && v > 0.0) {
            continue;
        }
        let (x, y) = (ax.px(l), ax.py(v));
        if e > 0.0 {
            let lo = ax.py((v - e).max(v * 1e-3));
            let _ = writeln!(s, r#"<line x1="{x:.2}" y1="{lo:.2}" x2="{x:.2}" y2="{:.2}" stroke="steelblue"/>"#, ax.py(v + e));
        }
        let _ = writeln!(s, r#"<circle cx="{x:.2}" cy="{y:.2}" r="3" fill="steelblue"/>"#);
    }
    s.push_str("</svg>\n");
    s
}

/// resolve an output path against an optional directory override
pub fn resolve(out_dir: Option<&Path>, p: &str) -> PathBuf {
    match out_dir {
        Some(d) => d.join(Path::new(p).file_name().unwrap_or(p.as_ref())),
        None => PathBuf::from(p),
    }
}

/// write every output named in the record's config, or all three under the config name when only
/// a directory is given; returns the paths written
pub fn emit_record(rec: &SweepRecord, out_dir: Option<&Path>) -> HarnessResult<Vec<PathBuf>> {
    let mut o = rec.config.output.clone();
    if out_dir.is_some() && o.csv.is_none() && o.json.is_none() && o.svg.is_none() {
        let n = &rec.config.name;
        o.csv = Some(format!("{n}.csv"));
        o.json = Some(format!("{n}.json"));
        o.svg = Some(format!("{n}.svg"));
    }
    let mut done = vec![];
    if let Some(p) = &o.csv {
        let p = resolve(out_dir, p);
        write_csv(&rec.series, &p)?;
        done.push(p);
    }
    if let Some(p) = &o.json {
        let p = resolve(out_dir, p);
        write_json(rec, &p)?;
        done.push(p);
    }
    if let Some(p) = &o.svg {
        let p = resolve(out_dir, p);
        write_svg(&rec.series, rec.overlay.as_deref(), &rec.config.name, &p)?;
        done.push(p);
    }
    Ok(done)
}
