//! Self-contained SVG charts: per-variant cost boxplots and a mean
//! runtime bar chart.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use super::csv_io::{write_csv, RuntimeCsv, RUNTIME_SCHEMA};
use super::{SummaryRow, Variant};
use crate::error::{Error, Result};

/// Five-number summary with Tukey hinges and 1.5 IQR fences.
///
/// Hinges are the medians of the lower and upper halves of the sorted
/// sample; for odd sizes the median belongs to both halves.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxStats {
    pub median: f64,
    pub q1: f64,
    pub q3: f64,
    /// Most extreme observations inside the fences.
    pub whisker_low: f64,
    pub whisker_high: f64,
    pub outliers: Vec<f64>,
}

fn median_sorted(v: &[f64]) -> f64 {
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    }
}

impl BoxStats {
    pub fn tukey(values: &[f64]) -> Option<BoxStats> {
        if values.is_empty() {
            return None;
        }
        let mut v = values.to_vec();
        v.sort_by(f64::total_cmp);
        let n = v.len();
        let (lower, upper) = if n % 2 == 1 {
            (&v[..=n / 2], &v[n / 2..])
        } else {
            (&v[..n / 2], &v[n / 2..])
        };
        let q1 = median_sorted(lower);
        let q3 = median_sorted(upper);
        let iqr = q3 - q1;
        let (lo_fence, hi_fence) = (q1 - 1.5 * iqr, q3 + 1.5 * iqr);
        let inside = v.iter().copied().filter(|x| (lo_fence..=hi_fence).contains(x));
        let whisker_low = inside.clone().fold(f64::INFINITY, f64::min);
        let whisker_high = inside.fold(f64::NEG_INFINITY, f64::max);
        let outliers = v
            .iter()
            .copied()
            .filter(|x| !(lo_fence..=hi_fence).contains(x))
            .collect();
        Some(BoxStats {
            median: median_sorted(&v),
            q1,
            q3,
            whisker_low,
            whisker_high,
            outliers,
        })
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

const PALETTE: [&str; 6] = ["#1f77b4", "#2ca02c", "#d62728", "#ff7f0e", "#9467bd", "#8c564b"];

struct Axis {
    lo: f64,
    hi: f64,
    top: f64,
    bottom: f64,
}

impl Axis {
    fn new(lo: f64, hi: f64, top: f64, bottom: f64) -> Self {
        let (lo, hi) = if hi > lo {
            let pad = (hi - lo) * 0.05;
            (lo - pad, hi + pad)
        } else {
            (lo - 1.0, hi + 1.0)
        };
        Axis { lo, hi, top, bottom }
    }

    fn y(&self, v: f64) -> f64 {
        self.bottom - (v - self.lo) / (self.hi - self.lo) * (self.bottom - self.top)
    }

    fn draw(&self, out: &mut String, left: f64, right: f64) {
        let _ = writeln!(
            out,
            r#"<line x1="{left}" y1="{:.1}" x2="{left}" y2="{:.1}" stroke="black"/>"#,
            self.top, self.bottom
        );
        for k in 0..=4 {
            let v = self.lo + (self.hi - self.lo) * k as f64 / 4.0;
            let y = self.y(v);
            let _ = writeln!(
                out,
                r##"<line x1="{left}" y1="{y:.1}" x2="{right}" y2="{y:.1}" stroke="#ddd"/>"##
            );
            let _ = writeln!(
                out,
                r#"<text x="{:.1}" y="{:.1}" font-size="11" text-anchor="end">{}</text>"#,
                left - 6.0,
                y + 4.0,
                fmt_tick(v)
            );
        }
    }
}

fn fmt_tick(v: f64) -> String {
    if v.abs() >= 100.0 {
        format!("{v:.0}")
    } else {
        format!("{v:.2}")
    }
}

/// Box-and-whisker chart with one box per `(label, values)` group.
pub fn boxplot_svg(title: &str, groups: &[(String, Vec<f64>)]) -> String {
    let stats: Vec<Option<BoxStats>> = groups.iter().map(|(_, v)| BoxStats::tukey(v)).collect();
    let all = groups.iter().flat_map(|(_, v)| v.iter().copied());
    let lo = all.clone().fold(f64::INFINITY, f64::min);
    let hi = all.fold(f64::NEG_INFINITY, f64::max);
    let (lo, hi) = if lo.is_finite() { (lo, hi) } else { (0.0, 1.0) };

    let (left, slot, top, bottom) = (70.0, 90.0, 40.0, 330.0);
    let width = left + slot * groups.len().max(1) as f64 + 20.0;
    let height = bottom + 50.0;
    let axis = Axis::new(lo, hi, top, bottom);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<text x="{:.1}" y="22" font-size="14" text-anchor="middle">{}</text>"#,
        width / 2.0,
        escape(title)
    );
    axis.draw(&mut out, left, width - 20.0);

    for (k, ((label, _), st)) in groups.iter().zip(&stats).enumerate() {
        let cx = left + slot * (k as f64 + 0.5);
        let color = PALETTE[k % PALETTE.len()];
        let _ = writeln!(out, r#"<g class="box" data-label="{}">"#, escape(label));
        if let Some(s) = st {
            let half = slot * 0.3;
            let (y1, y3) = (axis.y(s.q1), axis.y(s.q3));
            let _ = writeln!(
                out,
                r#"<line x1="{cx:.1}" y1="{:.1}" x2="{cx:.1}" y2="{y3:.1}" stroke="black"/>"#,
                axis.y(s.whisker_high)
            );
            let _ = writeln!(
                out,
                r#"<line x1="{cx:.1}" y1="{y1:.1}" x2="{cx:.1}" y2="{:.1}" stroke="black"/>"#,
                axis.y(s.whisker_low)
            );
            for w in [s.whisker_low, s.whisker_high] {
                let y = axis.y(w);
                let _ = writeln!(
                    out,
                    r#"<line x1="{:.1}" y1="{y:.1}" x2="{:.1}" y2="{y:.1}" stroke="black"/>"#,
                    cx - half / 2.0,
                    cx + half / 2.0
                );
            }
            let _ = writeln!(
                out,
                r#"<rect x="{:.1}" y="{y3:.1}" width="{:.1}" height="{:.1}" fill="{color}" fill-opacity="0.35" stroke="{color}"/>"#,
                cx - half,
                2.0 * half,
                (y1 - y3).max(0.0)
            );
            let ym = axis.y(s.median);
            let _ = writeln!(
                out,
                r#"<line x1="{:.1}" y1="{ym:.1}" x2="{:.1}" y2="{ym:.1}" stroke="black" stroke-width="2"/>"#,
                cx - half,
                cx + half
            );
            for &o in &s.outliers {
                let _ = writeln!(
                    out,
                    r#"<circle class="outlier" cx="{cx:.1}" cy="{:.1}" r="3" fill="none" stroke="{color}"/>"#,
                    axis.y(o)
                );
            }
        }
        let _ = writeln!(
            out,
            r#"<text x="{cx:.1}" y="{:.1}" font-size="11" text-anchor="middle">{}</text>"#,
            bottom + 20.0,
            escape(label)
        );
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    out
}

pub fn emit_boxplot_svg(title: &str, groups: &[(String, Vec<f64>)], path: &Path) -> Result<()> {
    std::fs::write(path, boxplot_svg(title, groups)).map_err(|e| Error::io(path, e))
}

/// Mean wall-clock time per (instance, variant).
pub fn runtime_csv(summaries: &[SummaryRow]) -> Result<String> {
    write_csv(
        RUNTIME_SCHEMA,
        summaries.iter().map(|s| RuntimeCsv {
            instance: s.instance.clone(),
            variant: s.variant,
            runs: s.runs - s.failed,
            mean_wall_ms: s.mean_wall_ms,
        }),
    )
}

/// Grouped bar chart of mean runtimes: one group per instance, one bar per
/// variant.
pub fn runtime_svg(summaries: &[SummaryRow]) -> String {
    let mut instances: Vec<&str> = Vec::new();
    let mut variants: Vec<Variant> = Vec::new();
    for s in summaries {
        if !instances.contains(&s.instance.as_str()) {
            instances.push(&s.instance);
        }
        if !variants.contains(&s.variant) {
            variants.push(s.variant);
        }
    }
    let max = summaries.iter().map(|s| s.mean_wall_ms).fold(0.0, f64::max);
    let bar = 14.0;
    let group_w = bar * variants.len().max(1) as f64 + 24.0;
    let (left, top, bottom) = (70.0, 40.0, 330.0);
    let width = left + group_w * instances.len().max(1) as f64 + 130.0;
    let height = bottom + 50.0;
    let axis = Axis {
        lo: 0.0,
        hi: if max > 0.0 { max * 1.05 } else { 1.0 },
        top,
        bottom,
    };

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<text x="{:.1}" y="22" font-size="14" text-anchor="middle">Mean runtime (ms)</text>"#,
        width / 2.0
    );
    axis.draw(&mut out, left, width - 130.0);
    for (gi, inst) in instances.iter().enumerate() {
        let gx = left + group_w * gi as f64 + 12.0;
        for (vi, v) in variants.iter().enumerate() {
            let Some(s) = summaries
                .iter()
                .find(|s| s.instance == *inst && s.variant == *v)
            else {
                continue;
            };
            let y = axis.y(s.mean_wall_ms);
            let _ = writeln!(
                out,
                r#"<rect class="bar" x="{:.1}" y="{y:.1}" width="{bar}" height="{:.1}" fill="{}"><title>{inst} {v}: {:.3} ms</title></rect>"#,
                gx + bar * vi as f64,
                bottom - y,
                PALETTE[vi % PALETTE.len()],
                s.mean_wall_ms
            );
        }
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" font-size="11" text-anchor="middle">{}</text>"#,
            gx + bar * variants.len() as f64 / 2.0,
            bottom + 20.0,
            escape(inst)
        );
    }
    for (vi, v) in variants.iter().enumerate() {
        let y = top + 18.0 * vi as f64;
        let lx = width - 115.0;
        let _ = writeln!(
            out,
            r#"<rect x="{lx:.1}" y="{y:.1}" width="12" height="12" fill="{}"/><text x="{:.1}" y="{:.1}" font-size="11">{v}</text>"#,
            PALETTE[vi % PALETTE.len()],
            lx + 18.0,
            y + 10.0
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Writes `runtime.csv` and `runtime.svg` into `dir`.
pub fn emit_runtime_report(summaries: &[SummaryRow], dir: &Path) -> Result<(PathBuf, PathBuf)> {
    let csv_path = dir.join("runtime.csv");
    let svg_path = dir.join("runtime.svg");
    std::fs::write(&csv_path, runtime_csv(summaries)?).map_err(|e| Error::io(&csv_path, e))?;
    std::fs::write(&svg_path, runtime_svg(summaries)).map_err(|e| Error::io(&svg_path, e))?;
    Ok((csv_path, svg_path))
}
