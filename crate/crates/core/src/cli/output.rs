use std::fmt::Write as _;
use std::fs;
use std::io::Write;

use serde::{Deserialize, Serialize};

use super::RunConfig;
use crate::equidist::{HistogramBin, TargetLaw};
use crate::error::Result;
use crate::moments::MomentReport;
use crate::verify::CheckRecord;

/// One row of `moments` output. Column order is the CSV schema.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentRow {
    pub p: u64,
    pub kind: String,
    pub kappa: Option<f64>,
    pub k: Option<u32>,
    pub l: Option<u32>,
    pub n: Option<i64>,
    pub re: Option<f64>,
    pub im: Option<f64>,
    pub predicted: Option<f64>,
    pub abs_err: Option<f64>,
    pub rel_err: Option<f64>,
    pub bound_ratio: Option<f64>,
    pub wall_ms: f64,
    pub error: Option<String>,
}

impl MomentRow {
    pub(crate) fn blank(p: u64, kind: &str) -> Self {
        Self {
            p,
            kind: kind.to_string(),
            kappa: None,
            k: None,
            l: None,
            n: None,
            re: None,
            im: None,
            predicted: None,
            abs_err: None,
            rel_err: None,
            bound_ratio: None,
            wall_ms: 0.0,
            error: None,
        }
    }

    pub(crate) fn fill(&mut self, r: &MomentReport) {
        self.re = Some(r.computed.re);
        self.im = Some(r.computed.im);
        self.predicted = Some(r.predicted.re);
        self.abs_err = Some(r.abs_err);
        self.rel_err = r.rel_err;
        self.bound_ratio = Some(r.bound_ratio);
    }
}

/// `lvalues` rows: the moment schema with `s` after `kind`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LValueRow {
    pub p: u64,
    pub kind: String,
    pub s: Option<f64>,
    pub kappa: Option<f64>,
    pub k: Option<u32>,
    pub l: Option<u32>,
    pub n: Option<i64>,
    pub re: Option<f64>,
    pub im: Option<f64>,
    pub predicted: Option<f64>,
    pub abs_err: Option<f64>,
    pub rel_err: Option<f64>,
    pub bound_ratio: Option<f64>,
    pub wall_ms: f64,
    pub error: Option<String>,
}

impl LValueRow {
    pub(crate) fn from_moment(m: MomentRow, s: Option<f64>) -> Self {
        Self {
            p: m.p,
            kind: m.kind,
            s,
            kappa: m.kappa,
            k: m.k,
            l: m.l,
            n: m.n,
            re: m.re,
            im: m.im,
            predicted: m.predicted,
            abs_err: m.abs_err,
            rel_err: m.rel_err,
            bound_ratio: m.bound_ratio,
            wall_ms: m.wall_ms,
            error: m.error,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquidistRow {
    pub p: u64,
    pub law: String,
    pub sample: String,
    pub count: usize,
    /// `ks` or `sector-discrepancy`
    pub metric: String,
    pub statistic: f64,
    /// Sample points outside the support of the law.
    pub clamped: usize,
    pub wall_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub p: u64,
    pub family_size: usize,
    pub max_abs_k: f64,
    pub weil_ok: bool,
    pub route_discrepancy: f64,
    pub kappa: f64,
    pub moment_rel_err: f64,
    pub bound_ratio: f64,
    pub ks_abs: f64,
    pub wall_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub pass: bool,
    pub total: usize,
    pub failed: usize,
    pub first_failure: Option<CheckRecord>,
    pub checks: Vec<CheckRecord>,
}

pub(crate) fn csv_string<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| crate::Error::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Writes `rows` as `<name>.csv` / `<name>.json` under `--out`, or to
/// `stdout` when no directory is set (CSV unless only JSON was asked for).
pub(crate) fn emit<T: Serialize>(cfg: &RunConfig, name: &str, rows: &[T], stdout: &mut dyn Write) -> Result<()> {
    match &cfg.out {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            if cfg.formats.csv {
                fs::write(dir.join(format!("{name}.csv")), csv_string(rows)?)?;
            }
            if cfg.formats.json {
                fs::write(dir.join(format!("{name}.json")), serde_json::to_string_pretty(rows)?)?;
            }
        }
        None => {
            if cfg.formats.csv || !cfg.formats.json {
                stdout.write_all(csv_string(rows)?.as_bytes())?;
            } else {
                writeln!(stdout, "{}", serde_json::to_string_pretty(rows)?)?;
            }
        }
    }
    Ok(())
}

const SVG_W: f64 = 800.0;
const SVG_H: f64 = 500.0;
const MARGIN: f64 = 40.0;

/// Bar chart of empirical density per bin, with the target density as a polyline.
pub fn histogram_svg(bins: &[HistogramBin], law: TargetLaw, title: &str) -> String {
    let (lo, hi) = law.support();
    let density = |b: &HistogramBin| b.empirical_mass / (b.bin_hi - b.bin_lo);
    let curve: Vec<(f64, f64)> = (0..=400)
        .map(|i| {
            // keep off the endpoints, where the arcsine densities blow up
            let x = lo + (hi - lo) * (0.0025 + 0.995 * i as f64 / 400.0);
            (x, law.density(x))
        })
        .collect();
    let bar_max = bins.iter().map(density).fold(0.0, f64::max);
    let y_max = (bar_max * 1.1).max(law.density(lo + 0.5 * (hi - lo)) * 2.0).max(1e-12);
    let sx = |x: f64| MARGIN + (x - lo) / (hi - lo) * (SVG_W - 2.0 * MARGIN);
    let sy = |y: f64| SVG_H - MARGIN - y.min(y_max) / y_max * (SVG_H - 2.0 * MARGIN);

    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SVG_W} {SVG_H}" width="{SVG_W}" height="{SVG_H}">"#);
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{SVG_W}" height="{SVG_H}" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{MARGIN}" y="24" font-family="sans-serif" font-size="14">{title}</text>"#);
    for b in bins {
        let (x0, x1) = (sx(b.bin_lo), sx(b.bin_hi));
        let top = sy(density(b));
        let _ = writeln!(
            s,
            r##"<rect x="{x0:.2}" y="{top:.2}" width="{:.2}" height="{:.2}" fill="#9ecae1" stroke="#3182bd"/>"##,
            x1 - x0,
            SVG_H - MARGIN - top
        );
    }
    let pts: Vec<String> = curve.iter().map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y))).collect();
    let _ = writeln!(s, r##"<polyline fill="none" stroke="#d62728" stroke-width="2" points="{}"/>"##, pts.join(" "));
    let _ = writeln!(
        s,
        r##"<line x1="{MARGIN}" y1="{0}" x2="{1}" y2="{0}" stroke="black"/>"##,
        SVG_H - MARGIN,
        SVG_W - MARGIN
    );
    s.push_str("</svg>\n");
    s
}


#[cfg(test)]
mod roundtrip {
    use super::*;
    use proptest::prelude::*;

    fn row() -> impl Strategy<Value = MomentRow> {
        (
            any::<u64>(),
            proptest::option::of(-1e300f64..1e300),
            proptest::option::of(any::<i64>()),
            proptest::option::of(-1e6f64..1e6),
            proptest::option::of("[a-z :,]{0,12}"),
        )
            .prop_map(|(p, re, n, rel, err)| {
                let mut r = MomentRow::blank(p, "abs");
                r.re = re;
                r.n = n;
                r.rel_err = rel;
                r.error = err.filter(|s| !s.is_empty());
                r
            })
    }

    proptest! {
        #[test]
        fn csv_and_json_round_trip(rows in prop::collection::vec(row(), 0..8)) {
            let text = csv_string(&rows).unwrap();
            let back: Vec<MomentRow> = csv::Reader::from_reader(text.as_bytes())
                .deserialize()
                .collect::<std::result::Result<_, _>>()
                .unwrap();
            prop_assert_eq!(&back, &rows);
            let json: Vec<MomentRow> = serde_json::from_str(&serde_json::to_string(&rows).unwrap()).unwrap();
            prop_assert_eq!(json, rows);
        }
    }
}
