use std::fs;
use std::io::Write;
use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;

use super::output::{emit, histogram_svg, EquidistRow, LValueRow, MomentRow, ScanRow, VerifyReport};
use super::RunConfig;
use crate::arith::PrimeContext;
use crate::equidist::{
    clamped_count, empirical_sample, histogram, ks_statistic, planar_discrepancy, HistogramBin, SampleKind, TargetLaw,
};
use crate::error::{Error, Result};
use crate::expsums::{gauss_table, k_family};
use crate::lvalues::{
    frak_s, frak_s_routes, l_at_half, l_at_one, lhalf_second_moment, weighted_moment_l1, weighted_moment_lhalf,
};
use crate::moments::{moment_abs, moment_mixed, moment_star, MomentReport};
use crate::special::{digamma, EULER_GAMMA};
use crate::verify::{verify_constants, verify_prime, CheckRecord, VerifyConfig};

/// Result of a run that did not fail on input.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub pass: bool,
    pub rows: usize,
    /// Human-readable description of the first failing row, if any.
    pub first_failure: Option<String>,
}

impl Outcome {
    fn report(rows: usize) -> Self {
        Self { pass: true, rows, first_failure: None }
    }
}

/// Runs `f` once per prime on a pool of the configured size and returns
/// results in prime order regardless of scheduling.
fn per_prime<T, F>(cfg: &RunConfig, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64) -> Result<T> + Sync,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.effective_threads()?)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("cannot build thread pool: {e}")))?;
    pool.install(|| cfg.primes.par_iter().map(|&p| f(p)).collect())
}

fn millis(t: Instant) -> f64 {
    (t.elapsed().as_secs_f64() * 1e6).round() / 1e3
}

fn moment_row(p: u64, kind: &str, setup: impl FnOnce(&mut MomentRow), r: Result<MomentReport>, t: Instant) -> MomentRow {
    let mut row = MomentRow::blank(p, kind);
    setup(&mut row);
    match r {
        Ok(rep) => row.fill(&rep),
        Err(e) => row.error = Some(e.to_string()),
    }
    row.wall_ms = millis(t);
    row
}

/// One row per `(p, kind, params)`: absolute moments for each `κ` and `n`,
/// mixed moments for each `k:l` and `n`, then normalized real moments.
pub fn cmd_moments(cfg: &RunConfig, out: &mut dyn Write) -> Result<Outcome> {
    let per = per_prime(cfg, |p| {
        let ctx = PrimeContext::new(p)?;
        let fam = k_family(&ctx, cfg.fft)?;
        let mut rows = Vec::new();
        for &kappa in &cfg.kappas {
            for &n in &cfg.ns {
                let t = Instant::now();
                let r = moment_abs(&ctx, &fam, kappa, n);
                rows.push(moment_row(p, "abs", |r| (r.kappa, r.n) = (Some(kappa), Some(n)), r, t));
            }
        }
        for &(k, l) in &cfg.kls {
            for &n in &cfg.ns {
                let t = Instant::now();
                let r = moment_mixed(&ctx, &fam, k, l, n);
                rows.push(moment_row(p, "mixed", |r| (r.k, r.l, r.n) = (Some(k), Some(l), Some(n)), r, t));
            }
        }
        if !cfg.stars.is_empty() {
            let gauss = gauss_table(&ctx, cfg.fft)?;
            for &k in &cfg.stars {
                let t = Instant::now();
                let r = moment_star(&ctx, &fam, &gauss, k);
                rows.push(moment_row(p, "star", |r| r.k = Some(k), r, t));
            }
        }
        Ok(rows)
    })?;
    let rows: Vec<MomentRow> = per.into_iter().flatten().collect();
    emit(cfg, "moments", &rows, out)?;
    Ok(Outcome::report(rows.len()))
}

/// Weighted moments at `s = 1` and `s = 1/2`, the second moment of
/// `L(1/2, χ)`, and two constant rows echoing `𝔖` and `γ`.
pub fn cmd_lvalues(cfg: &RunConfig, out: &mut dyn Write) -> Result<Outcome> {
    let want_one = cfg.s_values.contains(&1.0);
    let want_half = cfg.s_values.contains(&0.5);
    let frak = if want_one { Some(frak_s(1e-8)?) } else { None };
    let per = per_prime(cfg, |p| {
        let ctx = PrimeContext::new(p)?;
        let fam = k_family(&ctx, cfg.fft)?;
        let mut rows = Vec::new();
        if let Some(frak) = frak {
            let lv = l_at_one(&ctx, cfg.fft)?;
            for &kappa in &cfg.kappas {
                let t = Instant::now();
                let r = weighted_moment_l1(&fam, &lv, kappa, frak);
                let m = moment_row(p, "weighted-l1", |r| r.kappa = Some(kappa), r, t);
                rows.push(LValueRow::from_moment(m, Some(1.0)));
            }
        }
        if want_half {
            let lv = l_at_half(&ctx, cfg.fft)?;
            for &kappa in &cfg.kappas {
                let t = Instant::now();
                let r = weighted_moment_lhalf(&fam, &lv, kappa);
                let m = moment_row(p, "weighted-lhalf", |r| r.kappa = Some(kappa), r, t);
                rows.push(LValueRow::from_moment(m, Some(0.5)));
            }
            let t = Instant::now();
            let r = lhalf_second_moment(&fam, &lv);
            rows.push(LValueRow::from_moment(moment_row(p, "lhalf-second", |_| {}, r, t), Some(0.5)));
        }
        Ok(rows)
    })?;
    let mut rows: Vec<LValueRow> = per.into_iter().flatten().collect();

    let t = Instant::now();
    let routes = frak_s_routes();
    let mut c = MomentRow::blank(0, "const_frak_s");
    c.re = Some(routes.series);
    c.im = Some(0.0);
    c.predicted = Some(routes.euler_product);
    c.abs_err = Some(routes.discrepancy());
    c.rel_err = Some(routes.discrepancy() / routes.euler_product);
    c.wall_ms = millis(t);
    rows.push(LValueRow::from_moment(c, None));

    let t = Instant::now();
    let via_digamma = -digamma(1.0)?;
    let mut c = MomentRow::blank(0, "const_euler_gamma");
    c.re = Some(EULER_GAMMA);
    c.im = Some(0.0);
    c.predicted = Some(via_digamma);
    c.abs_err = Some((EULER_GAMMA - via_digamma).abs());
    c.rel_err = Some((EULER_GAMMA - via_digamma).abs() / EULER_GAMMA);
    c.wall_ms = millis(t);
    rows.push(LValueRow::from_moment(c, None));

    emit(cfg, "lvalues", &rows, out)?;
    Ok(Outcome::report(rows.len()))
}

struct EquidistPrime {
    rows: Vec<EquidistRow>,
    hists: Vec<(TargetLaw, SampleKind, Vec<HistogramBin>)>,
}

/// Per prime and law: KS distance of the 1-D sample, or the sector
/// discrepancy of the planar one. With `--out`, histograms go alongside.
pub fn cmd_equidist(cfg: &RunConfig, out: &mut dyn Write) -> Result<Outcome> {
    let per = per_prime(cfg, |p| {
        let ctx = PrimeContext::new(p)?;
        let fam = k_family(&ctx, cfg.fft)?;
        let mut res = EquidistPrime { rows: Vec::new(), hists: Vec::new() };
        for &law in &cfg.laws {
            let t = Instant::now();
            let kind = cfg.sample.unwrap_or_else(|| law.default_sample());
            let sample = empirical_sample(&ctx, &fam, kind);
            let (metric, statistic, clamped) = if kind == SampleKind::Planar {
                ("sector-discrepancy", planar_discrepancy(&sample, cfg.grid.0, cfg.grid.1)?, 0)
            } else {
                ("ks", ks_statistic(&sample, law)?, clamped_count(&sample, law))
            };
            if kind != SampleKind::Planar && cfg.out.is_some() {
                res.hists.push((law, kind, histogram(&sample, law, cfg.bins)?));
            }
            res.rows.push(EquidistRow {
                p,
                law: law.as_str().into(),
                sample: kind.as_str().into(),
                count: sample.len(),
                metric: metric.into(),
                statistic,
                clamped,
                wall_ms: millis(t),
            });
        }
        Ok(res)
    })?;
    let mut rows = Vec::new();
    for (p, res) in cfg.primes.iter().zip(per) {
        if let Some(dir) = &cfg.out {
            fs::create_dir_all(dir)?;
            for (law, kind, bins) in &res.hists {
                let stem = format!("equidist_hist_p{p}_{}", law.as_str());
                if cfg.formats.csv || cfg.formats.json {
                    fs::write(dir.join(format!("{stem}.csv")), super::output::csv_string(bins)?)?;
                }
                if cfg.formats.svg {
                    let title = format!("p = {p}, {} vs {}", kind.as_str(), law.as_str());
                    fs::write(dir.join(format!("{stem}.svg")), histogram_svg(bins, *law, &title))?;
                }
            }
        }
        rows.extend(res.rows);
    }
    emit(cfg, "equidist", &rows, out)?;
    Ok(Outcome::report(rows.len()))
}

/// Per prime and `κ`: Weil bound, agreement of the two `K` routes, the
/// `n = 1` absolute moment and the KS distance of `|K|`. Fails when the
/// Weil bound or the route agreement breaks.
pub fn cmd_scan(cfg: &RunConfig, out: &mut dyn Write) -> Result<Outcome> {
    let per = per_prime(cfg, |p| {
        let t0 = Instant::now();
        let ctx = PrimeContext::new(p)?;
        let fam = k_family(&ctx, cfg.fft)?;
        let max_abs_k = fam.even_nontrivial().map(|j| fam.get(j).norm()).fold(0.0, f64::max);
        let ks_abs = ks_statistic(&empirical_sample(&ctx, &fam, SampleKind::Abs), TargetLaw::ArcsineAbs)?;
        let base = millis(t0);
        cfg.kappas
            .iter()
            .map(|&kappa| {
                let t = Instant::now();
                let m = moment_abs(&ctx, &fam, kappa, 1)?;
                Ok(ScanRow {
                    p,
                    family_size: fam.family_size(),
                    max_abs_k,
                    weil_ok: max_abs_k <= 2.0 + 1e-9,
                    route_discrepancy: fam.route_discrepancy,
                    kappa,
                    moment_rel_err: m.rel_err.unwrap_or(f64::NAN),
                    bound_ratio: m.bound_ratio,
                    ks_abs,
                    wall_ms: base + millis(t),
                })
            })
            .collect::<Result<Vec<_>>>()
    })?;
    let rows: Vec<ScanRow> = per.into_iter().flatten().collect();
    emit(cfg, "scan", &rows, out)?;
    let first = rows.iter().find(|r| !r.weil_ok || r.route_discrepancy > 1e-8);
    Ok(Outcome {
        pass: first.is_none(),
        rows: rows.len(),
        first_failure: first.map(|r| format!("p={} max|K|={} route discrepancy={}", r.p, r.max_abs_k, r.route_discrepancy)),
    })
}

fn describe(r: &CheckRecord) -> String {
    let lhs = Complex64::new(r.lhs_re, r.lhs_im);
    let rhs = Complex64::new(r.rhs_re, r.rhs_im);
    format!(
        "p={} check={} {} lhs={lhs} rhs={rhs} abs_err={:e} allowed={:e}",
        r.p,
        r.check,
        r.params,
        r.abs_err,
        r.tol * r.scale
    )
}

/// Every per-prime identity plus the special-function identities. Passes
/// iff every record passes.
pub fn cmd_verify(cfg: &RunConfig, out: &mut dyn Write) -> Result<Outcome> {
    let vc = VerifyConfig { tol: cfg.tol, kmax: cfg.kmax, mode: cfg.fft };
    let per = per_prime(cfg, |p| {
        let ctx = PrimeContext::new(p)?;
        verify_prime(&ctx, &vc)
    })?;
    let mut checks: Vec<CheckRecord> = per.into_iter().flatten().collect();
    checks.extend(verify_constants(cfg.tol)?);
    let first_failure = checks.iter().find(|r| !r.pass).cloned();
    let report = VerifyReport {
        pass: first_failure.is_none(),
        total: checks.len(),
        failed: checks.iter().filter(|r| !r.pass).count(),
        first_failure: first_failure.clone(),
        checks,
    };
    match &cfg.out {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            if cfg.formats.json || !cfg.formats.csv {
                fs::write(dir.join("verify.json"), serde_json::to_string_pretty(&report)?)?;
            }
            if cfg.formats.csv {
                fs::write(dir.join("verify.csv"), super::output::csv_string(&report.checks)?)?;
            }
        }
        None if cfg.formats.csv && !cfg.formats.json => {
            out.write_all(super::output::csv_string(&report.checks)?.as_bytes())?;
        }
        None => writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?,
    }
    Ok(Outcome { pass: report.pass, rows: report.total, first_failure: first_failure.as_ref().map(describe) })
}
