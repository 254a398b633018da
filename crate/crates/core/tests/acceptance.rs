//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Two criteria cannot pass as stated, and are expected to print FAIL:
//!
//! 1. The two character-moment identities in their quoted form do not hold
//!    at any tested prime; the coupled forms given by orthogonality do, and
//!    are reported alongside.
//! 6. `P(√(|K|/2) ≤ u)` tends to `(2/π)arcsin(u²)`, not `(2/π)arcsin(√u)`, so
//!    the KS distance of that sample stays near 0.34. The sample `(|K|/2)²`
//!    is reported as a diagnostic.
//!
//! The process exits nonzero when any criterion departs from its expected outcome.

use std::time::{Duration, Instant};

use rayon::prelude::*;

use charsum::arith::{primes_in_range, PrimeContext};
use charsum::cli::{run_config, Command, RunConfig};
use charsum::equidist::{empirical_sample, ks_statistic, planar_discrepancy, SampleKind, TargetLaw};
use charsum::expsums::{gauss_table, hyper_kloosterman, k_family, KFamily};
use charsum::lvalues::{frak_s_routes, l_at_half, l_at_one, lhalf_second_moment, weighted_moment_l1, weighted_moment_lhalf};
use charsum::moments::{moment_abs, moment_mixed, moment_star};
use charsum::special::{bessel_cross_check, prop_a1_check, trig_integral_check_with_tol};
use charsum::spectral::{dft_fast, dft_naive, fast_tolerance, DftMode, GroupFunction};
use charsum::verify::{verify_prime, VerifyConfig, BESSEL_ZS, PROP_A1_KAPPAS, TRIG_MUS};

struct Outcome {
    pass: bool,
    detail: String,
}

fn sci(v: &[f64]) -> String {
    format!("[{}]", v.iter().map(|x| format!("{x:.2e}")).collect::<Vec<_>>().join(", "))
}

fn family(p: u64) -> (PrimeContext, KFamily) {
    let ctx = PrimeContext::new(p).unwrap();
    let fam = k_family(&ctx, DftMode::Fast).unwrap();
    (ctx, fam)
}

fn within(t: Instant, limit: Duration) -> (bool, String) {
    let e = t.elapsed();
    (e <= limit, format!("{:.1}s of {}s", e.as_secs_f64(), limit.as_secs()))
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let cfg = VerifyConfig { tol: 1e-7, kmax: 4, mode: DftMode::Fast };
    let recs: Vec<_> = [5u64, 7, 11, 13, 101, 257, 1009, 10007]
        .par_iter()
        .flat_map(|&p| verify_prime(&PrimeContext::new(p).unwrap(), &cfg).unwrap())
        .collect();
    let (time_ok, time) = within(t, Duration::from_secs(120));
    let quoted = |c: &str| c == "gauss-product-moment" || c == "jacobi-moment";
    let failing: Vec<_> = recs.iter().filter(|r| !r.pass).collect();
    let other_failing = failing.iter().filter(|r| !quoted(&r.check)).count();
    let quoted_total = recs.iter().filter(|r| quoted(&r.check)).count();
    let coupled: Vec<_> = recs.iter().filter(|r| r.check.ends_with("-orthogonality")).collect();
    let coupled_pass = coupled.iter().filter(|r| r.pass).count();
    Outcome {
        pass: failing.is_empty() && time_ok,
        detail: format!(
            "{} records, {} failing; quoted moment identities {}/{} failing, other checks {} failing; \
             orthogonality forms {}/{} passing; {time}",
            recs.len(),
            failing.len(),
            failing.len() - other_failing,
            quoted_total,
            other_failing,
            coupled_pass,
            coupled.len()
        ),
    }
}

fn criterion_2() -> Outcome {
    let primes = primes_in_range(5, 10_000);
    let worst: Vec<(f64, [f64; 4])> = primes
        .par_iter()
        .map(|&p| {
            let (ctx, fam) = family(p);
            let k = fam.even_nontrivial().map(|j| fam.get(j).norm()).fold(0.0, f64::max);
            let g = gauss_table(&ctx, DftMode::Fast).unwrap();
            let mut kl = [0.0; 4];
            for (i, k) in (2..=5).enumerate() {
                kl[i] = hyper_kloosterman(&ctx, &g, k).unwrap().max_abs();
            }
            (k, kl)
        })
        .collect();
    let k_max = worst.iter().map(|w| w.0).fold(0.0, f64::max);
    let kl_max: Vec<f64> = (0..4).map(|i| worst.iter().map(|w| w.1[i]).fold(0.0, f64::max)).collect();
    let pass = k_max <= 2.0 + 1e-9 && kl_max.iter().enumerate().all(|(i, &m)| m <= (i + 2) as f64 + 1e-9);
    Outcome {
        pass,
        detail: format!(
            "{} primes; max|K| = {k_max:.12}, max|Kl_k| for k=2..5 = {:.9?}",
            primes.len(),
            kl_max
        ),
    }
}

fn criterion_3() -> Outcome {
    let t = Instant::now();
    let kappas = [1.0, 1.5, 2.0, 3.0];
    let mut worst_rel = 0.0f64;
    let mut worst_ratio = 0.0f64;
    for p in [1009u64, 10007, 100003] {
        let (ctx, fam) = family(p);
        for kappa in kappas {
            let r = moment_abs(&ctx, &fam, kappa, 1).unwrap();
            worst_ratio = worst_ratio.max(r.bound_ratio);
            if p == 100003 {
                worst_rel = worst_rel.max(r.rel_err.unwrap());
            }
        }
    }
    let (time_ok, time) = within(t, Duration::from_secs(300));
    Outcome {
        pass: worst_rel <= 0.05 && worst_ratio <= 10.0 && time_ok,
        detail: format!("max rel err at 100003 = {worst_rel:.2e}; max bound ratio = {worst_ratio:.2e}; {time}"),
    }
}

fn criterion_4() -> Outcome {
    let mut worst = 0.0f64;
    let mut worst_odd = 0.0f64;
    for p in [10007u64, 100003] {
        let (ctx, fam) = family(p);
        for (k, l) in [(1, 0), (2, 0), (2, 1), (3, 1), (2, 2)] {
            for n in [1i64, 2, p as i64 - 1] {
                let r = moment_mixed(&ctx, &fam, k, l, n).unwrap();
                worst = worst.max(r.bound_ratio);
                if (k + l) % 2 == 1 {
                    worst_odd = worst_odd.max(r.bound_ratio);
                }
            }
        }
    }
    Outcome {
        pass: worst <= 10.0,
        detail: format!("max |M - main| / envelope = {worst:.2e} (odd k+l: {worst_odd:.2e}); allowed 10"),
    }
}

fn criterion_5() -> Outcome {
    let p = 100003;
    let (ctx, fam) = family(p);
    let g = gauss_table(&ctx, DftMode::Fast).unwrap();
    let even: Vec<f64> = [2, 4].iter().map(|&k| moment_star(&ctx, &fam, &g, k).unwrap().rel_err.unwrap()).collect();
    let odd: Vec<f64> = [1, 3].iter().map(|&k| moment_star(&ctx, &fam, &g, k).unwrap().bound_ratio).collect();
    Outcome {
        pass: even.iter().all(|&e| e <= 0.05) && odd.iter().all(|&r| r <= 10.0),
        detail: format!("even k rel err {}; odd k |M|/(k2^k√p log p) {}", sci(&even), sci(&odd)),
    }
}

fn criterion_6() -> Outcome {
    let ks = |p: u64, kind: SampleKind, law: TargetLaw| {
        let (ctx, fam) = family(p);
        ks_statistic(&empirical_sample(&ctx, &fam, kind), law).unwrap()
    };
    let ladder: Vec<f64> = [101, 1009, 10007].iter().map(|&p| ks(p, SampleKind::Abs, TargetLaw::ArcsineAbs)).collect();
    let ladder_ok = ladder.windows(2).all(|w| w[1] <= 1.5 * w[0]);
    let sqrt = ks(10007, SampleKind::SqrtHalfAbs, TargetLaw::ArcsineSqrt);
    let square = ks(10007, SampleKind::SquareHalfAbs, TargetLaw::ArcsineSqrt);
    let real = ks(10007, SampleKind::NormalizedReal, TargetLaw::SymmetricArcsine);
    let arg = ks(10007, SampleKind::Argument, TargetLaw::UniformArgument);
    let (ctx, fam) = family(10007);
    let planar = planar_discrepancy(&empirical_sample(&ctx, &fam, SampleKind::Planar), 8, 8).unwrap();
    let checks = [
        ("abs", ladder[2] <= 0.05),
        ("ladder", ladder_ok),
        ("sqrt-half-abs", sqrt <= 0.05),
        ("normalized-real", real <= 0.05),
        ("argument", arg <= 0.05),
        ("planar", planar <= 0.08),
    ];
    let failed: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
    Outcome {
        pass: failed.is_empty(),
        detail: format!(
            "abs ladder {ladder:.4?}; sqrt-half-abs {sqrt:.4} (diagnostic square-half-abs {square:.4}); \
             normalized-real {real:.4}; argument {arg:.4}; planar 8x8 {planar:.4}; failing: {failed:?}"
        ),
    }
}

fn criterion_7() -> Outcome {
    let s = frak_s_routes();
    let (ctx, fam) = family(10007);
    let lv = l_at_one(&ctx, DftMode::Fast).unwrap();
    let rel: Vec<f64> =
        [1.0, 2.0].iter().map(|&k| weighted_moment_l1(&fam, &lv, k, s.series).unwrap().rel_err.unwrap()).collect();
    Outcome {
        pass: rel.iter().all(|&e| e <= 0.10) && s.discrepancy() <= 1e-8,
        detail: format!("rel err κ=1,2: {}; S = {:.10}, routes differ by {:.1e}", sci(&rel), s.series, s.discrepancy()),
    }
}

fn lhalf(p: u64) -> (KFamily, charsum::lvalues::LValueTable) {
    let (ctx, fam) = family(p);
    let lv = l_at_half(&ctx, DftMode::Fast).unwrap();
    (fam, lv)
}

fn criterion_8() -> Outcome {
    let t = Instant::now();
    let rel: Vec<f64> = [1009u64, 10007]
        .iter()
        .map(|&p| {
            let (fam, lv) = lhalf(p);
            lhalf_second_moment(&fam, &lv).unwrap().rel_err.unwrap()
        })
        .collect();
    let (time_ok, time) = within(t, Duration::from_secs(600));
    Outcome {
        pass: rel[0] <= 0.15 && rel[1] <= 0.05 && time_ok,
        detail: format!("rel err at 1009 = {:.4} (allowed 0.15), at 10007 = {:.4} (allowed 0.05); {time}", rel[0], rel[1]),
    }
}

fn criterion_9() -> Outcome {
    let rel: Vec<f64> = [1009u64, 10007]
        .iter()
        .map(|&p| {
            let (fam, lv) = lhalf(p);
            weighted_moment_lhalf(&fam, &lv, 1.0).unwrap().rel_err.unwrap()
        })
        .collect();
    Outcome {
        pass: rel[1] <= 0.25 && rel[1] < rel[0],
        detail: format!("rel err at 1009 = {:.4}, at 10007 = {:.4}", rel[0], rel[1]),
    }
}

fn criterion_10() -> Outcome {
    let a1 = PROP_A1_KAPPAS.iter().all(|&k| prop_a1_check(k, 1e-12).unwrap().pass);
    let trig = TRIG_MUS.iter().all(|&m| trig_integral_check_with_tol(m, 1e-8).unwrap().pass);
    let bessel = BESSEL_ZS.iter().map(|&z| bessel_cross_check(z, 1e-10)).collect::<Vec<_>>();
    let worst = bessel.iter().map(|c| (c.series - c.integral).abs()).fold(0.0, f64::max);
    Outcome {
        pass: a1 && trig && bessel.iter().all(|c| c.pass),
        detail: format!("gamma series {a1}, trig integral {trig}, J0 worst gap {worst:.1e}"),
    }
}

fn strip_wall_ms(csv: &str) -> String {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap_or("").split(',').collect();
    let col = header.iter().position(|&h| h == "wall_ms").expect("wall_ms column");
    std::iter::once(header.join(","))
        .chain(lines.map(|l| l.split(',').enumerate().filter(|(i, _)| *i != col).map(|(_, f)| f).collect::<Vec<_>>().join(",")))
        .collect::<Vec<_>>()
        .join("\n")
}

fn criterion_11() -> Outcome {
    // The library does no threading of its own, so this runs on one core.
    let t = Instant::now();
    let (ctx, fam) = family(1_000_003);
    let m = moment_abs(&ctx, &fam, 1.0, 1).unwrap();
    let (time_ok, time) = within(t, Duration::from_secs(60));

    let mut dft_ok = true;
    let mut worst = 0.0f64;
    for p in [5u64, 7, 11, 13, 101, 257, 1009, 2003] {
        let ctx = PrimeContext::new(p).unwrap();
        let fns = [
            GroupFunction::from_real_residues(&ctx, |b| 1.0 + ctx.legendre((b * b) as i64 - 4) as f64),
            GroupFunction::from_real_residues(&ctx, |a| (2.0 * (std::f64::consts::PI * a as f64 / p as f64).sin()).ln()),
            GroupFunction::from_residues(&ctx, |a| ctx.additive(a as i64)),
        ];
        for f in &fns {
            let d = dft_fast(f).max_deviation(&dft_naive(f));
            worst = worst.max(d / fast_tolerance(f));
            dft_ok &= d <= fast_tolerance(f);
        }
    }

    std::env::remove_var(charsum::cli::THREADS_ENV);
    let outputs: Vec<(String, String)> = [1usize, 4, 8]
        .iter()
        .map(|&threads| {
            let mut cfg = RunConfig::new(Command::Moments, vec![101, 1009, 10007, 10009]);
            cfg.kappas = vec![0.5, 1.0, 2.0];
            cfg.kls = vec![(1, 0), (2, 1), (2, 2)];
            cfg.ns = vec![-1, 1, 2];
            cfg.threads = Some(threads);
            let mut moments = Vec::new();
            run_config(&cfg, &mut moments).unwrap();
            cfg.command = Command::Equidist;
            cfg.laws = TargetLaw::ALL.to_vec();
            let mut equi = Vec::new();
            run_config(&cfg, &mut equi).unwrap();
            (
                strip_wall_ms(&String::from_utf8(moments).unwrap()),
                strip_wall_ms(&String::from_utf8(equi).unwrap()),
            )
        })
        .collect();
    let identical = outputs.windows(2).all(|w| w[0] == w[1]);
    Outcome {
        pass: time_ok && dft_ok && identical && m.rel_err.unwrap() < 0.05,
        detail: format!(
            "p = 1000003 spectrum + moment in {time}; fast vs naive worst {worst:.2e} of tolerance; \
             CSV identical across 1/4/8 threads: {identical}"
        ),
    }
}

fn main() {
    // (criterion, runner, expected to pass)
    let criteria: [(u32, fn() -> Outcome, bool); 11] = [
        (1, criterion_1, false),
        (2, criterion_2, true),
        (3, criterion_3, true),
        (4, criterion_4, true),
        (5, criterion_5, true),
        (6, criterion_6, false),
        (7, criterion_7, true),
        (8, criterion_8, true),
        (9, criterion_9, true),
        (10, criterion_10, true),
        (11, criterion_11, true),
    ];
    let mut unexpected = Vec::new();
    for (n, run, expected) in criteria {
        let t = Instant::now();
        let o = run();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        let note = if o.pass == expected { "" } else { " (unexpected)" };
        println!("criterion {n:>2}: {tag}{note} [{:.1}s] {}", t.elapsed().as_secs_f64(), o.detail);
        if o.pass != expected {
            unexpected.push(n);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("criteria with unexpected outcome: {unexpected:?}");
        std::process::exit(1);
    }
}
