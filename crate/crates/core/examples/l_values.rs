//! Dirichlet L-values at `s = 1` and `s = 1/2` for every character, and the
//! moments of `K` they twist.

use charsum::arith::PrimeContext;
use charsum::expsums::{gauss_table, k_family};
use charsum::lvalues::{
    frak_s_routes, l_at_half, l_at_one, l_at_one_even_sin_log, lhalf_second_moment, weighted_moment_l1,
    weighted_moment_lhalf,
};
use charsum::spectral::DftMode;

pub fn run(p: u64) -> charsum::Result<()> {
    let ctx = PrimeContext::new(p)?;
    let fam = k_family(&ctx, DftMode::Fast)?;
    let g = gauss_table(&ctx, DftMode::Fast)?;
    let one = l_at_one(&ctx, DftMode::Fast)?;
    let half = l_at_half(&ctx, DftMode::Fast)?;

    let sin_log = l_at_one_even_sin_log(&ctx, &g, DftMode::Fast)?;
    let gap = sin_log.iter().enumerate().map(|(i, v)| (v - one.get(2 * (i as u64 + 1))).norm()).fold(0.0, f64::max);
    println!("p = {p}: L(1, χ) by digamma and by log-sine differ by at most {gap:.2e}");
    println!("L(1, φ) = {:.8}, L(1/2, φ) = {:.8}", one.get(ctx.half()), half.get(ctx.half()));

    let s = frak_s_routes();
    println!("S = {:.10} (series) / {:.10} (Euler product)", s.series, s.euler_product);

    for kappa in [1.0, 2.0] {
        let r = weighted_moment_l1(&fam, &one, kappa, s.series)?;
        println!("Σ|K|^(2·{kappa})|L(1,χ)|    = {:.3}, main term {:.3}", r.computed.re, r.predicted.re);
        let r = weighted_moment_lhalf(&fam, &half, kappa)?;
        println!("Σ|K|^(2·{kappa})|L(1/2,χ)|² = {:.3}, main term {:.3}", r.computed.re, r.predicted.re);
    }
    let r = lhalf_second_moment(&fam, &half)?;
    println!("Σ|L(1/2,χ)|² = {:.3}, main term {:.3}", r.computed.re, r.predicted.re);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    let p = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(10007);
    if let Err(e) = run(p) {
        eprintln!("{e}");
        std::process::exit(2);
    }
}
