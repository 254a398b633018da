//! Moments of `K(χ)` over the even characters next to their main terms.

use charsum::arith::PrimeContext;
use charsum::expsums::{gauss_table, k_family};
use charsum::moments::{moment_abs, moment_mixed, moment_star, MomentReport};
use charsum::spectral::DftMode;

fn show(label: &str, r: &MomentReport) {
    println!(
        "{label:<16} computed {:>14.4}  main term {:>14.4}  rel err {:>9}  error/envelope {:.4}",
        r.computed.re,
        r.predicted.re,
        r.rel_err.map_or("-".to_string(), |e| format!("{e:.2e}")),
        r.bound_ratio
    );
}

pub fn run(p: u64) -> charsum::Result<()> {
    let ctx = PrimeContext::new(p)?;
    let fam = k_family(&ctx, DftMode::Fast)?;
    let g = gauss_table(&ctx, DftMode::Fast)?;
    println!("p = {p}");
    for kappa in [0.5, 1.0, 1.5, 2.0, 3.0] {
        show(&format!("|K|^(2·{kappa})"), &moment_abs(&ctx, &fam, kappa, 1)?);
    }
    show("|K|^2, n = 2", &moment_abs(&ctx, &fam, 1.0, 2)?);
    for (k, l) in [(1, 1), (2, 2), (2, 1), (3, 1)] {
        show(&format!("K̄^{k} K^{l}"), &moment_mixed(&ctx, &fam, k, l, 1)?);
    }
    for k in 1..=4 {
        show(&format!("real, k = {k}"), &moment_star(&ctx, &fam, &g, k)?);
    }
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
