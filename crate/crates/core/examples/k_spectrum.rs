//! The whole family `K(χ) = p^{-1/2} Σ_a χ(a + ā)` from one transform of the
//! count table, spot-checked against direct summation.
//!
//!     cargo run --example k_spectrum -- 1009

use charsum::arith::PrimeContext;
use charsum::expsums::{k_direct, k_family};
use charsum::spectral::DftMode;

pub fn run(p: u64) -> charsum::Result<()> {
    let ctx = PrimeContext::new(p)?;
    let fam = k_family(&ctx, DftMode::Fast)?;
    println!("p = {p}, generator {}, |A(p)| = {}", ctx.generator(), fam.family_size());
    println!("count table and Gauss-product routes differ by {:.2e}", fam.route_discrepancy);

    let mut worst = 0.0f64;
    for j in fam.even_nontrivial().take(6) {
        let k = fam.get(j);
        let d = (k - k_direct(&ctx, j)).norm();
        worst = worst.max(d);
        println!("  j = {j:>5}  K = {:+.6} {:+.6}i  |K| = {:.6}", k.re, k.im, k.norm());
    }
    println!("largest deviation from direct summation: {worst:.2e}");

    let max_abs = fam.even_nontrivial().map(|j| fam.get(j).norm()).fold(0.0, f64::max);
    let odd_max = (1..p - 1).step_by(2).map(|j| fam.get(j).norm()).fold(0.0, f64::max);
    println!("max |K| over even characters = {max_abs:.9} (Weil bound 2)");
    println!("max |K| over odd characters  = {odd_max:.2e}");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    let p = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1009);
    if let Err(e) = run(p) {
        eprintln!("{e}");
        std::process::exit(2);
    }
}
