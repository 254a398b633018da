//! Hyper-Kloosterman sums from powers of Gauss sums, checked against the
//! `O(k p²)` convolution recursion, with Deligne's bound `|Kl_k| ≤ k`.

use charsum::arith::PrimeContext;
use charsum::expsums::{gauss_table, hyper_kloosterman, hyper_kloosterman_recursive};
use charsum::spectral::DftMode;

pub fn run(p: u64) -> charsum::Result<()> {
    let ctx = PrimeContext::new(p)?;
    let g = gauss_table(&ctx, DftMode::Fast)?;
    for k in 2..=5 {
        let kl = hyper_kloosterman(&ctx, &g, k)?;
        let rec = hyper_kloosterman_recursive(&ctx, k)?;
        println!(
            "k = {k}: Kl_k(1) = {:+.6}  max|Kl_k| = {:.6}  routes differ by {:.1e}",
            kl.get(1),
            kl.max_abs(),
            kl.max_deviation(&rec)
        );
    }
    let small = PrimeContext::new(7)?;
    let kl = hyper_kloosterman_recursive(&small, 2)?;
    println!("Kl_2(1, 7) = {:.6}", kl.get(1).re);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    let p = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(211);
    if let Err(e) = run(p) {
        eprintln!("{e}");
        std::process::exit(2);
    }
}
