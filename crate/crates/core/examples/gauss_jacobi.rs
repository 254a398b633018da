//! Gauss sums for every character at once, and Jacobi sums as Gauss quotients.

use charsum::arith::PrimeContext;
use charsum::expsums::{gauss_table, jacobi, jacobi_via_gauss, quadratic_gauss, quadratic_gauss_direct};
use charsum::spectral::DftMode;

pub fn run(p: u64) -> charsum::Result<()> {
    let ctx = PrimeContext::new(p)?;
    let g = gauss_table(&ctx, DftMode::Fast)?;
    println!("p = {p}: max ||τ(χ)|² - p| over nontrivial χ = {:.2e}", g.modulus_defect());
    println!("τ(χ₀) = {:.3}", g.get(0));
    println!("τ(φ) = {:.6}, ε_p√p = {:.6}", g.get(ctx.half()), ctx.eps() * (p as f64).sqrt());

    for n in [1i64, 2, -1] {
        let closed = quadratic_gauss(&ctx, n);
        let direct = quadratic_gauss_direct(&ctx, n);
        println!("Σ e(n x²/p), n = {n:>2}: {:.6} (direct {:.6})", closed, direct);
    }

    for (a, b) in [(1, 1), (2, 3), (1, ctx.half())] {
        let direct = jacobi(&ctx, a, b);
        match jacobi_via_gauss(&g, a, b) {
            Some(q) => println!("J(χ_{a}, χ_{b}) = {direct:.6}, via Gauss sums {q:.6}"),
            None => println!("J(χ_{a}, χ_{b}) = {direct:.6}, degenerate pair"),
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    let p = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(101);
    if let Err(e) = run(p) {
        eprintln!("{e}");
        std::process::exit(2);
    }
}
