//! Gamma, digamma, `J₀` and the three closed forms behind the moment constants.

use charsum::special::{
    bessel_cross_check, bessel_j0, digamma, gamma_fn, moment_constant, prop_a1_check, trig_integral_check,
};

pub fn run() -> charsum::Result<()> {
    println!("Γ(1/2)² = {:.15} (π = {:.15})", gamma_fn(0.5)?.powi(2), std::f64::consts::PI);
    println!("ψ(1) = {:.15}", digamma(1.0)?);
    for z in [0.5, 2.0, 5.0, 10.0] {
        let c = bessel_cross_check(z, 1e-10);
        println!("J₀({z:>4}) = {:+.12}  series vs integral {:.1e}", bessel_j0(z)?, (c.series - c.integral).abs());
    }
    for kappa in [0.3, 1.0, 2.5, 4.25] {
        let c = prop_a1_check(kappa, 1e-12)?;
        println!("κ = {kappa:<4}  series {:.15}  closed form {:.15}  Γ(2κ+1)/2Γ(κ+1)² = {:.6}", c.lhs, c.rhs, moment_constant(kappa));
    }
    for mu in [0.0, 0.5, 1.0, 2.5] {
        let c = trig_integral_check(mu)?;
        println!("∫cos^(2·{mu})  quadrature {:.12}  closed form {:.12}", c.quadrature, c.closed_form);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("{e}");
        std::process::exit(2);
    }
}
