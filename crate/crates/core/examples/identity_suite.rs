//! Every exact identity at one prime, grouped by check.
//!
//! The two character-moment identities are evaluated twice: once with the
//! right side `(p-1)p^{k-1/2}Kl_k(n)(ε_p φ(-1))^k` (resp.
//! `(p-1)p^{(k-1)/2}Kl_k(n)`) as commonly quoted, which does not hold, and
//! once with the coupled sums that orthogonality produces, which does.

use std::collections::BTreeMap;

use charsum::arith::PrimeContext;
use charsum::verify::{verify_constants, verify_prime, VerifyConfig};

pub fn run(p: u64) -> charsum::Result<()> {
    let ctx = PrimeContext::new(p)?;
    let mut recs = verify_prime(&ctx, &VerifyConfig::default())?;
    recs.extend(verify_constants(1e-7)?);
    let mut groups: BTreeMap<&str, (usize, usize, f64)> = BTreeMap::new();
    for r in &recs {
        let e = groups.entry(r.check.as_str()).or_default();
        e.0 += 1;
        e.1 += usize::from(r.pass);
        e.2 = e.2.max(r.abs_err / r.scale);
    }
    println!("p = {p}");
    for (name, (total, passed, worst)) in groups {
        println!("  {name:<36} {passed:>3}/{total:<3} worst relative error {worst:.2e}");
    }
    if let Some(r) = recs.iter().find(|r| r.check == "gauss-product-moment") {
        println!("  e.g. {} {}: left {:.6}, quoted right side {:.6}", r.check, r.params, r.lhs_re, r.rhs_re);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    let p = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(13);
    if let Err(e) = run(p) {
        eprintln!("{e}");
        std::process::exit(2);
    }
}
