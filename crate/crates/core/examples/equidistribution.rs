//! KS distances of the `K(χ)` family from its limiting laws along a prime
//! ladder, and the sector discrepancy of the planar sample.
//!
//! `√(|K|/2)` is compared with `(2/π)arcsin(√u)` as stated; since
//! `P(√(|K|/2) ≤ u) → (2/π)arcsin(u²)`, that distance stays near 0.34.
//! `(|K|/2)²` is the transform that does follow `(2/π)arcsin(√u)`.

use charsum::arith::PrimeContext;
use charsum::equidist::{empirical_sample, ks_statistic, planar_discrepancy, SampleKind, TargetLaw};
use charsum::expsums::k_family;
use charsum::spectral::DftMode;

pub fn run(primes: &[u64]) -> charsum::Result<()> {
    let pairs = [
        (SampleKind::Abs, TargetLaw::ArcsineAbs),
        (SampleKind::SqrtHalfAbs, TargetLaw::ArcsineSqrt),
        (SampleKind::SquareHalfAbs, TargetLaw::ArcsineSqrt),
        (SampleKind::NormalizedReal, TargetLaw::SymmetricArcsine),
        (SampleKind::Argument, TargetLaw::UniformArgument),
    ];
    for &p in primes {
        let ctx = PrimeContext::new(p)?;
        let fam = k_family(&ctx, DftMode::Fast)?;
        println!("p = {p} ({} characters)", fam.family_size());
        for (kind, law) in pairs {
            let d = ks_statistic(&empirical_sample(&ctx, &fam, kind), law)?;
            println!("  {:<16} vs {:<18} D = {d:.4}", kind.as_str(), law.as_str());
        }
        let planar = empirical_sample(&ctx, &fam, SampleKind::Planar);
        println!("  planar 8x8 sector discrepancy = {:.4}", planar_discrepancy(&planar, 8, 8)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    let primes: Vec<u64> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    let primes = if primes.is_empty() { vec![101, 1009, 10007] } else { primes };
    if let Err(e) = run(&primes) {
        eprintln!("{e}");
        std::process::exit(2);
    }
}
