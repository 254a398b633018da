//! Dirichlet L-values `L(s, χ)` for every nontrivial `χ mod p` at `s = 1`
//! and `s = 1/2`, and moments of `K(χ)` weighted by them.

mod beta;
pub mod hurwitz;

pub use beta::{beta_prime_power, frak_s, frak_s_euler_product, frak_s_routes, BetaSeries, FrakS};
pub use hurwitz::hurwitz_zeta;

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::arith::PrimeContext;
use crate::error::{Error, Result};
use crate::expsums::{GaussTable, KFamily};
use crate::moments::{abs_power, sqrt_log, sum_even_nontrivial, MomentKind, MomentReport};
use crate::reduce::pairwise_sum_by;
use crate::special::{digamma, moment_constant, EULER_GAMMA};
use crate::spectral::{dft, DftMode, GroupFunction};

/// Largest modulus accepted by the L-value tables.
pub const LVALUE_MAX_PRIME: u64 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LMethod {
    DigammaClosedForm,
    HurwitzEulerMaclaurin,
}

/// `L(s, χ_j)` for `j ∈ [1, p-2]`.
#[derive(Debug, Clone)]
pub struct LValueTable {
    pub p: u64,
    pub s: f64,
    /// Entry `j - 1` holds `L(s, χ_j)`.
    pub vals: Vec<Complex64>,
    pub method: LMethod,
}

impl LValueTable {
    pub fn get(&self, j: u64) -> Complex64 {
        assert!(j >= 1 && j <= self.p - 2, "L-values are stored for nontrivial characters only");
        self.vals[(j - 1) as usize]
    }

    /// `max_j |L(s, χ̄_j) - conj L(s, χ_j)|`.
    pub fn conjugation_defect(&self) -> f64 {
        (1..self.p - 1)
            .map(|j| (self.get(self.p - 1 - j) - self.get(j).conj()).norm())
            .fold(0.0, f64::max)
    }
}

fn check_modulus(ctx: &PrimeContext) -> Result<()> {
    if ctx.p() > LVALUE_MAX_PRIME {
        return Err(Error::InvalidParameter(format!(
            "L-value tables are limited to p <= {LVALUE_MAX_PRIME}, got {}",
            ctx.p()
        )));
    }
    Ok(())
}

/// `L(1/2, χ) = p^{-1/2} Σ_{a=1}^{p-1} χ(a)·ζ(1/2, a/p)` for all `χ` with one transform.
pub fn l_at_half(ctx: &PrimeContext, mode: DftMode) -> Result<LValueTable> {
    check_modulus(ctx)?;
    let p = ctx.p();
    let mut zeta = Vec::with_capacity((p - 1) as usize);
    for &a in ctx.power_table() {
        zeta.push(Complex64::new(hurwitz_zeta(0.5, a as f64 / p as f64)?, 0.0));
    }
    let spec = dft(&GroupFunction::new(p, zeta)?, mode)?;
    let scale = 1.0 / (p as f64).sqrt();
    let vals = spec.values[1..].iter().map(|v| v * scale).collect();
    Ok(LValueTable { p, s: 0.5, vals, method: LMethod::HurwitzEulerMaclaurin })
}

/// `L(1, χ) = -(1/p) Σ_{a=1}^{p-1} χ(a)·ψ(a/p)` for all nontrivial `χ`.
pub fn l_at_one(ctx: &PrimeContext, mode: DftMode) -> Result<LValueTable> {
    check_modulus(ctx)?;
    let p = ctx.p();
    let mut psi = Vec::with_capacity((p - 1) as usize);
    for &a in ctx.power_table() {
        psi.push(Complex64::new(digamma(a as f64 / p as f64)?, 0.0));
    }
    let spec = dft(&GroupFunction::new(p, psi)?, mode)?;
    let scale = -1.0 / p as f64;
    let vals = spec.values[1..].iter().map(|v| v * scale).collect();
    Ok(LValueTable { p, s: 1.0, vals, method: LMethod::DigammaClosedForm })
}

/// `L(1, χ) = -(τ(χ)/p) Σ_a χ̄(a)·log(2 sin(πa/p))` for even nontrivial `χ`;
/// entry `i` corresponds to `j = 2(i + 1)`.
pub fn l_at_one_even_sin_log(ctx: &PrimeContext, gauss: &GaussTable, mode: DftMode) -> Result<Vec<Complex64>> {
    let p = ctx.p();
    let f = GroupFunction::from_real_residues(ctx, |a| (2.0 * (PI * a as f64 / p as f64).sin()).ln());
    let spec = dft(&f, mode)?;
    Ok((1..ctx.half())
        .map(|i| {
            let j = 2 * i;
            -gauss.get(j) * spec.get(ctx.conj_index(j)) / p as f64
        })
        .collect())
}

/// `L(s, χ)` as the Abel-smoothed Dirichlet series
/// `Σ_n χ(n) n^{-s} e^{-n/X}`, summed until `e^{-n/X} < 10^{-18}`.
pub fn l_abel_smoothed(ctx: &PrimeContext, j: u64, s: f64, x: f64) -> Complex64 {
    let n_max = (x * 18.0 * 10f64.ln()).ceil() as usize;
    pairwise_sum_by(n_max, &|i| {
        let n = i as f64 + 1.0;
        ctx.chi(j, (i as u64 + 1) as i64) * (n.powf(-s) * (-n / x).exp())
    })
}

fn check_kappa(kappa: f64) -> Result<()> {
    if !(kappa > 0.0) || !kappa.is_finite() {
        return Err(Error::InvalidParameter(format!("kappa must be > 0, got {kappa}")));
    }
    Ok(())
}

fn check_table(family: &KFamily, lvals: &LValueTable, s: f64) -> Result<()> {
    if lvals.p != family.p || lvals.s != s {
        return Err(Error::InvalidParameter(format!(
            "expected L-values at s = {s} mod {}, got s = {} mod {}",
            family.p, lvals.s, lvals.p
        )));
    }
    Ok(())
}

/// `Σ*_χ |K(χ)|^{2κ}|L(1,χ)|` against `Γ(2κ+1)/(2Γ(κ+1)²)·𝔖·p`.
/// Odd characters are part of the sum but contribute nothing since `K(χ) = 0`.
pub fn weighted_moment_l1(family: &KFamily, lvals: &LValueTable, kappa: f64, frak: f64) -> Result<MomentReport> {
    check_kappa(kappa)?;
    check_table(family, lvals, 1.0)?;
    let p = family.p;
    let computed = sum_even_nontrivial(family, |j| Complex64::new(abs_power(family.get(j), kappa) * lvals.get(j).norm(), 0.0));
    let predicted = Complex64::new(moment_constant(kappa) * frak * p as f64, 0.0);
    let envelope = 4f64.powf(kappa) * sqrt_log(p);
    Ok(MomentReport::build(p, MomentKind::WeightedL1, Some(kappa), None, None, None, computed, predicted, envelope))
}

/// `log(p/8π) - π/2 + γ`.
pub fn lhalf_log_factor(p: u64) -> f64 {
    (p as f64 / (8.0 * PI)).ln() - PI / 2.0 + EULER_GAMMA
}

/// `Σ*_χ |K(χ)|^{2κ}|L(1/2,χ)|²` against `Γ(2κ+1)/(2Γ(κ+1)²)·p·(log(p/8π) - π/2 + γ)`.
/// The error envelope is `5^κ·p^{7/8}`.
pub fn weighted_moment_lhalf(family: &KFamily, lvals: &LValueTable, kappa: f64) -> Result<MomentReport> {
    check_kappa(kappa)?;
    check_table(family, lvals, 0.5)?;
    let p = family.p;
    let computed =
        sum_even_nontrivial(family, |j| Complex64::new(abs_power(family.get(j), kappa) * lvals.get(j).norm_sqr(), 0.0));
    let predicted = Complex64::new(moment_constant(kappa) * p as f64 * lhalf_log_factor(p), 0.0);
    let envelope = 5f64.powf(kappa) * (p as f64).powf(0.875);
    Ok(MomentReport::build(p, MomentKind::WeightedLHalf, Some(kappa), None, None, None, computed, predicted, envelope))
}

/// `Σ_{χ∈𝔄(p)} |L(1/2,χ)|²` against `((p-1)²/2p)(log(p/8π) - π/2 + γ)`, envelope `√p`.
pub fn lhalf_second_moment(family: &KFamily, lvals: &LValueTable) -> Result<MomentReport> {
    check_table(family, lvals, 0.5)?;
    let p = family.p;
    let pf = p as f64;
    let computed = sum_even_nontrivial(family, |j| Complex64::new(lvals.get(j).norm_sqr(), 0.0));
    let predicted = Complex64::new((pf - 1.0).powi(2) / (2.0 * pf) * lhalf_log_factor(p), 0.0);
    Ok(MomentReport::build(p, MomentKind::LHalfSecond, None, None, None, None, computed, predicted, pf.sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expsums::{gauss_table, k_family};

    #[test]
    fn l_one_quadratic_examples() {
        let ctx = PrimeContext::new(5).unwrap();
        let t = l_at_one(&ctx, DftMode::Naive).unwrap();
        let want = 2.0 * ((1.0 + 5f64.sqrt()) / 2.0).ln() / 5f64.sqrt();
        assert!((t.get(2) - Complex64::new(want, 0.0)).norm() < 1e-12);
        assert!((want - 0.430_408_9).abs() < 1e-7);

        let ctx = PrimeContext::new(7).unwrap();
        let t = l_at_one(&ctx, DftMode::Fast).unwrap();
        assert!((t.get(3).norm() - PI / 7f64.sqrt()).abs() < 1e-12);
        assert!(t.conjugation_defect() < 1e-12);
    }

    #[test]
    fn sin_log_route_agrees() {
        for p in [5u64, 13, 101, 1009] {
            let ctx = PrimeContext::new(p).unwrap();
            let g = gauss_table(&ctx, DftMode::Fast).unwrap();
            let t = l_at_one(&ctx, DftMode::Fast).unwrap();
            let alt = l_at_one_even_sin_log(&ctx, &g, DftMode::Fast).unwrap();
            for (i, v) in alt.iter().enumerate() {
                let j = 2 * (i as u64 + 1);
                assert!((t.get(j) - v).norm() <= 1e-8, "p={p} j={j}");
            }
        }
    }

    #[test]
    fn l_half_conjugation_and_abel_oracle() {
        let ctx = PrimeContext::new(101).unwrap();
        let t = l_at_half(&ctx, DftMode::Fast).unwrap();
        assert!(t.conjugation_defect() < 1e-9);

        let ctx = PrimeContext::new(5).unwrap();
        let t = l_at_half(&ctx, DftMode::Fast).unwrap();
        let abel = l_abel_smoothed(&ctx, 2, 0.5, 1e6);
        assert!((t.get(2) - abel).norm() <= 1e-6, "{} {}", t.get(2), abel);
    }

    #[test]
    fn l_one_matches_abel_sum() {
        let ctx = PrimeContext::new(11).unwrap();
        let t = l_at_one(&ctx, DftMode::Fast).unwrap();
        for j in [1u64, 2, 5] {
            assert!((t.get(j) - l_abel_smoothed(&ctx, j, 1.0, 1e6)).norm() <= 1e-5);
        }
    }

    #[test]
    fn weighted_odd_characters_are_inert() {
        let ctx = PrimeContext::new(101).unwrap();
        let fam = k_family(&ctx, DftMode::Fast).unwrap();
        let l1 = l_at_one(&ctx, DftMode::Fast).unwrap();
        let r = weighted_moment_l1(&fam, &l1, 1.0, 1.0).unwrap();
        let full: f64 = (1..100u64).map(|j| fam.get(j).norm_sqr() * l1.get(j).norm()).sum();
        assert!((r.computed.re - full).abs() <= 1e-9 * full);
        let lh = l_at_half(&ctx, DftMode::Fast).unwrap();
        assert!(weighted_moment_l1(&fam, &lh, 1.0, 1.0).is_err());
        assert!(weighted_moment_lhalf(&fam, &lh, -1.0).is_err());
    }

    #[test]
    fn lhalf_main_term_sign() {
        assert!(lhalf_log_factor(67) < 0.0);
        for p in [68u64, 101, 1009] {
            assert!(lhalf_log_factor(p) > 0.0);
        }
    }
}
