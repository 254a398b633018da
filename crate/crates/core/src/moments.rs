//! Moments of the `K(χ)` family compared with their main terms.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::arith::{mod_pow, PrimeContext};
use crate::error::{Error, Result};
use crate::expsums::{GaussTable, KFamily};
use crate::reduce::pairwise_sum_by;
use crate::special::{binomial, moment_constant};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MomentKind {
    Abs,
    Mixed,
    Star,
    /// `Σ*|K|^{2κ}|L(1,χ)|`
    WeightedL1,
    /// `Σ*|K|^{2κ}|L(1/2,χ)|²`
    WeightedLHalf,
    /// `Σ_{χ∈𝔄(p)}|L(1/2,χ)|²`
    LHalfSecond,
}

impl MomentKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MomentKind::Abs => "abs",
            MomentKind::Mixed => "mixed",
            MomentKind::Star => "star",
            MomentKind::WeightedL1 => "weighted-l1",
            MomentKind::WeightedLHalf => "weighted-lhalf",
            MomentKind::LHalfSecond => "lhalf-second",
        }
    }
}

/// A computed moment next to its predicted main term.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentReport {
    pub p: u64,
    pub kind: MomentKind,
    pub kappa: Option<f64>,
    pub k: Option<u32>,
    pub l: Option<u32>,
    pub n: Option<u64>,
    pub computed: Complex64,
    pub predicted: Complex64,
    pub abs_err: f64,
    /// `abs_err / |predicted|`; absent when the main term vanishes.
    pub rel_err: Option<f64>,
    /// Size of the error term with unit constant.
    pub envelope: f64,
    pub bound_ratio: f64,
}

impl MomentReport {
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn build(
        p: u64,
        kind: MomentKind,
        kappa: Option<f64>,
        k: Option<u32>,
        l: Option<u32>,
        n: Option<u64>,
        computed: Complex64,
        predicted: Complex64,
        envelope: f64,
    ) -> Self {
        let abs_err = (computed - predicted).norm();
        let rel_err = (predicted.norm() > 0.0).then(|| abs_err / predicted.norm());
        Self { p, kind, kappa, k, l, n, computed, predicted, abs_err, rel_err, envelope, bound_ratio: abs_err / envelope }
    }
}

/// `√p·log p`, the shape shared by all moment error terms.
pub fn sqrt_log(p: u64) -> f64 {
    let pf = p as f64;
    pf.sqrt() * pf.ln()
}

/// `|z|^{2κ}` with `|z| = 0` contributing exactly `0`.
pub fn abs_power(z: Complex64, kappa: f64) -> f64 {
    let r = z.norm();
    if r == 0.0 {
        0.0
    } else {
        (2.0 * kappa * r.ln()).exp()
    }
}

fn unit(ctx: &PrimeContext, n: i64) -> Result<u64> {
    let r = ctx.residue(n);
    if r == 0 {
        return Err(Error::ZeroResidue(n, ctx.p()));
    }
    Ok(r)
}

/// Pairwise sum of `w(j)` over the even nontrivial `j`.
pub(crate) fn sum_even_nontrivial<F: Fn(u64) -> Complex64>(family: &KFamily, w: F) -> Complex64 {
    pairwise_sum_by(family.family_size(), &|i| w(2 * (i as u64 + 1)))
}

/// `M_κ(n,p) = Σ*_χ χ(n)|K(χ)|^{2κ}` against `Γ(2κ+1)/(2Γ(κ+1)²)·Δ_n·p`,
/// `Δ_n = 1` iff `n ≡ ±1`. Odd characters are skipped since `K` vanishes there.
pub fn moment_abs(ctx: &PrimeContext, family: &KFamily, kappa: f64, n: i64) -> Result<MomentReport> {
    if !(kappa > 0.0) || !kappa.is_finite() {
        return Err(Error::InvalidParameter(format!("kappa must be > 0, got {kappa}")));
    }
    let n = unit(ctx, n)?;
    let p = ctx.p();
    let computed = sum_even_nontrivial(family, |j| ctx.chi(j, n as i64) * abs_power(family.get(j), kappa));
    let delta = if n == 1 || n == p - 1 { 1.0 } else { 0.0 };
    let predicted = Complex64::new(moment_constant(kappa) * delta * p as f64, 0.0);
    let envelope = kappa * 4f64.powf(kappa) * sqrt_log(p);
    Ok(MomentReport::build(p, MomentKind::Abs, Some(kappa), None, None, Some(n), computed, predicted, envelope))
}

/// `Δ_{n;k,l} = 1` iff `2^k ≡ ±2^l·n (mod p)`.
pub fn mixed_delta(p: u64, k: u32, l: u32, n: u64) -> bool {
    let lhs = mod_pow(2, k as u64, p);
    let rhs = mod_pow(2, l as u64, p) * (n % p) % p;
    lhs == rhs || (lhs + rhs) % p == 0
}

/// `M_{k,l}(n,p) = Σ*_χ χ(n)·conj(K)^k·K^l` against
/// `ε_p^{k-l}·binom(k+l,(k+l)/2)·Δ_{n;k,l}·p/2` (zero for odd `k+l`).
pub fn moment_mixed(ctx: &PrimeContext, family: &KFamily, k: u32, l: u32, n: i64) -> Result<MomentReport> {
    if k == 0 && l == 0 {
        return Err(Error::InvalidParameter("mixed moment needs k + l >= 1".into()));
    }
    let n = unit(ctx, n)?;
    let p = ctx.p();
    let computed = sum_even_nontrivial(family, |j| {
        let kv = family.get(j);
        ctx.chi(j, n as i64) * kv.conj().powu(k) * kv.powu(l)
    });
    let predicted = if (k + l) % 2 == 0 && mixed_delta(p, k, l, n) {
        let e = ctx.eps().powi(k as i32 - l as i32);
        e * (binomial((k + l) as u64, ((k + l) / 2) as u64) * p as f64 / 2.0)
    } else {
        Complex64::new(0.0, 0.0)
    };
    let kl = (k + l) as f64;
    let envelope = kl * 2f64.powf(kl) * sqrt_log(p);
    Ok(MomentReport::build(p, MomentKind::Mixed, None, Some(k), Some(l), Some(n), computed, predicted, envelope))
}

/// `M_k*(p) = Σ_{χ∈𝔄(p)} (χ̄(2)K(χ)τ(φ)/√p)^k` against `½·binom(k,k/2)·p`
/// for even `k` and `0` for odd `k`.
pub fn moment_star(ctx: &PrimeContext, family: &KFamily, gauss: &GaussTable, k: u32) -> Result<MomentReport> {
    if k == 0 {
        return Err(Error::InvalidParameter("star moment needs k >= 1".into()));
    }
    let p = ctx.p();
    let tp = gauss.get(ctx.half()) / (p as f64).sqrt();
    let computed = sum_even_nontrivial(family, |j| (ctx.chi(j, 2).conj() * family.get(j) * tp).powu(k));
    let predicted = if k % 2 == 0 {
        Complex64::new(binomial(k as u64, (k / 2) as u64) * p as f64 / 2.0, 0.0)
    } else {
        Complex64::new(0.0, 0.0)
    };
    let envelope = k as f64 * 2f64.powi(k as i32) * sqrt_log(p);
    Ok(MomentReport::build(p, MomentKind::Star, None, Some(k), None, None, computed, predicted, envelope))
}
