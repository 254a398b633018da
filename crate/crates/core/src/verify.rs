//! Exact-identity checks gathered into one report per prime.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::arith::PrimeContext;
use crate::error::Result;
use crate::expsums::{
    gauss_direct, gauss_table, identity_suite, jacobi, jacobi_via_gauss, k_direct, k_family, k_via_legendre_shift,
    quadratic_gauss, quadratic_gauss_direct, tau2_direct, tau2_identity, tau2_table, IdentitySuiteConfig,
    IDENTITY_SUITE_MAX_PRIME,
};
use crate::special::{bessel_cross_check, prop_a1_check, trig_integral_check_with_tol};
use crate::spectral::DftMode;

/// One identity evaluated at one parameter point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    /// `0` for checks that do not depend on a prime.
    pub p: u64,
    pub check: String,
    pub params: String,
    pub lhs_re: f64,
    pub lhs_im: f64,
    pub rhs_re: f64,
    pub rhs_im: f64,
    pub abs_err: f64,
    pub scale: f64,
    pub tol: f64,
    pub pass: bool,
}

impl CheckRecord {
    /// Passes when `|lhs - rhs| ≤ tol·scale`.
    pub fn new(p: u64, check: &str, params: String, lhs: Complex64, rhs: Complex64, scale: f64, tol: f64) -> Self {
        let abs_err = (lhs - rhs).norm();
        Self {
            p,
            check: check.to_string(),
            params,
            lhs_re: lhs.re,
            lhs_im: lhs.im,
            rhs_re: rhs.re,
            rhs_im: rhs.im,
            abs_err,
            scale,
            tol,
            pass: abs_err <= tol * scale,
        }
    }

    fn real(p: u64, check: &str, params: String, lhs: f64, rhs: f64, scale: f64, tol: f64) -> Self {
        Self::new(p, check, params, Complex64::new(lhs, 0.0), Complex64::new(rhs, 0.0), scale, tol)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    /// Relative tolerance of the per-prime identities.
    pub tol: f64,
    pub kmax: u32,
    pub mode: DftMode,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { tol: 1e-7, kmax: 4, mode: DftMode::Fast }
    }
}

/// Characters sampled for the `O(p)`-per-character direct checks.
fn sample_indices(p: u64, limit: usize) -> Vec<u64> {
    let n = p - 1;
    if (n as usize) <= limit {
        return (0..n).collect();
    }
    let step = n / limit as u64;
    let mut v: Vec<u64> = (0..limit as u64).map(|i| (i * step + i % 3) % n).collect();
    v.extend([1, 2, (p - 1) / 2, p - 3, p - 2]);
    v.sort_unstable();
    v.dedup();
    v
}

/// All per-prime checks: quadratic Gauss sums, Jacobi sums as Gauss
/// quotients, both expressions of `K`, the `τ₂` identity and (for
/// `p ≤ 10⁴`) the two moment identities for `k ∈ [2, kmax]`.
pub fn verify_prime(ctx: &PrimeContext, cfg: &VerifyConfig) -> Result<Vec<CheckRecord>> {
    let p = ctx.p();
    let pf = p as f64;
    let sp = pf.sqrt();
    let tol = cfg.tol;
    let gauss = gauss_table(ctx, cfg.mode)?;
    let fam = k_family(ctx, cfg.mode)?;
    let mut out = Vec::new();

    for n in [0i64, 1, 2, 3, -1] {
        out.push(CheckRecord::new(
            p,
            "quadratic-gauss",
            format!("n={n}"),
            quadratic_gauss_direct(ctx, n),
            quadratic_gauss(ctx, n),
            sp,
            tol,
        ));
    }
    out.push(CheckRecord::new(p, "gauss-legendre", String::new(), gauss.get(ctx.half()), quadratic_gauss(ctx, 1), sp, tol));
    out.push(CheckRecord::new(p, "gauss-trivial", String::new(), gauss.get(0), Complex64::new(-1.0, 0.0), sp, tol));
    for &j in &sample_indices(p, 8) {
        out.push(CheckRecord::new(p, "gauss-direct", format!("j={j}"), gauss_direct(ctx, j), gauss.get(j), sp, tol));
    }

    let pairs = [(1, 1), (1, 2), (2, ctx.half()), (3, p - 2), (ctx.half(), ctx.half() + 1)];
    for (j1, j2) in pairs {
        if let Some(v) = jacobi_via_gauss(&gauss, j1, j2) {
            out.push(CheckRecord::new(p, "jacobi-gauss", format!("j1={j1} j2={j2}"), jacobi(ctx, j1, j2), v, sp, tol));
        }
    }

    for &j in &sample_indices(p, 32) {
        out.push(CheckRecord::new(p, "k-definition", format!("j={j}"), k_direct(ctx, j), fam.get(j), 2.0, tol));
    }
    let alt = k_via_legendre_shift(ctx, cfg.mode)?;
    let shift_dev = fam.even_nontrivial().map(|j| (alt.get(j) - fam.get(j)).norm()).fold(0.0, f64::max);
    out.push(CheckRecord::real(p, "k-legendre-shift", "max over even j".into(), shift_dev, 0.0, 2.0, tol));
    out.push(CheckRecord::real(p, "k-gauss-product", "max over even j".into(), fam.route_discrepancy, 0.0, 2.0, tol));

    for n in [1i64, 2, 3] {
        if ctx.residue(n) == 0 {
            continue;
        }
        let t2 = tau2_table(ctx, n, cfg.mode)?;
        let mut worst = (0u64, 0.0f64, Complex64::default(), Complex64::default());
        for j in 1..p - 1 {
            let (l, r) = tau2_identity(ctx, &gauss, &fam, &t2, n, j);
            let d = (l - r).norm();
            if d >= worst.1 {
                worst = (j, d, l, r);
            }
        }
        out.push(CheckRecord::new(p, "tau2-identity", format!("n={n} worst j={}", worst.0), worst.2, worst.3, 4.0 * pf, tol));
        for j in [1, 2, p - 2] {
            out.push(CheckRecord::new(p, "tau2-direct", format!("n={n} j={j}"), tau2_direct(ctx, n, j), t2.get(j), 2.0 * sp, tol));
        }
    }

    if p <= IDENTITY_SUITE_MAX_PRIME && cfg.kmax >= 2 {
        let suite = IdentitySuiteConfig { kmax: cfg.kmax, ns: None, tol, mode: cfg.mode };
        out.extend(identity_suite(ctx, &gauss, &suite)?);
    }
    Ok(out)
}

pub const PROP_A1_KAPPAS: [f64; 10] = [0.0, 0.3, 0.5, 1.0, 1.7, 2.0, 2.5, 3.0, 4.25, 5.0];
pub const TRIG_MUS: [f64; 4] = [0.0, 0.5, 1.0, 2.5];
pub const BESSEL_ZS: [f64; 4] = [0.5, 2.0, 5.0, 10.0];

/// Prime-independent checks of the special-function identities. Their
/// tolerances are fixed, and only tightened by a smaller `tol`.
pub fn verify_constants(tol: f64) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    let t = tol.min(1e-12);
    for kappa in PROP_A1_KAPPAS {
        let c = prop_a1_check(kappa, t)?;
        out.push(CheckRecord::real(0, "gamma-series", format!("kappa={kappa}"), c.lhs, c.rhs, c.rhs.abs().max(1.0), t));
    }
    let t = tol.min(1e-8);
    for mu in TRIG_MUS {
        let c = trig_integral_check_with_tol(mu, t)?;
        out.push(CheckRecord::real(0, "trig-integral", format!("mu={mu}"), c.quadrature, c.closed_form, c.closed_form.abs(), t));
    }
    let t = tol.min(1e-10);
    for z in BESSEL_ZS {
        let c = bessel_cross_check(z, t);
        out.push(CheckRecord::real(0, "bessel-j0", format!("z={z}"), c.series, c.integral, 1.0, t));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes_pass() {
        for p in [5u64, 7, 11, 13] {
            let ctx = PrimeContext::new(p).unwrap();
            let recs = verify_prime(&ctx, &VerifyConfig::default()).unwrap();
            for r in &recs {
                let quoted = r.check == "gauss-product-moment" || r.check == "jacobi-moment";
                assert!(r.pass || quoted, "{r:?}");
            }
            let cfg = VerifyConfig { kmax: 1, ..Default::default() };
            assert!(verify_prime(&ctx, &cfg).unwrap().iter().all(|r| r.pass));
        }
    }

    #[test]
    fn absurd_tolerance_fails() {
        let ctx = PrimeContext::new(13).unwrap();
        let cfg = VerifyConfig { tol: 1e-20, ..Default::default() };
        assert!(verify_prime(&ctx, &cfg).unwrap().iter().any(|r| !r.pass));
        assert!(verify_constants(1e-20).unwrap().iter().any(|r| !r.pass));
    }

    #[test]
    fn constants_pass() {
        for r in verify_constants(1e-7).unwrap() {
            assert!(r.pass, "{r:?}");
        }
    }
}
