use num_complex::Complex64;

use super::{jacobi_with_legendre, hyper_kloosterman_recursive, GaussTable, KFamily};
use crate::arith::PrimeContext;
use crate::error::{Error, Result};
use crate::reduce::pairwise_sum_by;
use crate::spectral::{dft, DftMode, GroupFunction, Spectrum};
use crate::verify::CheckRecord;

/// Largest prime for which the moment identities of the Gauss-sum products
/// are run (their oracle side is the `O(k·p²)` recursive `Kl_k`).
pub const IDENTITY_SUITE_MAX_PRIME: u64 = 10_000;

#[derive(Debug, Clone, PartialEq)]
pub struct IdentitySuiteConfig {
    pub kmax: u32,
    /// Residues `n` to test; `None` picks five spread-out values.
    pub ns: Option<Vec<u64>>,
    /// Relative to the natural size of each side.
    pub tol: f64,
    pub mode: DftMode,
}

impl Default for IdentitySuiteConfig {
    fn default() -> Self {
        Self { kmax: 4, ns: None, tol: 1e-7, mode: DftMode::Fast }
    }
}

/// Up to five distinct units: `1, 2, 3, p-1, (p+1)/2`.
pub(crate) fn default_ns(p: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for n in [1, 2, 3, p - 1, (p + 1) / 2] {
        let n = n % p;
        if n != 0 && !out.contains(&n) {
            out.push(n);
        }
    }
    out
}

/// For `k ∈ [2, kmax]` and each `n`, checks the two moment identities in
/// the form they are usually quoted,
///
/// - `Σ_χ χ̄(n)(τ(χ)·conj τ(χφ))^k = (p-1)p^{k-1/2}Kl_k(n,p)(ε_p φ(-1))^k`
/// - `Σ_χ χ̄(n)J(χ,φ)^k = (p-1)p^{(k-1)/2}Kl_k(n,p)`
///
/// and the forms that character orthogonality actually gives,
///
/// - `Σ_χ χ̄(n)(τ(χ)·conj τ(χφ))^k = (p-1)p^{k-1} Σ_m φ(m)Kl_k(nm,p)·conj Kl_k(m,p)`
/// - `Σ_χ χ̄(n)J(χ,φ)^k = (p-1) Σ_{v₁⋯v_k = n} φ(1-v₁)⋯φ(1-v_k)`
///
/// The left sides come from the Gauss and Jacobi spectra, the right sides
/// from recursive `O(k·p²)` convolutions.
pub fn identity_suite(ctx: &PrimeContext, gauss: &GaussTable, cfg: &IdentitySuiteConfig) -> Result<Vec<CheckRecord>> {
    let p = ctx.p();
    if p > IDENTITY_SUITE_MAX_PRIME {
        return Err(Error::InvalidParameter(format!(
            "identity suite is limited to p <= {IDENTITY_SUITE_MAX_PRIME}, got {p}"
        )));
    }
    let ns = cfg.ns.clone().unwrap_or_else(|| default_ns(p));
    if let Some(&bad) = ns.iter().find(|&&n| n % p == 0) {
        return Err(Error::ZeroResidue(bad as i64, p));
    }
    let jac = jacobi_with_legendre(ctx, cfg.mode)?;
    let pf = p as f64;
    let order = (p - 1) as usize;
    let sign = ctx.eps() * ctx.legendre(-1) as f64;
    let weight: Vec<Complex64> = (1..p).map(|v| Complex64::new(ctx.legendre(1 - v as i64) as f64, 0.0)).collect();
    let mut conv = weight.clone();
    let mut out = Vec::new();
    for k in 2..=cfg.kmax {
        conv = multiplicative_convolution(ctx, &weight, &conv);
        let kl = hyper_kloosterman_recursive(ctx, k)?;
        let prod: Vec<Complex64> = (0..p - 1)
            .map(|j| (gauss.get(j) * gauss.get(ctx.twist_by_legendre(j)).conj()).powu(k))
            .collect();
        let jk: Vec<Complex64> = jac.values.iter().map(|v| v.powu(k)).collect();
        let scale_a = (pf - 1.0) * pf.powi(k as i32);
        let scale_b = (pf - 1.0) * pf.powf(k as f64 / 2.0);
        for &n in &ns {
            let lhs_a = pairwise_sum_by(order, &|j| ctx.chi(j as u64, n as i64).conj() * prod[j]);
            let quoted_a = kl.get(n) * sign.powu(k) * ((pf - 1.0) * pf.powf(k as f64 - 0.5));
            let coupled = pairwise_sum_by(order, &|i| {
                let m = i as u64 + 1;
                kl.get(n * m % p) * kl.get(m).conj() * ctx.legendre(m as i64) as f64
            });
            let exact_a = coupled * ((pf - 1.0) * pf.powi(k as i32 - 1));
            let params = format!("k={k} n={n}");
            out.push(CheckRecord::new(p, "gauss-product-moment", params.clone(), lhs_a, quoted_a, scale_a, cfg.tol));
            out.push(CheckRecord::new(p, "gauss-product-moment-orthogonality", params.clone(), lhs_a, exact_a, scale_a, cfg.tol));

            let lhs_b = pairwise_sum_by(order, &|j| ctx.chi(j as u64, n as i64).conj() * jk[j]);
            let quoted_b = kl.get(n) * ((pf - 1.0) * pf.powf((k as f64 - 1.0) / 2.0));
            let exact_b = conv[(n - 1) as usize] * (pf - 1.0);
            out.push(CheckRecord::new(p, "jacobi-moment", params.clone(), lhs_b, quoted_b, scale_b, cfg.tol));
            out.push(CheckRecord::new(p, "jacobi-moment-orthogonality", params, lhs_b, exact_b, scale_b, cfg.tol));
        }
    }
    Ok(out)
}

/// `(a ⋆ b)(n) = Σ_{x} a(x)·b(n·x̄)` on `(Z/pZ)^×`; slot `n - 1` holds residue `n`.
fn multiplicative_convolution(ctx: &PrimeContext, a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let p = ctx.p();
    let inv: Vec<u64> = (1..p).map(|x| ctx.inv(x).expect("unit")).collect();
    (1..p)
        .map(|n| pairwise_sum_by((p - 1) as usize, &|i| a[i] * b[(n * inv[i] % p - 1) as usize]))
        .collect()
}

/// `τ₂(n, χ_j) = Σ_v χ_j(v)e(nv²/p)` for every `j`.
pub fn tau2_table(ctx: &PrimeContext, n: i64, mode: DftMode) -> Result<Spectrum> {
    let p = ctx.p();
    let n = ctx.residue(n);
    if n == 0 {
        return Err(Error::ZeroResidue(0, p));
    }
    let f = GroupFunction::from_residues(ctx, |v| unit_root_mod(n, v, p));
    dft(&f, mode)
}

fn unit_root_mod(n: u64, v: u64, p: u64) -> Complex64 {
    let e = (n as u128 * v as u128 % p as u128 * v as u128 % p as u128) as u64;
    crate::arith::unit_root(e, p)
}

pub fn tau2_direct(ctx: &PrimeContext, n: i64, j: u64) -> Complex64 {
    let p = ctx.p();
    let n = ctx.residue(n);
    pairwise_sum_by((p - 1) as usize, &|i| {
        let v = i as u64 + 1;
        ctx.chi(j, v as i64) * unit_root_mod(n, v, p)
    })
}

/// Both sides of `|τ₂(n,χ)|² = (1+χ(-1))p + φ(n)τ(φ)χ̄(2)K(χ)√p`, valid for nontrivial `χ`.
pub fn tau2_identity(
    ctx: &PrimeContext,
    gauss: &GaussTable,
    family: &KFamily,
    tau2: &Spectrum,
    n: i64,
    j: u64,
) -> (Complex64, Complex64) {
    let p = ctx.p() as f64;
    let lhs = Complex64::new(tau2.get(j).norm_sqr(), 0.0);
    let parity = if ctx.is_even_character(j) { 2.0 } else { 0.0 };
    let rhs = Complex64::new(parity * p, 0.0)
        + gauss.get(ctx.half()) * ctx.chi(j, 2).conj() * family.get(j) * (ctx.legendre(n) as f64 * p.sqrt());
    (lhs, rhs)
}

/// `|Σ_{1≤i≤(p-1)/2} η^i(a)(τ(η^i)·conj τ(η^iφ))^k| / (k·p^{k+1/2}·log p)`.
pub fn lemma31_diagnostic(ctx: &PrimeContext, gauss: &GaussTable, k: u32, a: i64) -> Result<f64> {
    let p = ctx.p();
    if k < 1 {
        return Err(Error::InvalidParameter("k must be >= 1".into()));
    }
    if ctx.residue(a) == 0 {
        return Err(Error::ZeroResidue(a, p));
    }
    let half = ctx.half() as usize;
    let s = pairwise_sum_by(half, &|i| {
        let i = i as u64 + 1;
        ctx.chi(i, a) * (gauss.get(i) * gauss.get(ctx.twist_by_legendre(i)).conj()).powu(k)
    });
    let pf = p as f64;
    Ok(s.norm() / (k as f64 * pf.powf(k as f64 + 0.5) * pf.ln()))
}
