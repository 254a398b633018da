//! Special functions: Γ, log Γ, 1/Γ, digamma, Bessel `J₀`, binomials, and
//! numerical checks of the Gamma-series identity and the `cos^{2μ}` integral
//! that drive the moment main terms.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lvalues::hurwitz::zeta_tail;

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Bernoulli numbers `B_0..B_14` (`B_1 = -1/2`).
pub(crate) const BERNOULLI: [f64; 15] = [
    1.0,
    -0.5,
    1.0 / 6.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    1.0 / 42.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    5.0 / 66.0,
    0.0,
    -691.0 / 2730.0,
    0.0,
    7.0 / 6.0,
];

/// Tunables shared by the functions in this module.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecialFnConfig {
    pub lanczos_order: usize,
    /// `J₀` series stops once a term drops below this fraction of the partial sum.
    pub bessel_rel_cutoff: f64,
    /// Node count for the trapezoid evaluation of the `J₀` integral.
    pub quadrature_nodes: usize,
}

impl Default for SpecialFnConfig {
    fn default() -> Self {
        Self { lanczos_order: LANCZOS_COEFFS.len(), bessel_rel_cutoff: 1e-16, quadrature_nodes: 10_000 }
    }
}

fn lanczos_sum(x: f64) -> f64 {
    // x is already shifted down by one
    let mut acc = LANCZOS_COEFFS[0];
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    acc
}

/// `log Γ(x)` for `x > 0`; NaN elsewhere.
pub fn ln_gamma(x: f64) -> f64 {
    if x.is_nan() || x <= 0.0 {
        return f64::NAN;
    }
    if x < 0.5 {
        // reflection: Γ(x)Γ(1-x) = π / sin(πx)
        return (PI / (PI * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let t = x + LANCZOS_G + 0.5;
    0.5 * TAU.ln() + (x + 0.5) * t.ln() - t + lanczos_sum(x).ln()
}

/// `Γ(x)` for `x ∈ (0, 171)`.
pub fn gamma_fn(x: f64) -> Result<f64> {
    if !(x > 0.0 && x < 171.0) {
        return Err(Error::OutOfDomain { function: "gamma", value: x });
    }
    Ok(gamma_unchecked(x))
}

fn gamma_unchecked(x: f64) -> f64 {
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma_unchecked(1.0 - x));
    }
    let x = x - 1.0;
    let t = x + LANCZOS_G + 0.5;
    // split the power so t^(x+1/2) cannot overflow before e^{-t} is applied
    let half = t.powf(0.5 * (x + 0.5));
    TAU.sqrt() * lanczos_sum(x) * (half * (-t).exp()) * half
}

/// `1/Γ(x)` for any real `x`, exactly `0` at the non-positive integers.
pub fn rgamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.floor() {
        return 0.0;
    }
    if x > 0.0 {
        if x < 171.0 {
            return 1.0 / gamma_unchecked(x);
        }
        return (-ln_gamma(x)).exp();
    }
    // 1/Γ(x) = sin(πx)·Γ(1-x)/π
    let s = (PI * x).sin();
    let g = if 1.0 - x < 171.0 { gamma_unchecked(1.0 - x) } else { f64::INFINITY };
    s * g / PI
}

/// Digamma `ψ(x)` for `x > 0`: upward recurrence to `x ≥ 10`, then the
/// asymptotic series through `B_14`.
pub fn digamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::OutOfDomain { function: "digamma", value: x });
    }
    let mut shift = 0.0;
    let mut z = x;
    while z < 10.0 {
        shift += 1.0 / z;
        z += 1.0;
    }
    let inv2 = 1.0 / (z * z);
    let mut series = 0.0;
    let mut pw = inv2;
    for k in 1..=7 {
        series += BERNOULLI[2 * k] / (2 * k) as f64 * pw;
        pw *= inv2;
    }
    Ok(z.ln() - 0.5 / z - series - shift)
}

/// Power series of `J₀`, truncated once a term past the peak falls below
/// `cutoff·|partial sum|`.
pub fn bessel_j0_series(z: f64, cutoff: f64) -> f64 {
    let q = 0.25 * z * z;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= -q / (k * k);
        sum += term;
        if k * k > q && term.abs() < cutoff * sum.abs() {
            break;
        }
        if term == 0.0 {
            break;
        }
    }
    sum
}

/// `J₀(z) = (1/2π)∫_{-π}^{π} e^{iz cos φ} dφ` by the `nodes`-point trapezoid
/// rule (spectrally accurate for this periodic integrand).
pub fn bessel_j0_integral(z: f64, nodes: usize) -> f64 {
    let h = TAU / nodes as f64;
    let sum: f64 = (0..nodes).map(|k| (z * (h * k as f64).cos()).cos()).sum();
    sum / nodes as f64
}

/// Above this modulus the alternating series loses too many digits to
/// cancellation and the trapezoid form is used instead.
pub const BESSEL_SERIES_LIMIT: f64 = 12.0;
pub const BESSEL_MAX_ARG: f64 = 50.0;

/// Bessel `J₀` for `|z| ≤ 50`.
pub fn bessel_j0(z: f64) -> Result<f64> {
    if !(z.abs() <= BESSEL_MAX_ARG) {
        return Err(Error::OutOfDomain { function: "bessel_j0", value: z });
    }
    if z.abs() <= BESSEL_SERIES_LIMIT {
        Ok(bessel_j0_series(z, SpecialFnConfig::default().bessel_rel_cutoff))
    } else {
        Ok(bessel_j0_integral(z, 512))
    }
}

/// Exponential integral `E₁(x) = ∫_x^∞ e^{-t}/t dt` for `x > 0`.
pub fn exp_integral_e1(x: f64) -> f64 {
    if !(x > 0.0) {
        return f64::NAN;
    }
    if x < 1.0 {
        let mut term = 1.0;
        let mut sum = 0.0;
        for k in 1..60 {
            term *= -x / k as f64;
            sum += term / k as f64;
            if term.abs() < 1e-18 {
                break;
            }
        }
        return -EULER_GAMMA - x.ln() - sum;
    }
    // continued fraction e^{-x}/(x+1-1/(x+3-4/(x+5-…))), modified Lentz
    let tiny = 1e-300;
    let mut b = x + 1.0;
    let mut c = 1.0 / tiny;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..200 {
        let a = -((i * i) as f64);
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() < 1e-16 {
            break;
        }
    }
    h * (-x).exp()
}

/// `binom(n, k)`; exact integer arithmetic for `n ≤ 60`, log space above.
pub fn binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    if n <= 60 {
        let mut acc: u128 = 1;
        for i in 0..k {
            acc = acc * (n - i) as u128 / (i + 1) as u128;
        }
        return acc as f64;
    }
    log_binomial(n, k).exp()
}

pub fn log_binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    ln_gamma(n as f64 + 1.0) - ln_gamma(k as f64 + 1.0) - ln_gamma((n - k) as f64 + 1.0)
}

/// `Γ(2κ+1) / (2Γ(κ+1)²)`, the main-term constant of the `2κ`-th moment.
pub fn moment_constant(kappa: f64) -> f64 {
    if kappa == kappa.floor() && (0.0..=30.0).contains(&kappa) {
        let k = kappa as u64;
        return binomial(2 * k, k) / 2.0;
    }
    if 2.0 * kappa + 1.0 < 171.0 {
        if let (Ok(a), Ok(b)) = (gamma_fn(2.0 * kappa + 1.0), gamma_fn(kappa + 1.0)) {
            return a / (2.0 * b * b);
        }
    }
    (ln_gamma(2.0 * kappa + 1.0) - 2.0 * ln_gamma(kappa + 1.0)).exp() / 2.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub pass: bool,
}

/// Bernoulli polynomial `B_n(x)`.
fn bernoulli_poly(n: usize, x: f64) -> f64 {
    (0..=n).map(|i| binomial(n as u64, i as u64) * BERNOULLI[i] * x.powi((n - i) as i32)).sum()
}

/// Coefficients `e_m` of `f(x) = C·x^{-κ-3/2}·Σ_m e_m x^{-m}` for the series
/// terms `f(j) = Γ(2j-κ)Γ(j+1/2) / (Γ(2j+1)Γ(j+1))`, obtained from the
/// Stirling expansion `log Γ(z+a) ~ (z+a-1/2)log z - z + ½log 2π
/// + Σ_k (-1)^{k+1} B_{k+1}(a) / (k(k+1) z^k)`.
fn gamma_series_tail_coeffs(kappa: f64, order: usize) -> Vec<f64> {
    let mut d = vec![0.0; order + 1];
    for (k, dk) in d.iter_mut().enumerate().skip(1) {
        let b = |a: f64| bernoulli_poly(k + 1, a);
        let two_k = 2f64.powi(k as i32);
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        *dk = sign / (k * (k + 1)) as f64 * (b(-kappa) / two_k + b(0.5) - b(1.0) / two_k - b(1.0));
    }
    // e = exp(Σ d_k y^k):  m·e_m = Σ_{k=1}^{m} k·d_k·e_{m-k}
    let mut e = vec![0.0; order + 1];
    e[0] = 1.0;
    for m in 1..=order {
        e[m] = (1..=m).map(|k| k as f64 * d[k] * e[m - k]).sum::<f64>() / m as f64;
    }
    e
}

const GAMMA_SERIES_DIRECT_TERMS: usize = 400;
const GAMMA_SERIES_TAIL_ORDER: usize = 10;

/// Left side of the Gamma-series identity,
/// `Σ_{j≥0} Γ(κ+1) / ((2j)!·Γ(κ-2j+1)) · binom(2j,j)·4^{-j}`.
///
/// Terms follow the ratio `t_{j+1}/t_j = (j-κ/2)(j-(κ-1)/2)/(j+1)²`, which
/// encodes `1/Γ(non-positive integer) = 0`: the series terminates for
/// integer κ. Otherwise the terms decay like `j^{-κ-3/2}` with a fixed sign,
/// too slowly for truncation, so the sum runs directly to
/// `j = GAMMA_SERIES_DIRECT_TERMS` and the remainder is evaluated from the
/// asymptotic expansion of the terms with Hurwitz-zeta tails.
pub fn gamma_series_lhs(kappa: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 0.0;
    let j_max = GAMMA_SERIES_DIRECT_TERMS.max((2.0 * kappa).ceil() as usize + GAMMA_SERIES_DIRECT_TERMS);
    for j in 0..j_max {
        sum += term;
        let jf = j as f64;
        term *= (jf - kappa / 2.0) * (jf - (kappa - 1.0) / 2.0) / ((jf + 1.0) * (jf + 1.0));
        if term == 0.0 {
            return sum;
        }
    }
    // term now holds t_J with J = j_max
    let big_j = j_max as f64;
    let s = kappa + 1.5;
    let e = gamma_series_tail_coeffs(kappa, GAMMA_SERIES_TAIL_ORDER);
    let tail: f64 = e.iter().enumerate().map(|(m, &em)| em * zeta_tail(s + m as f64, big_j)).sum();
    let at_j: f64 = big_j.powf(-s) * e.iter().enumerate().map(|(m, &em)| em * big_j.powi(-(m as i32))).sum::<f64>();
    sum + term * tail / at_j
}

/// Checks `Σ_j Γ(κ+1)/((2j)!Γ(κ-2j+1))·binom(2j,j)·4^{-j} = Γ(2κ+1)/(2^κ Γ(κ+1)²)`.
pub fn prop_a1_check(kappa: f64, tol: f64) -> Result<IdentityCheck> {
    if !(kappa >= 0.0) || !kappa.is_finite() {
        return Err(Error::InvalidParameter(format!("kappa must be >= 0, got {kappa}")));
    }
    let lhs = gamma_series_lhs(kappa);
    let rhs = (ln_gamma(2.0 * kappa + 1.0) - kappa * 2f64.ln() - 2.0 * ln_gamma(kappa + 1.0)).exp();
    let pass = (lhs - rhs).abs() <= tol * rhs.abs().max(1.0);
    Ok(IdentityCheck { lhs, rhs, pass })
}

/// Tanh–sinh quadrature on `[a, b]`, halving the step until two successive
/// levels agree to `tol` (relative). Endpoint singularities are tolerated:
/// nodes that round onto an endpoint are skipped.
pub fn tanh_sinh<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let t_max = 4.0;
    let node = |t: f64| -> f64 {
        let u = FRAC_PI_2 * t.sinh();
        let x = mid + half * u.tanh();
        if x <= a || x >= b {
            return 0.0;
        }
        let c = u.cosh();
        let w = half * FRAC_PI_2 * t.cosh() / (c * c);
        w * f(x)
    };
    let mut h = 0.5;
    let mut sum = node(0.0);
    let mut k = 1;
    while k as f64 * h <= t_max {
        let t = k as f64 * h;
        sum += node(t) + node(-t);
        k += 1;
    }
    let mut estimate = sum * h;
    for _ in 0..12 {
        h *= 0.5;
        let mut k = 1;
        while k as f64 * h <= t_max {
            let t = k as f64 * h;
            sum += node(t) + node(-t);
            k += 2;
        }
        let next = sum * h;
        let done = (next - estimate).abs() <= tol * next.abs().max(1e-300);
        estimate = next;
        if done {
            break;
        }
    }
    estimate
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrigIntegralCheck {
    pub quadrature: f64,
    pub closed_form: f64,
    pub pass: bool,
}

/// Compares `∫₀^{π/2} cos^{2μ}θ dθ` with `π/2^{2μ+1}·Γ(2μ+1)/Γ(μ+1)²`.
pub fn trig_integral_check(mu: f64) -> Result<TrigIntegralCheck> {
    trig_integral_check_with_tol(mu, 1e-8)
}

pub fn trig_integral_check_with_tol(mu: f64, tol: f64) -> Result<TrigIntegralCheck> {
    if !(mu > -0.5) || !mu.is_finite() {
        return Err(Error::InvalidParameter(format!("mu must exceed -1/2, got {mu}")));
    }
    // θ → π/2 - θ puts the possible singularity at the origin, where sin is exact
    let quadrature = tanh_sinh(|u| u.sin().powf(2.0 * mu), 0.0, FRAC_PI_2, 1e-12);
    let closed_form =
        PI / 2f64.powf(2.0 * mu + 1.0) * (ln_gamma(2.0 * mu + 1.0) - 2.0 * ln_gamma(mu + 1.0)).exp();
    let pass = (quadrature - closed_form).abs() <= tol * closed_form.abs().max(1.0);
    Ok(TrigIntegralCheck { quadrature, closed_form, pass })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BesselCheck {
    pub z: f64,
    pub series: f64,
    pub integral: f64,
    pub pass: bool,
}

/// Series against the 10⁴-node integral form of `J₀`.
pub fn bessel_cross_check(z: f64, tol: f64) -> BesselCheck {
    let cfg = SpecialFnConfig::default();
    let series = bessel_j0_series(z, cfg.bessel_rel_cutoff);
    let integral = bessel_j0_integral(z, cfg.quadrature_nodes);
    BesselCheck { z, series, integral, pass: (series - integral).abs() <= tol }
}
