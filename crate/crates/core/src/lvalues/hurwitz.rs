//! Hurwitz zeta `ζ(s, a) = Σ_{m≥0} (m+a)^{-s}` by Euler–Maclaurin summation.

use crate::error::{Error, Result};
use crate::special::BERNOULLI;

/// Terms summed directly before the Euler–Maclaurin tail takes over.
pub const DIRECT_TERMS: usize = 50;

/// `Σ_{m≥0} (N+m)^{-s}` from the Euler–Maclaurin formula alone, with
/// Bernoulli corrections through `B_12`. Accurate once `N` is well above
/// `|s|`; valid for `s < 1` in the sense of analytic continuation.
pub(crate) fn zeta_tail(s: f64, n: f64) -> f64 {
    let mut acc = n.powf(1.0 - s) / (s - 1.0) + 0.5 * n.powf(-s);
    // (s)_{2k-1} N^{-s-2k+1}, built up two factors at a time
    let mut rising = s;
    let mut power = n.powf(-s - 1.0);
    let mut fact = 2.0;
    for k in 1..=6 {
        acc += BERNOULLI[2 * k] / fact * rising * power;
        let kk = (2 * k) as f64;
        rising *= (s + kk - 1.0) * (s + kk);
        power /= n * n;
        fact *= (kk + 1.0) * (kk + 2.0);
    }
    acc
}

/// `ζ(s, a)` for `s > 0`, `s ≠ 1`, `a ∈ (0, 1]`.
///
/// The first [`DIRECT_TERMS`] terms are summed explicitly (smallest last),
/// and the remainder starts at `N = DIRECT_TERMS + a ≥ 50`.
pub fn hurwitz_zeta(s: f64, a: f64) -> Result<f64> {
    if s == 1.0 {
        return Err(Error::OutOfDomain { function: "hurwitz_zeta (pole at s = 1)", value: s });
    }
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::OutOfDomain { function: "hurwitz_zeta", value: s });
    }
    if !(a > 0.0 && a <= 1.0) {
        return Err(Error::OutOfDomain { function: "hurwitz_zeta shift", value: a });
    }
    let tail = zeta_tail(s, DIRECT_TERMS as f64 + a);
    let direct = (0..DIRECT_TERMS).rev().fold(0.0, |acc, m| acc + (m as f64 + a).powf(-s));
    Ok(direct + tail)
}
