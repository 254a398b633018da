//! The multiplicative function `β(q^ν) = 4^{-ν}·binom(2ν, ν)` and the
//! constant `𝔖 = Σ_{n≥1} β(n)²/n²`.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::reduce::pairwise_sum_by;
use crate::special::exp_integral_e1;

pub const SERIES_CUTOFF: usize = 1_000_000;
pub const PRODUCT_CUTOFF: usize = 100_000;

/// `β(q^ν)`; independent of `q`.
pub fn beta_prime_power(nu: u32) -> f64 {
    // 4^{-ν}·binom(2ν,ν) = Π_{i=1}^{ν} (2i-1)/(2i)
    (1..=nu).map(|i| (2 * i - 1) as f64 / (2 * i) as f64).product()
}

/// `β(n)` for `n ∈ [0, N]` (slot 0 unused) from a smallest-prime-factor sieve.
#[derive(Debug, Clone)]
pub struct BetaSeries {
    pub cutoff: usize,
    pub beta: Vec<f64>,
    /// `Σ_{n≤N} β(n)²/n²`.
    pub partial: f64,
    /// Estimated `Σ_{n>N} β(n)²/n²`.
    pub tail: f64,
}

impl BetaSeries {
    pub fn new(cutoff: usize) -> Self {
        let n = cutoff.max(16);
        let mut spf = vec![0u32; n + 1];
        for i in 2..=n {
            if spf[i] == 0 {
                let mut m = i;
                while m <= n {
                    if spf[m] == 0 {
                        spf[m] = i as u32;
                    }
                    m += i;
                }
            }
        }
        let table: Vec<f64> = (0..24).map(beta_prime_power).collect();
        let mut beta = vec![0.0; n + 1];
        beta[1] = 1.0;
        for i in 2..=n {
            let q = spf[i] as usize;
            let mut m = i;
            let mut nu = 0;
            while m % q == 0 {
                m /= q;
                nu += 1;
            }
            beta[i] = beta[m] * table[nu];
        }
        let partial = pairwise_sum_by(n, &|i| {
            let k = i + 1;
            let b = beta[k];
            b * b / (k as f64 * k as f64)
        });
        // β(n)² has mean density decaying like (log n)^{-3/4}; measure it on
        // (N/2, N] and integrate the density against n^{-2} beyond N
        let lo = n / 2;
        let density = pairwise_sum_by(n - lo, &|i| beta[lo + 1 + i].powi(2)) / (n - lo) as f64;
        let ln_n = (n as f64).ln();
        let tail = density / n as f64 * (1.0 - 0.75 / ln_n);
        Self { cutoff: n, beta, partial, tail }
    }

    pub fn get(&self, n: usize) -> f64 {
        self.beta[n]
    }

    pub fn total(&self) -> f64 {
        self.partial + self.tail
    }
}

/// `Π_{q≤P} Σ_ν β(q^ν)² q^{-2ν}`, with the primes beyond `P` contributing
/// `exp(Σ_{q>P} q^{-2}/4) ≈ exp(E₁(log P)/4)`.
pub fn frak_s_euler_product(cutoff: usize) -> f64 {
    let mut composite = vec![false; cutoff + 1];
    let mut log_sum = Vec::new();
    for q in 2..=cutoff {
        if composite[q] {
            continue;
        }
        let mut m = q * q;
        while m <= cutoff {
            composite[m] = true;
            m += q;
        }
        let x = 1.0 / (q as f64 * q as f64);
        let mut factor = 0.0;
        let mut pw = 1.0;
        for nu in 1..64 {
            pw *= x;
            let t = beta_prime_power(nu).powi(2) * pw;
            factor += t;
            if t < 1e-20 * factor {
                break;
            }
        }
        log_sum.push(factor.ln_1p());
    }
    let logs = pairwise_sum_by(log_sum.len(), &|i| log_sum[i]);
    (logs + 0.25 * exp_integral_e1((cutoff as f64).ln())).exp()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrakS {
    pub series: f64,
    pub euler_product: f64,
}

impl FrakS {
    pub fn discrepancy(&self) -> f64 {
        (self.series - self.euler_product).abs()
    }
}

/// Both evaluations of `𝔖` at the default cutoffs, computed once per process.
pub fn frak_s_routes() -> FrakS {
    static CELL: OnceLock<FrakS> = OnceLock::new();
    *CELL.get_or_init(|| FrakS {
        series: BetaSeries::new(SERIES_CUTOFF).total(),
        euler_product: frak_s_euler_product(PRODUCT_CUTOFF),
    })
}

/// `𝔖` from the Euler product, after checking the series agrees within `tol`.
pub fn frak_s(tol: f64) -> Result<f64> {
    if !(tol >= 1e-10) {
        return Err(Error::InvalidParameter(format!("frak_s tolerance must be >= 1e-10, got {tol}")));
    }
    let s = frak_s_routes();
    if s.discrepancy() > tol {
        return Err(Error::CrossCheck(format!(
            "series {} and Euler product {} differ by {:e}",
            s.series,
            s.euler_product,
            s.discrepancy()
        )));
    }
    Ok(s.euler_product)
}
