use num_complex::Complex64;

use super::GaussTable;
use crate::arith::PrimeContext;
use crate::error::{Error, Result};
use crate::reduce::pairwise_sum_by;
use crate::spectral::{inverse_dft, Spectrum};

/// `Kl_k(n, p) = p^{-(k-1)/2} Σ_{x₁⋯x_k = n} e((x₁+⋯+x_k)/p)` for `n ∈ [1, p-1]`.
#[derive(Debug, Clone)]
pub struct HyperKlTable {
    pub k: u32,
    pub p: u64,
    /// Entry `n - 1` holds `Kl_k(n, p)`.
    pub vals: Vec<Complex64>,
}

impl HyperKlTable {
    pub fn get(&self, n: u64) -> Complex64 {
        let r = n % self.p;
        assert!(r != 0, "Kl_k is defined on units only");
        self.vals[(r - 1) as usize]
    }

    pub fn max_abs(&self) -> f64 {
        self.vals.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn max_deviation(&self, other: &HyperKlTable) -> f64 {
        self.vals.iter().zip(&other.vals).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// `max_n |conj Kl_k(n) - Kl_k((-1)^k n)|`.
    pub fn conjugation_defect(&self) -> f64 {
        (1..self.p)
            .map(|n| {
                let m = if self.k % 2 == 0 { n } else { self.p - n };
                (self.get(n).conj() - self.get(m)).norm()
            })
            .fold(0.0, f64::max)
    }
}

fn check_rank(k: u32) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("hyper-Kloosterman rank must be >= 2, got {k}")));
    }
    Ok(())
}

/// Spectral route: `Σ_n χ(n)Kl_k(n) = p^{(1-k)/2}τ(χ)^k` for every `χ`, so
/// one inverse character transform recovers the whole table.
pub fn hyper_kloosterman(ctx: &PrimeContext, gauss: &GaussTable, k: u32) -> Result<HyperKlTable> {
    check_rank(k)?;
    let p = ctx.p();
    let scale = (p as f64).powf((1.0 - k as f64) / 2.0);
    let spec = Spectrum { p, values: gauss.tau.values.iter().map(|t| t.powu(k) * scale).collect() };
    let by_index = inverse_dft(&spec);
    let mut vals = vec![Complex64::new(0.0, 0.0); (p - 1) as usize];
    for (t, v) in by_index.values().iter().enumerate() {
        vals[(ctx.pow(t as u64) - 1) as usize] = *v;
    }
    Ok(HyperKlTable { k, p, vals })
}

/// Recursive route: `Kl_k(n) = p^{-1/2} Σ_{x≠0} e(x/p)·Kl_{k-1}(n·x̄)` from
/// `Kl_1(m) = e(m/p)`. Costs `O(k·p²)`.
pub fn hyper_kloosterman_recursive(ctx: &PrimeContext, k: u32) -> Result<HyperKlTable> {
    check_rank(k)?;
    let p = ctx.p();
    let inv: Vec<u64> = (0..p).map(|x| if x == 0 { 0 } else { ctx.inv(x).expect("unit") }).collect();
    let add: Vec<Complex64> = (0..p).map(|x| ctx.additive(x as i64)).collect();
    let norm = 1.0 / (p as f64).sqrt();
    let mut cur: Vec<Complex64> = (1..p).map(|m| add[m as usize]).collect();
    for _ in 2..=k {
        let prev = cur;
        cur = (1..p)
            .map(|n| {
                let s = pairwise_sum_by((p - 1) as usize, &|i| {
                    let x = i as u64 + 1;
                    add[x as usize] * prev[(n * inv[x as usize] % p - 1) as usize]
                });
                s * norm
            })
            .collect();
    }
    Ok(HyperKlTable { k, p, vals: cur })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expsums::gauss_table;
    use crate::spectral::DftMode;
    use std::f64::consts::PI;

    #[test]
    fn rank_two_examples() {
        let ctx = PrimeContext::new(5).unwrap();
        let g = gauss_table(&ctx, DftMode::Fast).unwrap();
        let kl = hyper_kloosterman(&ctx, &g, 2).unwrap();
        let want = (2.0 + 2.0 * (4.0 * PI / 5.0).cos()) / 5f64.sqrt();
        assert!((kl.get(1) - Complex64::new(want, 0.0)).norm() < 1e-12);
        assert!((want - 0.170_820).abs() < 1e-6);

        let ctx = PrimeContext::new(7).unwrap();
        let g = gauss_table(&ctx, DftMode::Fast).unwrap();
        let kl = hyper_kloosterman(&ctx, &g, 2).unwrap();
        let want = (2.0 * (4.0 * PI / 7.0).cos() + 4.0 * (2.0 * PI / 7.0).cos()) / 7f64.sqrt();
        assert!((kl.get(1).re - want).abs() < 1e-12);
        assert!((want - 0.774_418).abs() < 1e-6);
    }

    #[test]
    fn spectral_matches_recursive() {
        for p in [5u64, 7, 11, 13, 101] {
            let ctx = PrimeContext::new(p).unwrap();
            let g = gauss_table(&ctx, DftMode::Fast).unwrap();
            for k in 2..=5 {
                let a = hyper_kloosterman(&ctx, &g, k).unwrap();
                let b = hyper_kloosterman_recursive(&ctx, k).unwrap();
                assert!(a.max_deviation(&b) <= 1e-8 * k as f64, "p={p} k={k}");
            }
        }
    }

    #[test]
    fn deligne_and_conjugation() {
        for p in [101u64, 1009, 10007] {
            let ctx = PrimeContext::new(p).unwrap();
            let g = gauss_table(&ctx, DftMode::Fast).unwrap();
            for k in 2..=5 {
                let kl = hyper_kloosterman(&ctx, &g, k).unwrap();
                assert!(kl.max_abs() <= k as f64 + 1e-9, "p={p} k={k}");
                assert!(kl.conjugation_defect() <= 1e-9, "p={p} k={k}");
            }
        }
    }

    #[test]
    fn rank_one_rejected() {
        let ctx = PrimeContext::new(7).unwrap();
        let g = gauss_table(&ctx, DftMode::Fast).unwrap();
        assert!(hyper_kloosterman(&ctx, &g, 1).is_err());
        assert!(hyper_kloosterman_recursive(&ctx, 0).is_err());
    }
}
