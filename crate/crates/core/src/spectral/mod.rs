//! Character spectra.
//!
//! A function `f` on `(Z/pZ)^×` is stored along the index table
//! (`values[t] = f(g^t)`), which turns the simultaneous evaluation of
//! `S(χ_j) = Σ_a f(a)·χ_j(a)` over all `p-1` characters into one
//! length-`(p-1)` DFT with positive orientation.

pub mod fft;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::arith::{unit_root, PrimeContext};
use crate::error::{Error, Result};
use crate::reduce::{pairwise_sum, pairwise_sum_by};
pub use fft::{FftPlan, Sign};

/// Largest prime for which `verify-both` (naive and fast side by side) is allowed.
pub const VERIFY_BOTH_MAX_PRIME: u64 = 2003;

/// A function on the multiplicative group, laid out by index.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupFunction {
    p: u64,
    values: Vec<Complex64>,
}

impl GroupFunction {
    pub fn new(p: u64, values: Vec<Complex64>) -> Result<Self> {
        if values.len() as u64 + 1 != p {
            return Err(Error::InvalidParameter(format!(
                "group function for p = {p} needs {} entries, got {}",
                p.saturating_sub(1),
                values.len()
            )));
        }
        if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::InvalidParameter("group function has non-finite entries".into()));
        }
        Ok(Self { p, values })
    }

    /// Samples `f` on residues: entry `t` is `f(g^t)`.
    pub fn from_residues<F>(ctx: &PrimeContext, f: F) -> Self
    where
        F: Fn(u64) -> Complex64,
    {
        let values = ctx.power_table().iter().map(|&a| f(a as u64)).collect();
        Self { p: ctx.p(), values }
    }

    pub fn from_real_residues<F>(ctx: &PrimeContext, f: F) -> Self
    where
        F: Fn(u64) -> f64,
    {
        Self::from_residues(ctx, |a| Complex64::new(f(a), 0.0))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn norm_sqr_sum(&self) -> f64 {
        pairwise_sum_by(self.values.len(), &|t| self.values[t].norm_sqr())
    }
}

/// `S(χ_j)` for every `j ∈ [0, p-2]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub p: u64,
    pub values: Vec<Complex64>,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, j: u64) -> Complex64 {
        self.values[(j % (self.p - 1)) as usize]
    }

    /// `χ_j` is even iff `j` is even.
    pub fn is_even(&self, j: u64) -> bool {
        j % 2 == 0
    }

    pub fn scaled(mut self, factor: f64) -> Self {
        for v in &mut self.values {
            *v *= factor;
        }
        self
    }

    pub fn norm_sqr_sum(&self) -> f64 {
        pairwise_sum_by(self.values.len(), &|j| self.values[j].norm_sqr())
    }

    /// Relative Parseval defect `|Σ|S|² - (p-1)·Σ|f|²| / ((p-1)·Σ|f|²)`.
    pub fn parseval_defect(&self, f: &GroupFunction) -> f64 {
        let expect = (self.p - 1) as f64 * f.norm_sqr_sum();
        if expect == 0.0 {
            return self.norm_sqr_sum();
        }
        (self.norm_sqr_sum() - expect).abs() / expect
    }

    /// Largest elementwise distance to another spectrum of the same prime.
    pub fn max_deviation(&self, other: &Spectrum) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Which DFT kernel evaluates a spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DftMode {
    Naive,
    #[default]
    Fast,
    /// Both kernels; fails if they disagree beyond the fast-path tolerance.
    VerifyBoth,
}

impl std::str::FromStr for DftMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "naive" => Ok(DftMode::Naive),
            "fast" => Ok(DftMode::Fast),
            "verify-both" => Ok(DftMode::VerifyBoth),
            other => Err(Error::InvalidParameter(format!("unknown fft mode '{other}'"))),
        }
    }
}

/// Direct `O(p²)` evaluation; every output is a pairwise sum in `t` order.
pub fn dft_naive(f: &GroupFunction) -> Spectrum {
    let n = f.values.len();
    let roots: Vec<Complex64> = (0..n).map(|i| unit_root(i as u64, n as u64)).collect();
    let values = (0..n)
        .map(|j| pairwise_sum_by(n, &|t| f.values[t] * roots[j * t % n]))
        .collect();
    Spectrum { p: f.p, values }
}

pub fn dft_fast(f: &GroupFunction) -> Spectrum {
    let mut values = f.values.clone();
    fft::transform(&mut values, Sign::Positive);
    Spectrum { p: f.p, values }
}

/// Tolerance of the fast path against the naive oracle: `1e-8·√n·max|f|`.
pub fn fast_tolerance(f: &GroupFunction) -> f64 {
    1e-8 * (f.values.len() as f64).sqrt() * f.max_abs().max(f64::MIN_POSITIVE)
}

pub fn dft(f: &GroupFunction, mode: DftMode) -> Result<Spectrum> {
    match mode {
        DftMode::Naive => Ok(dft_naive(f)),
        DftMode::Fast => Ok(dft_fast(f)),
        DftMode::VerifyBoth => {
            if f.p > VERIFY_BOTH_MAX_PRIME {
                return Err(Error::InvalidParameter(format!(
                    "verify-both is limited to p <= {VERIFY_BOTH_MAX_PRIME}, got {}",
                    f.p
                )));
            }
            let fast = dft_fast(f);
            let naive = dft_naive(f);
            let dev = fast.max_deviation(&naive);
            let tol = fast_tolerance(f);
            if dev > tol {
                return Err(Error::CrossCheck(format!(
                    "fast and naive DFT differ by {dev:e} > {tol:e} at p = {}",
                    f.p
                )));
            }
            Ok(fast)
        }
    }
}

/// Inverse character transform: given `S(χ_j)` for all `j`, recovers
/// `f(g^t) = (1/(p-1))·Σ_j S(χ_j)·e(-jt/(p-1))`.
pub fn inverse_dft(spec: &Spectrum) -> GroupFunction {
    let n = spec.values.len();
    let mut values = spec.values.clone();
    fft::transform(&mut values, Sign::Negative);
    let scale = 1.0 / n as f64;
    for v in &mut values {
        *v *= scale;
    }
    GroupFunction { p: spec.p, values }
}

/// Pairwise-summed `Σ_j w(j)` over the nontrivial characters `j ∈ [1, p-2]`.
pub fn sum_over_nontrivial<F>(p: u64, w: F) -> Complex64
where
    F: Fn(u64) -> Complex64,
{
    let terms: Vec<Complex64> = (1..p - 1).map(w).collect();
    pairwise_sum(&terms)
}
