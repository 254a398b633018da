//! Arbitrary-length discrete Fourier transform.
//!
//! Lengths whose prime factors are all at most [`MAX_RADIX`] go through a
//! recursive mixed-radix Cooley–Tukey pass; every other length is handled by
//! Bluestein's chirp-z reduction to a power-of-two cyclic convolution.
//!
//! The transform computed is unnormalised: `X[k] = Σ_t x[t]·e(σ·kt/n)` with
//! `σ = ±1` selected by [`Sign`].

use num_complex::Complex64;

use crate::arith::{distinct_prime_factors, unit_root};

/// Largest prime radix handled by the direct mixed-radix path.
pub const MAX_RADIX: usize = 31;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    /// `e(+kt/n)`, the orientation used for character sums.
    Positive,
    /// `e(-kt/n)`.
    Negative,
}

impl Sign {
    fn flip(self) -> Self {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

/// Table of `e(σ·i/n)` for `i ∈ [0, n)`, each entry evaluated directly.
fn root_table(n: usize, sign: Sign) -> Vec<Complex64> {
    (0..n)
        .map(|i| {
            let w = unit_root(i as u64, n as u64);
            match sign {
                Sign::Positive => w,
                Sign::Negative => w.conj(),
            }
        })
        .collect()
}

fn prime_factorisation(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    for q in distinct_prime_factors(n as u64) {
        let q = q as usize;
        while n % q == 0 {
            out.push(q);
            n /= q;
        }
    }
    out
}

#[derive(Debug, Clone)]
struct MixedRadix {
    n: usize,
    factors: Vec<usize>,
    roots: Vec<Complex64>,
}

impl MixedRadix {
    fn new(n: usize, sign: Sign) -> Self {
        let mut factors = prime_factorisation(n);
        // radix-4 style grouping is not worth it here; larger radices first
        // keeps the deepest (most numerous) recursion levels at radix 2
        factors.sort_unstable_by(|a, b| b.cmp(a));
        Self { n, factors, roots: root_table(n, sign) }
    }

    fn process(&self, data: &mut [Complex64]) {
        if self.n <= 1 {
            return;
        }
        let input = data.to_vec();
        self.recurse(&input, 0, 1, data, 0, 1);
    }

    /// Transforms the length-`out.len()` subsequence `input[offset + i·stride]`
    /// into `out`.
    fn recurse(
        &self,
        input: &[Complex64],
        offset: usize,
        stride: usize,
        out: &mut [Complex64],
        depth: usize,
        root_stride: usize,
    ) {
        let n = out.len();
        if n == 1 {
            out[0] = input[offset];
            return;
        }
        let r = self.factors[depth];
        let m = n / r;
        for s in 0..r {
            self.recurse(
                input,
                offset + s * stride,
                stride * r,
                &mut out[s * m..(s + 1) * m],
                depth + 1,
                root_stride * r,
            );
        }
        // out[s·m + k1] holds Y_s[k1]; X[k1 + q·m] = Σ_s e(s·k1/n)·Y_s[k1]·e(sq/r)
        let radix_stride = self.n / r;
        let mut buf = [Complex64::new(0.0, 0.0); MAX_RADIX];
        let mut res = [Complex64::new(0.0, 0.0); MAX_RADIX];
        for k1 in 0..m {
            for s in 0..r {
                let tw = self.roots[s * k1 * root_stride];
                buf[s] = out[s * m + k1] * tw;
            }
            if r == 2 {
                out[k1] = buf[0] + buf[1];
                out[m + k1] = buf[0] - buf[1];
                continue;
            }
            for (q, slot) in res.iter_mut().enumerate().take(r) {
                let mut acc = buf[0];
                for (s, b) in buf.iter().enumerate().take(r).skip(1) {
                    acc += b * self.roots[(s * q % r) * radix_stride];
                }
                *slot = acc;
            }
            for q in 0..r {
                out[q * m + k1] = res[q];
            }
        }
    }
}

#[derive(Debug, Clone)]
struct Bluestein {
    n: usize,
    chirp: Vec<Complex64>,
    kernel_spectrum: Vec<Complex64>,
    forward: MixedRadix,
    inverse: MixedRadix,
}

impl Bluestein {
    fn new(n: usize, sign: Sign) -> Self {
        let len = (2 * n - 1).next_power_of_two();
        let two_n = 2 * n as u64;
        // c_m = e(σ·m²/(2n)); m² is reduced mod 2n in integers
        let chirp: Vec<Complex64> = (0..n as u64)
            .map(|m| {
                let w = unit_root(((m as u128 * m as u128) % two_n as u128) as u64, two_n);
                match sign {
                    Sign::Positive => w,
                    Sign::Negative => w.conj(),
                }
            })
            .collect();
        let forward = MixedRadix::new(len, Sign::Negative);
        let inverse = MixedRadix::new(len, Sign::Positive);
        let mut kernel = vec![Complex64::new(0.0, 0.0); len];
        kernel[0] = chirp[0].conj();
        for m in 1..n {
            kernel[m] = chirp[m].conj();
            kernel[len - m] = chirp[m].conj();
        }
        forward.process(&mut kernel);
        Self { n, chirp, kernel_spectrum: kernel, forward, inverse }
    }

    fn process(&self, data: &mut [Complex64]) {
        let len = self.kernel_spectrum.len();
        let mut work = vec![Complex64::new(0.0, 0.0); len];
        for t in 0..self.n {
            work[t] = data[t] * self.chirp[t];
        }
        self.forward.process(&mut work);
        for (w, k) in work.iter_mut().zip(&self.kernel_spectrum) {
            *w *= k;
        }
        self.inverse.process(&mut work);
        let scale = 1.0 / len as f64;
        for k in 0..self.n {
            data[k] = work[k] * self.chirp[k] * scale;
        }
    }
}

#[derive(Debug, Clone)]
enum Algorithm {
    Trivial,
    MixedRadix(MixedRadix),
    Bluestein(Box<Bluestein>),
}

/// Reusable transform plan for one length and orientation.
#[derive(Debug, Clone)]
pub struct FftPlan {
    n: usize,
    sign: Sign,
    algorithm: Algorithm,
}

impl FftPlan {
    pub fn new(n: usize, sign: Sign) -> Self {
        let algorithm = if n <= 1 {
            Algorithm::Trivial
        } else if prime_factorisation(n).iter().all(|&q| q <= MAX_RADIX) {
            Algorithm::MixedRadix(MixedRadix::new(n, sign))
        } else {
            Algorithm::Bluestein(Box::new(Bluestein::new(n, sign)))
        };
        Self { n, sign, algorithm }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn uses_bluestein(&self) -> bool {
        matches!(self.algorithm, Algorithm::Bluestein(_))
    }

    /// In-place transform.
    ///
    /// # Panics
    /// If `data.len()` differs from the planned length.
    pub fn process(&self, data: &mut [Complex64]) {
        assert_eq!(data.len(), self.n, "plan length mismatch");
        match &self.algorithm {
            Algorithm::Trivial => {}
            Algorithm::MixedRadix(m) => m.process(data),
            Algorithm::Bluestein(b) => b.process(data),
        }
    }

    /// The plan for the opposite orientation.
    pub fn reversed(&self) -> Self {
        Self::new(self.n, self.sign.flip())
    }
}

/// One-shot transform.
pub fn transform(data: &mut [Complex64], sign: Sign) {
    FftPlan::new(data.len(), sign).process(data);
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn naive(x: &[Complex64], sign: Sign) -> Vec<Complex64> {
        let n = x.len();
        (0..n)
            .map(|k| {
                x.iter()
                    .enumerate()
                    .map(|(t, &v)| {
                        let w = unit_root((k * t % n) as u64, n as u64);
                        v * if sign == Sign::Positive { w } else { w.conj() }
                    })
                    .sum()
            })
            .collect()
    }

    fn random_vec(n: usize, seed: u64) -> Vec<Complex64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect()
    }

    #[test]
    fn all_small_lengths_both_signs() {
        for n in 1..=160 {
            for sign in [Sign::Positive, Sign::Negative] {
                let x = random_vec(n, n as u64);
                let mut y = x.clone();
                transform(&mut y, sign);
                let z = naive(&x, sign);
                let err = y.iter().zip(&z).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
                assert!(err < 1e-11 * (n as f64).sqrt() * 2.0, "n={n} err={err}");
            }
        }
    }

    #[test]
    fn picks_bluestein_for_rough_lengths() {
        assert!(!FftPlan::new(1024, Sign::Positive).uses_bluestein());
        assert!(!FftPlan::new(2 * 3 * 5 * 7 * 31, Sign::Positive).uses_bluestein());
        assert!(FftPlan::new(2 * 37, Sign::Positive).uses_bluestein());
        assert!(FftPlan::new(10006, Sign::Positive).uses_bluestein()); // 2·5003
    }

    #[test]
    fn inverse_round_trip_large_prime_length() {
        let n = 10_007;
        let x = random_vec(n, 7);
        let plan = FftPlan::new(n, Sign::Positive);
        let inv = plan.reversed();
        let mut y = x.clone();
        plan.process(&mut y);
        inv.process(&mut y);
        let err = y.iter().zip(&x).map(|(a, b)| (a / n as f64 - b).norm()).fold(0.0, f64::max);
        assert!(err < 1e-12, "{err}");
    }
}
