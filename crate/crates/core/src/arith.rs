//! Arithmetic modulo an odd prime: primality, primitive roots, index
//! (discrete logarithm) tables and the Legendre symbol.
//!
//! Everything downstream works in the "index picture": a residue `a = g^t`
//! is identified with its exponent `t ∈ [0, p-2]`, and the character
//! `χ_j` sends `g^t` to `e(jt/(p-1))`.

use num_complex::Complex64;
use std::f64::consts::TAU;

use crate::error::{Error, Result};

/// Largest modulus for which index tables are built (entries are stored as `u32`).
pub const MAX_TABLE_PRIME: u64 = u32::MAX as u64;

pub fn mod_mul(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mod_mul(acc, base, m);
        }
        base = mod_mul(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin; the first twelve primes are a complete
/// witness set for every `n < 2^64`.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n % w == 0 {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mod_mul(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Distinct prime divisors of `n` in increasing order, by trial division.
pub fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2u64;
    while q * q <= n {
        if n % q == 0 {
            out.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
        q += if q == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Inverse of `a` modulo the prime `p` via the extended Euclidean algorithm.
pub fn mod_inv(a: u64, p: u64) -> Result<u64> {
    let a = a % p;
    if a == 0 {
        return Err(Error::ZeroResidue(a as i64, p));
    }
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return Err(Error::InvalidParameter(format!("{a} is not invertible modulo {p}")));
    }
    Ok(s0.rem_euclid(p as i128) as u64)
}

/// `e(num/den) = exp(2πi·num/den)`, with the fraction reduced exactly before
/// the angle is formed so large numerators lose no precision.
pub fn unit_root(num: u64, den: u64) -> Complex64 {
    let r = num % den;
    // map into (-den/2, den/2] so the angle stays in (-π, π]
    let centred = if 2 * r > den { r as f64 - den as f64 } else { r as f64 };
    let (s, c) = (TAU * centred / den as f64).sin_cos();
    Complex64::new(c, s)
}

/// Smallest primitive root of the odd prime `p`.
pub fn primitive_root(p: u64) -> Result<u64> {
    if p < 3 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let n = p - 1;
    let factors = distinct_prime_factors(n);
    (2..p)
        .find(|&g| factors.iter().all(|&q| mod_pow(g, n / q, p) != 1))
        .ok_or_else(|| Error::InvalidParameter(format!("no primitive root found for {p}")))
}

/// Immutable per-prime workspace shared by every sum family.
#[derive(Debug, Clone)]
pub struct PrimeContext {
    p: u64,
    g: u64,
    /// `ind[a]` for `a ∈ [1, p-1]`; slot 0 holds a sentinel.
    ind: Vec<u32>,
    /// `pow[t] = g^t mod p` for `t ∈ [0, p-2]`.
    pow: Vec<u32>,
    legendre: Vec<i8>,
}

impl PrimeContext {
    /// Builds the context for an odd prime `p < 2^32`.
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 || p % 2 == 0 || !is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        if p > MAX_TABLE_PRIME {
            return Err(Error::InvalidParameter(format!(
                "prime {p} exceeds table limit {MAX_TABLE_PRIME}"
            )));
        }
        let g = primitive_root(p)?;
        let n = (p - 1) as usize;
        let mut pow = Vec::with_capacity(n);
        let mut ind = vec![u32::MAX; p as usize];
        let mut x = 1u64;
        for t in 0..n {
            pow.push(x as u32);
            ind[x as usize] = t as u32;
            x = x * g % p;
        }
        debug_assert_eq!(x, 1);
        let mut legendre = vec![0i8; p as usize];
        for a in 1..p as usize {
            legendre[a] = if ind[a] % 2 == 0 { 1 } else { -1 };
        }
        Ok(Self { p, g, ind, pow, legendre })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// The primitive root used for every index.
    pub fn generator(&self) -> u64 {
        self.g
    }

    /// Order of the multiplicative group, `p - 1`.
    pub fn order(&self) -> u64 {
        self.p - 1
    }

    /// `(p - 1) / 2`; `χ_j ⊗ φ = χ_{j + half}`.
    pub fn half(&self) -> u64 {
        (self.p - 1) / 2
    }

    /// Reduces any integer into `[0, p-1]`.
    pub fn residue(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    /// Index of a nonzero residue (the argument is reduced mod `p` first).
    pub fn ind(&self, a: u64) -> Option<u64> {
        let a = a % self.p;
        (a != 0).then(|| self.ind[a as usize] as u64)
    }

    pub fn pow(&self, t: u64) -> u64 {
        self.pow[(t % (self.p - 1)) as usize] as u64
    }

    pub fn legendre(&self, a: i64) -> i8 {
        self.legendre[self.residue(a) as usize]
    }

    /// Inverse through the index tables.
    pub fn inv(&self, a: u64) -> Option<u64> {
        self.ind(a).map(|t| self.pow((self.order() - t) % self.order()))
    }

    /// `ε_p`: `1` for `p ≡ 1 (mod 4)`, `i` for `p ≡ 3 (mod 4)`.
    pub fn eps(&self) -> Complex64 {
        if self.p % 4 == 1 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 1.0)
        }
    }

    /// `χ_j(a)` with the convention `χ_j(0) = 0` for every `j`, including `j = 0`.
    pub fn chi(&self, j: u64, a: i64) -> Complex64 {
        match self.ind(self.residue(a)) {
            None => Complex64::new(0.0, 0.0),
            Some(t) => unit_root(mod_mul(j % self.order(), t, self.order()), self.order()),
        }
    }

    /// `χ_j(-1) = (-1)^j`.
    pub fn is_even_character(&self, j: u64) -> bool {
        j % 2 == 0
    }

    /// Additive character `e(a/p)`.
    pub fn additive(&self, a: i64) -> Complex64 {
        unit_root(self.residue(a), self.p)
    }

    /// Index of the character `χ_j · φ`.
    pub fn twist_by_legendre(&self, j: u64) -> u64 {
        (j + self.half()) % self.order()
    }

    /// Index of the conjugate character `χ̄_j`.
    pub fn conj_index(&self, j: u64) -> u64 {
        (self.order() - j % self.order()) % self.order()
    }

    /// Index table `ind[a]`, `a ∈ [1, p-1]` (slot 0 is a sentinel).
    pub fn index_table(&self) -> &[u32] {
        &self.ind
    }

    pub fn power_table(&self) -> &[u32] {
        &self.pow
    }

    pub fn legendre_table(&self) -> &[i8] {
        &self.legendre
    }
}

/// Convenience wrapper around [`PrimeContext::new`].
pub fn build_context(p: u64) -> Result<PrimeContext> {
    PrimeContext::new(p)
}

/// Odd primes in `[lo, hi]`, ascending.
pub fn primes_in_range(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(3)..=hi).filter(|&n| n % 2 == 1 && is_prime(n)).collect()
}
