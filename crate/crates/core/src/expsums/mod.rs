//! Character sum families modulo `p`: the symmetric sum `K(χ)`, Gauss and
//! Jacobi sums, hyper-Kloosterman sums and the quadratic-phase Gauss sums
//! `τ₂(n, χ)`. Every family has a spectral path (one DFT for all `χ`) and a
//! direct summation used as its oracle.

mod identities;
mod kloosterman;

pub use identities::{identity_suite, lemma31_diagnostic, IDENTITY_SUITE_MAX_PRIME, tau2_direct, tau2_identity, tau2_table, IdentitySuiteConfig};
pub use kloosterman::{hyper_kloosterman, hyper_kloosterman_recursive, HyperKlTable};

use num_complex::Complex64;

use crate::arith::PrimeContext;
use crate::error::Result;
use crate::reduce::pairwise_sum_by;
use crate::spectral::{dft, DftMode, GroupFunction, Spectrum};

/// `K(χ_j)` for every `j`, together with the count table it is built from.
#[derive(Debug, Clone)]
pub struct KFamily {
    pub p: u64,
    /// `K(χ_j) = p^{-1/2} Σ_a χ_j(a + ā)`, `j ∈ [0, p-2]`.
    pub kvals: Spectrum,
    /// `c(b) = #{a : a + ā ≡ b} = 1 + φ(b² - 4)`, `b ∈ [0, p-1]`.
    pub counts: Vec<u8>,
    pub eps: Complex64,
    /// Largest distance between the count-table spectrum and the
    /// Gauss-sum product form over the even nontrivial characters.
    pub route_discrepancy: f64,
}

impl KFamily {
    pub fn get(&self, j: u64) -> Complex64 {
        self.kvals.get(j)
    }

    /// Even nontrivial indices `j = 2, 4, …, p-3`; these are the characters of `𝔄(p)`.
    pub fn even_nontrivial(&self) -> impl Iterator<Item = u64> {
        (1..(self.p - 1) / 2).map(|i| 2 * i)
    }

    /// `|𝔄(p)| = (p-3)/2`.
    pub fn family_size(&self) -> usize {
        ((self.p - 3) / 2) as usize
    }
}

/// `c(b) = 1 + φ(b² - 4)` for `b ∈ [0, p-1]`.
pub fn count_table(ctx: &PrimeContext) -> Vec<u8> {
    let p = ctx.p() as i64;
    (0..p).map(|b| (1 + ctx.legendre(b * b - 4)) as u8).collect()
}

/// `c(b)` by enumerating `a ∈ [1, p-1]`.
pub fn count_table_by_enumeration(ctx: &PrimeContext) -> Vec<u8> {
    let p = ctx.p();
    let mut c = vec![0u8; p as usize];
    for a in 1..p {
        let b = (a + ctx.inv(a).expect("nonzero")) % p;
        c[b as usize] += 1;
    }
    c
}

/// `K(χ_j)` by direct summation over `a`.
pub fn k_direct(ctx: &PrimeContext, j: u64) -> Complex64 {
    let p = ctx.p();
    let s = pairwise_sum_by((p - 1) as usize, &|i| {
        let a = i as u64 + 1;
        ctx.chi(j, ((a + ctx.inv(a).expect("nonzero")) % p) as i64)
    });
    s / (p as f64).sqrt()
}

/// Builds the full `K` spectrum and reconciles it against the Gauss-sum
/// product form `K(χ) = 2χ(2)·conj τ(φ)·p^{-3/2}·Re(τ(χ₁)·conj τ(χ₁φ))` with `χ = χ₁²`.
pub fn k_family(ctx: &PrimeContext, mode: DftMode) -> Result<KFamily> {
    let counts = count_table(ctx);
    let f = GroupFunction::from_real_residues(ctx, |b| counts[b as usize] as f64);
    let kvals = dft(&f, mode)?.scaled(1.0 / (ctx.p() as f64).sqrt());
    let gauss = gauss_table(ctx, mode)?;
    let route_discrepancy = (1..ctx.half())
        .map(|j1| (k_from_gauss(ctx, &gauss, j1) - kvals.get(2 * j1)).norm())
        .fold(0.0, f64::max);
    Ok(KFamily { p: ctx.p(), kvals, counts, eps: ctx.eps(), route_discrepancy })
}

/// `K(χ_{2j₁})` from the Gauss sums of `χ_{j₁}` and `χ_{j₁}φ`.
pub fn k_from_gauss(ctx: &PrimeContext, gauss: &GaussTable, j1: u64) -> Complex64 {
    let p = ctx.p() as f64;
    let t1 = gauss.get(j1);
    let t2 = gauss.get(ctx.twist_by_legendre(j1));
    let re = (t1 * t2.conj()).re;
    let tau_phi = gauss.get(ctx.half());
    ctx.chi(2 * j1, 2) * tau_phi.conj() * (2.0 * re / (p * p.sqrt()))
}

/// `χ(2)·p^{-1/2}·Σ_b χ(b)φ(b² - 1)` for every `χ`; equals `K(χ)` on even nontrivial `χ`.
pub fn k_via_legendre_shift(ctx: &PrimeContext, mode: DftMode) -> Result<Spectrum> {
    let f = GroupFunction::from_real_residues(ctx, |b| {
        let b = b as i64;
        ctx.legendre(b * b - 1) as f64
    });
    let mut s = dft(&f, mode)?.scaled(1.0 / (ctx.p() as f64).sqrt());
    for (j, v) in s.values.iter_mut().enumerate() {
        *v *= ctx.chi(j as u64, 2);
    }
    Ok(s)
}

/// Gauss sums `τ(χ_j) = Σ_v χ_j(v)e(v/p)` for every `j`.
#[derive(Debug, Clone)]
pub struct GaussTable {
    pub p: u64,
    pub tau: Spectrum,
}

impl GaussTable {
    pub fn get(&self, j: u64) -> Complex64 {
        self.tau.get(j)
    }

    /// `max_{j≠0} ||τ(χ_j)| - √p|`.
    pub fn modulus_defect(&self) -> f64 {
        let sp = (self.p as f64).sqrt();
        (1..self.p - 1).map(|j| (self.get(j).norm() - sp).abs()).fold(0.0, f64::max)
    }
}

pub fn gauss_table(ctx: &PrimeContext, mode: DftMode) -> Result<GaussTable> {
    let f = GroupFunction::from_residues(ctx, |a| ctx.additive(a as i64));
    Ok(GaussTable { p: ctx.p(), tau: dft(&f, mode)? })
}

/// `τ(χ_j)` by direct summation.
pub fn gauss_direct(ctx: &PrimeContext, j: u64) -> Complex64 {
    pairwise_sum_by((ctx.p() - 1) as usize, &|i| {
        let v = i as i64 + 1;
        ctx.chi(j, v) * ctx.additive(v)
    })
}

/// `Σ_v φ(v)e(nv/p)` in closed form, `ε_p·φ(n)·√p`.
pub fn quadratic_gauss(ctx: &PrimeContext, n: i64) -> Complex64 {
    ctx.eps() * (ctx.legendre(n) as f64 * (ctx.p() as f64).sqrt())
}

pub fn quadratic_gauss_direct(ctx: &PrimeContext, n: i64) -> Complex64 {
    pairwise_sum_by((ctx.p() - 1) as usize, &|i| {
        let v = i as i64 + 1;
        ctx.additive(n.rem_euclid(ctx.p() as i64) * v % ctx.p() as i64) * ctx.legendre(v) as f64
    })
}

/// Jacobi sum `J(χ_{j1}, χ_{j2}) = Σ_v χ_{j1}(v)χ_{j2}(1 - v)` by direct summation.
pub fn jacobi(ctx: &PrimeContext, j1: u64, j2: u64) -> Complex64 {
    pairwise_sum_by(ctx.p() as usize, &|v| ctx.chi(j1, v as i64) * ctx.chi(j2, 1 - v as i64))
}

/// `τ(χ₁)τ(χ₂)/τ(χ₁χ₂)`, defined when all three characters are nontrivial.
pub fn jacobi_via_gauss(gauss: &GaussTable, j1: u64, j2: u64) -> Option<Complex64> {
    let n = gauss.p - 1;
    let (a, b, c) = (j1 % n, j2 % n, (j1 + j2) % n);
    if a == 0 || b == 0 || c == 0 {
        return None;
    }
    Some(gauss.get(a) * gauss.get(b) / gauss.get(c))
}

/// `J(χ_j, φ)` for every `j` as one spectrum of `v ↦ φ(1 - v)`.
pub fn jacobi_with_legendre(ctx: &PrimeContext, mode: DftMode) -> Result<Spectrum> {
    let f = GroupFunction::from_real_residues(ctx, |v| ctx.legendre(1 - v as i64) as f64);
    dft(&f, mode)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn k_examples_p5_p7() {
        let ctx = PrimeContext::new(5).unwrap();
        let fam = k_family(&ctx, DftMode::Naive).unwrap();
        assert!(close(fam.get(2), Complex64::new(-2.0 / 5f64.sqrt(), 0.0), 1e-12));

        let ctx = PrimeContext::new(7).unwrap();
        let fam = k_family(&ctx, DftMode::Fast).unwrap();
        assert!(fam.get(3).norm() < 1e-12);
        let want = Complex64::new(3.0, -(3f64.sqrt())) / 7f64.sqrt();
        assert!(close(fam.get(2), want, 1e-12), "{}", fam.get(2));
        assert!((fam.get(2).norm_sqr() - 12.0 / 7.0).abs() < 1e-12);
    }

    #[test]
    fn counts_match_enumeration() {
        for p in [5u64, 7, 11, 13, 101, 1009, 10007] {
            let ctx = PrimeContext::new(p).unwrap();
            let c = count_table(&ctx);
            assert_eq!(c, count_table_by_enumeration(&ctx), "p={p}");
            assert_eq!(c.iter().map(|&x| x as u64).sum::<u64>(), p - 1);
            assert!(c.iter().all(|&x| x <= 2));
        }
    }

    #[test]
    fn k_family_invariants() {
        for p in [5u64, 7, 11, 13, 101, 1009, 10007] {
            let ctx = PrimeContext::new(p).unwrap();
            let fam = k_family(&ctx, DftMode::Fast).unwrap();
            assert!(fam.route_discrepancy <= 1e-8, "p={p} {}", fam.route_discrepancy);
            for j in 1..p - 1 {
                let k = fam.get(j);
                if j % 2 == 1 {
                    assert!(k.norm() <= 1e-9, "p={p} j={j}");
                } else {
                    assert!(k.norm() <= 2.0 + 1e-9, "p={p} j={j}");
                }
                assert!((fam.get(p - 1 - j) - k.conj()).norm() <= 1e-9);
            }
        }
    }

    #[test]
    fn spectral_k_matches_direct() {
        let ctx = PrimeContext::new(101).unwrap();
        let fam = k_family(&ctx, DftMode::Fast).unwrap();
        for j in 0..100 {
            assert!(close(fam.get(j), k_direct(&ctx, j), 1e-11), "j={j}");
        }
    }

    #[test]
    fn legendre_shift_form() {
        for p in [5u64, 7, 11, 13, 101, 1009] {
            let ctx = PrimeContext::new(p).unwrap();
            let fam = k_family(&ctx, DftMode::Fast).unwrap();
            let alt = k_via_legendre_shift(&ctx, DftMode::Fast).unwrap();
            for j in fam.even_nontrivial() {
                assert!(close(fam.get(j), alt.get(j), 1e-8), "p={p} j={j}");
            }
        }
    }

    #[test]
    fn normalised_k_is_real_in_range() {
        for p in [13u64, 101, 1009] {
            let ctx = PrimeContext::new(p).unwrap();
            let fam = k_family(&ctx, DftMode::Fast).unwrap();
            let g = gauss_table(&ctx, DftMode::Fast).unwrap();
            let tp = g.get(ctx.half()) / (p as f64).sqrt();
            for j in fam.even_nontrivial() {
                let x = ctx.chi(j, 2).conj() * fam.get(j) * tp;
                assert!(x.im.abs() <= 1e-9 && x.re.abs() <= 2.0 + 1e-9, "p={p} j={j} {x}");
            }
        }
    }

    #[test]
    fn gauss_examples() {
        let ctx = PrimeContext::new(5).unwrap();
        let g = gauss_table(&ctx, DftMode::Fast).unwrap();
        assert!(close(g.get(2), Complex64::new(5f64.sqrt(), 0.0), 1e-12));
        assert!(close(g.get(0), Complex64::new(-1.0, 0.0), 1e-12));
        let ctx = PrimeContext::new(7).unwrap();
        let g = gauss_table(&ctx, DftMode::Fast).unwrap();
        assert!(close(g.get(3), Complex64::new(0.0, 7f64.sqrt()), 1e-12));
        for j in 0..6 {
            assert!(close(g.get(j), gauss_direct(&ctx, j), 1e-12));
        }
    }

    #[test]
    fn gauss_modulus() {
        for p in [5u64, 7, 11, 13, 101, 1009, 10007] {
            let ctx = PrimeContext::new(p).unwrap();
            let g = gauss_table(&ctx, DftMode::Fast).unwrap();
            assert!(g.modulus_defect() <= 1e-9 * (p as f64).sqrt(), "p={p}");
        }
    }

    #[test]
    fn quadratic_gauss_examples() {
        let ctx = PrimeContext::new(5).unwrap();
        assert!(close(quadratic_gauss(&ctx, 1), Complex64::new(5f64.sqrt(), 0.0), 1e-15));
        assert_eq!(quadratic_gauss(&ctx, 10), Complex64::new(0.0, 0.0));
        let ctx = PrimeContext::new(7).unwrap();
        assert!(close(quadratic_gauss(&ctx, 3), Complex64::new(0.0, -(7f64.sqrt())), 1e-15));
        for p in [5u64, 7, 11, 13, 101] {
            let ctx = PrimeContext::new(p).unwrap();
            for n in -3..(p as i64 + 3) {
                let tol = 1e-9 * (p as f64).sqrt();
                assert!(close(quadratic_gauss(&ctx, n), quadratic_gauss_direct(&ctx, n), tol), "p={p} n={n}");
            }
        }
    }

    #[test]
    fn jacobi_examples() {
        let ctx = PrimeContext::new(7).unwrap();
        assert_eq!(jacobi(&ctx, 0, 0), Complex64::new(5.0, 0.0));
        assert!((jacobi(&ctx, 2, 3).norm() - 7f64.sqrt()).abs() < 1e-12);
        let ctx = PrimeContext::new(5).unwrap();
        let g = gauss_table(&ctx, DftMode::Naive).unwrap();
        assert!(close(jacobi(&ctx, 1, 2), jacobi_via_gauss(&g, 1, 2).unwrap(), 1e-8));
        assert!(jacobi_via_gauss(&g, 1, 3).is_none());
    }

    #[test]
    fn jacobi_identity_and_spectrum() {
        for p in [11u64, 13, 101] {
            let ctx = PrimeContext::new(p).unwrap();
            let g = gauss_table(&ctx, DftMode::Fast).unwrap();
            let jl = jacobi_with_legendre(&ctx, DftMode::Fast).unwrap();
            let tol = 1e-8 * (p as f64).sqrt();
            for j1 in 0..p - 1 {
                assert!(close(jl.get(j1), jacobi(&ctx, j1, ctx.half()), tol));
                for j2 in [1, 2, ctx.half(), p - 3] {
                    if let Some(v) = jacobi_via_gauss(&g, j1, j2) {
                        assert!(close(jacobi(&ctx, j1, j2), v, tol), "p={p} {j1} {j2}");
                    }
                }
            }
        }
    }
}
