//! Empirical distributions of `K(χ)` over `𝔄(p)` against their limiting laws.

use std::f64::consts::PI;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::PrimeContext;
use crate::error::{Error, Result};
use crate::expsums::KFamily;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SampleKind {
    /// `|K(χ)| ∈ [0, 2]`
    Abs,
    /// `√(|K(χ)|/2) ∈ [0, 1]`
    SqrtHalfAbs,
    /// `(|K(χ)|/2)² ∈ [0, 1]`, the transform under which `|K|` is arcsine on `[0, 1]`.
    SquareHalfAbs,
    /// `χ̄(2)K(χ)τ(φ)/√p ∈ [-2, 2]`
    NormalizedReal,
    /// `K(χ)` as a point of the disk `|z| ≤ 2`.
    Planar,
    /// `arg K(χ) ∈ (-π, π]`
    Argument,
}

impl SampleKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SampleKind::Abs => "abs",
            SampleKind::SqrtHalfAbs => "sqrt-half-abs",
            SampleKind::SquareHalfAbs => "square-half-abs",
            SampleKind::NormalizedReal => "normalized-real",
            SampleKind::Planar => "planar",
            SampleKind::Argument => "argument",
        }
    }

    /// The law the sample is expected to approach.
    pub fn default_law(self) -> TargetLaw {
        match self {
            SampleKind::Abs => TargetLaw::ArcsineAbs,
            SampleKind::SqrtHalfAbs | SampleKind::SquareHalfAbs => TargetLaw::ArcsineSqrt,
            SampleKind::NormalizedReal => TargetLaw::SymmetricArcsine,
            SampleKind::Planar => TargetLaw::DiskMu,
            SampleKind::Argument => TargetLaw::UniformArgument,
        }
    }
}

impl FromStr for SampleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            SampleKind::Abs,
            SampleKind::SqrtHalfAbs,
            SampleKind::SquareHalfAbs,
            SampleKind::NormalizedReal,
            SampleKind::Planar,
            SampleKind::Argument,
        ]
        .into_iter()
        .find(|k| k.as_str() == s)
        .ok_or_else(|| Error::InvalidParameter(format!("unknown sample kind '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TargetLaw {
    /// `F(x) = (2/π)arcsin(x/2)` on `[0, 2]`.
    ArcsineAbs,
    /// `F(u) = (2/π)arcsin(√u)` on `[0, 1]`.
    ArcsineSqrt,
    /// `F(x) = (1/π)(arcsin(x/2) + π/2)` on `[-2, 2]`.
    SymmetricArcsine,
    /// `dμ = π⁻² dx dy / (|z|√(4-|z|²))` on the disk; as a 1-D law this is its radial marginal.
    DiskMu,
    /// `F(θ) = (θ + π)/2π` on `[-π, π]`.
    UniformArgument,
}

impl TargetLaw {
    pub const ALL: [TargetLaw; 5] = [
        TargetLaw::ArcsineAbs,
        TargetLaw::ArcsineSqrt,
        TargetLaw::SymmetricArcsine,
        TargetLaw::DiskMu,
        TargetLaw::UniformArgument,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TargetLaw::ArcsineAbs => "arcsine-abs",
            TargetLaw::ArcsineSqrt => "arcsine-sqrt",
            TargetLaw::SymmetricArcsine => "symmetric-arcsine",
            TargetLaw::DiskMu => "disk-mu",
            TargetLaw::UniformArgument => "uniform-argument",
        }
    }

    pub fn support(self) -> (f64, f64) {
        match self {
            TargetLaw::ArcsineAbs | TargetLaw::DiskMu => (0.0, 2.0),
            TargetLaw::ArcsineSqrt => (0.0, 1.0),
            TargetLaw::SymmetricArcsine => (-2.0, 2.0),
            TargetLaw::UniformArgument => (-PI, PI),
        }
    }

    /// The sample a law is compared with unless another is requested.
    pub fn default_sample(self) -> SampleKind {
        match self {
            TargetLaw::ArcsineAbs => SampleKind::Abs,
            TargetLaw::ArcsineSqrt => SampleKind::SqrtHalfAbs,
            TargetLaw::SymmetricArcsine => SampleKind::NormalizedReal,
            TargetLaw::DiskMu => SampleKind::Planar,
            TargetLaw::UniformArgument => SampleKind::Argument,
        }
    }

    /// Density on the open support, used for plot overlays.
    pub fn density(self, x: f64) -> f64 {
        let (lo, hi) = self.support();
        if x <= lo || x >= hi {
            return 0.0;
        }
        match self {
            TargetLaw::ArcsineAbs | TargetLaw::DiskMu => 2.0 / (PI * (4.0 - x * x).sqrt()),
            TargetLaw::ArcsineSqrt => 1.0 / (PI * (x * (1.0 - x)).sqrt()),
            TargetLaw::SymmetricArcsine => 1.0 / (PI * (4.0 - x * x).sqrt()),
            TargetLaw::UniformArgument => 1.0 / (2.0 * PI),
        }
    }
}

impl FromStr for TargetLaw {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TargetLaw::ALL
            .into_iter()
            .find(|l| l.as_str() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown law '{s}'")))
    }
}

/// CDF value, and whether `x` had to be clamped into the support.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CdfValue {
    pub value: f64,
    pub clamped: bool,
}

/// Slack allowed past the support before a point counts as clamped.
const SUPPORT_SLACK: f64 = 1e-9;

pub fn target_cdf(law: TargetLaw, x: f64) -> CdfValue {
    let (lo, hi) = law.support();
    let clamped = x < lo - SUPPORT_SLACK || x > hi + SUPPORT_SLACK;
    let x = x.clamp(lo, hi);
    let value = match law {
        TargetLaw::ArcsineAbs | TargetLaw::DiskMu => 2.0 / PI * (x / 2.0).asin(),
        TargetLaw::ArcsineSqrt => 2.0 / PI * x.sqrt().asin(),
        TargetLaw::SymmetricArcsine => ((x / 2.0).asin() + PI / 2.0) / PI,
        TargetLaw::UniformArgument => (x + PI) / (2.0 * PI),
    };
    CdfValue { value: value.clamp(0.0, 1.0), clamped }
}

/// One value per character of `𝔄(p)`, in increasing `j` for planar samples
/// and sorted ascending otherwise.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalSample {
    pub p: u64,
    pub kind: SampleKind,
    pub data: Vec<f64>,
    /// Only filled for `Planar`.
    pub points: Vec<(f64, f64)>,
    /// For `NormalizedReal`, the largest imaginary part discarded.
    pub imag_defect: f64,
}

impl EmpiricalSample {
    pub fn len(&self) -> usize {
        if self.kind == SampleKind::Planar {
            self.points.len()
        } else {
            self.data.len()
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub fn empirical_sample(ctx: &PrimeContext, family: &KFamily, kind: SampleKind) -> EmpiricalSample {
    let p = ctx.p();
    let vals: Vec<_> = family.even_nontrivial().map(|j| (j, family.get(j))).collect();
    let mut imag_defect = 0.0f64;
    let mut points = Vec::new();
    let mut data: Vec<f64> = match kind {
        SampleKind::Abs => vals.iter().map(|(_, z)| z.norm()).collect(),
        SampleKind::SqrtHalfAbs => vals.iter().map(|(_, z)| (z.norm() / 2.0).sqrt()).collect(),
        SampleKind::SquareHalfAbs => vals.iter().map(|(_, z)| (z.norm() / 2.0).powi(2)).collect(),
        SampleKind::Argument => vals.iter().map(|(_, z)| z.im.atan2(z.re)).collect(),
        SampleKind::NormalizedReal => {
            // τ(φ)/√p = ε_p
            let eps = ctx.eps();
            vals.iter()
                .map(|&(j, z)| {
                    let w = ctx.chi(j, 2).conj() * z * eps;
                    imag_defect = imag_defect.max(w.im.abs());
                    w.re
                })
                .collect()
        }
        SampleKind::Planar => {
            points = vals.iter().map(|(_, z)| (z.re, z.im)).collect();
            Vec::new()
        }
    };
    data.sort_by(f64::total_cmp);
    EmpiricalSample { p, kind, data, points, imag_defect }
}

/// Kolmogorov–Smirnov distance `max_i max(i/n - F(x_i), F(x_i) - (i-1)/n)`
/// of a sorted 1-D sample from `law`.
pub fn ks_statistic(sample: &EmpiricalSample, law: TargetLaw) -> Result<f64> {
    if sample.kind == SampleKind::Planar {
        return Err(Error::InvalidParameter("KS statistic needs a one-dimensional sample".into()));
    }
    ks_sorted(&sample.data, law)
}

pub fn ks_sorted(data: &[f64], law: TargetLaw) -> Result<f64> {
    if data.is_empty() {
        return Err(Error::InvalidParameter("empty sample".into()));
    }
    let n = data.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in data.iter().enumerate() {
        let f = target_cdf(law, x).value;
        d = d.max((i as f64 + 1.0) / n - f).max(f - i as f64 / n);
    }
    Ok(d)
}

/// Number of sample points outside the support of `law`.
pub fn clamped_count(sample: &EmpiricalSample, law: TargetLaw) -> usize {
    sample.data.iter().filter(|&&x| target_cdf(law, x).clamped).count()
}

/// `μ{arg z ∈ I, |z| ∈ J} = (|I|/π²)(arcsin(b/2) - arcsin(a/2))` for `J = [a, b]`.
pub fn sector_probability(angle: (f64, f64), radius: (f64, f64)) -> f64 {
    let width = (angle.1 - angle.0).max(0.0);
    let (a, b) = (radius.0.clamp(0.0, 2.0), radius.1.clamp(0.0, 2.0));
    width / (PI * PI) * ((b / 2.0).asin() - (a / 2.0).asin()).max(0.0)
}

/// Radial cell edges `r_i = 2 sin(πi/2R)`, so each ring carries mass `1/R`.
pub fn radial_edges(rings: usize) -> Vec<f64> {
    (0..=rings).map(|i| 2.0 * (PI * i as f64 / (2.0 * rings as f64)).sin()).collect()
}

/// Largest `|empirical fraction - μ(S)|` over the sectors `S = I × J`, with
/// `I` a run of consecutive cells among `angular` equal arcs of `[-π, π]` and
/// `J` a run of consecutive cells among `radial` equal-mass rings.
pub fn planar_discrepancy(sample: &EmpiricalSample, angular: usize, radial: usize) -> Result<f64> {
    if sample.kind != SampleKind::Planar {
        return Err(Error::InvalidParameter("planar discrepancy needs a planar sample".into()));
    }
    if angular < 2 || radial < 2 {
        return Err(Error::InvalidParameter(format!("grid sizes must be >= 2, got {angular}x{radial}")));
    }
    if sample.points.is_empty() {
        return Err(Error::InvalidParameter("empty sample".into()));
    }
    let edges = radial_edges(radial);
    let mut cells = vec![vec![0usize; radial]; angular];
    for &(x, y) in &sample.points {
        let theta = y.atan2(x);
        let a = (((theta + PI) / (2.0 * PI)) * angular as f64).floor() as usize;
        let r = x.hypot(y);
        let ring = edges[1..].iter().position(|&e| r < e).unwrap_or(radial - 1);
        cells[a.min(angular - 1)][ring] += 1;
    }
    // prefix[a][r] = points in cells [0, a) × [0, r)
    let mut prefix = vec![vec![0usize; radial + 1]; angular + 1];
    for a in 0..angular {
        for r in 0..radial {
            prefix[a + 1][r + 1] = cells[a][r] + prefix[a][r + 1] + prefix[a + 1][r] - prefix[a][r];
        }
    }
    let n = sample.points.len() as f64;
    let arc = 2.0 * PI / angular as f64;
    let mut worst = 0.0f64;
    for a0 in 0..angular {
        for a1 in a0 + 1..=angular {
            for r0 in 0..radial {
                for r1 in r0 + 1..=radial {
                    let count = prefix[a1][r1] + prefix[a0][r0] - prefix[a0][r1] - prefix[a1][r0];
                    let mass = sector_probability((a0 as f64 * arc - PI, a1 as f64 * arc - PI), (edges[r0], edges[r1]));
                    worst = worst.max((count as f64 / n - mass).abs());
                }
            }
        }
    }
    Ok(worst)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HistogramBin {
    pub bin_lo: f64,
    pub bin_hi: f64,
    pub empirical_mass: f64,
    pub target_mass: f64,
}

/// Equal-width histogram of a 1-D sample over the support of `law`.
pub fn histogram(sample: &EmpiricalSample, law: TargetLaw, bins: usize) -> Result<Vec<HistogramBin>> {
    if sample.kind == SampleKind::Planar {
        return Err(Error::InvalidParameter("histogram needs a one-dimensional sample".into()));
    }
    if bins == 0 || sample.data.is_empty() {
        return Err(Error::InvalidParameter("histogram needs at least one bin and one point".into()));
    }
    let (lo, hi) = law.support();
    let width = (hi - lo) / bins as f64;
    let mut counts = vec![0usize; bins];
    for &x in &sample.data {
        let b = ((x - lo) / width).floor();
        counts[(b.max(0.0) as usize).min(bins - 1)] += 1;
    }
    let n = sample.data.len() as f64;
    Ok((0..bins)
        .map(|b| {
            let bin_lo = lo + b as f64 * width;
            let bin_hi = if b + 1 == bins { hi } else { bin_lo + width };
            HistogramBin {
                bin_lo,
                bin_hi,
                empirical_mass: counts[b] as f64 / n,
                target_mass: target_cdf(law, bin_hi).value - target_cdf(law, bin_lo).value,
            }
        })
        .collect())
}
