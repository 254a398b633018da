//! Fixed-order pairwise summation.
//!
//! The split points depend only on the slice length, so a given input always
//! produces the same bits regardless of how the caller schedules work.

use num_complex::Complex64;
use std::ops::Add;

const BLOCK: usize = 16;

pub fn pairwise_sum<T>(xs: &[T]) -> T
where
    T: Copy + Add<Output = T> + Default,
{
    if xs.len() <= BLOCK {
        return xs.iter().fold(T::default(), |acc, &x| acc + x);
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

/// Pairwise sum of `f(i)` for `i ∈ [0, n)` without materialising the terms.
pub fn pairwise_sum_by<T, F>(n: usize, f: &F) -> T
where
    T: Copy + Add<Output = T> + Default,
    F: Fn(usize) -> T,
{
    fn go<T, F>(lo: usize, hi: usize, f: &F) -> T
    where
        T: Copy + Add<Output = T> + Default,
        F: Fn(usize) -> T,
    {
        if hi - lo <= BLOCK {
            return (lo..hi).fold(T::default(), |acc, i| acc + f(i));
        }
        let mid = lo + (hi - lo) / 2;
        go(lo, mid, f) + go(mid, hi, f)
    }
    go(0, n, f)
}

pub fn complex_sum(xs: &[Complex64]) -> Complex64 {
    pairwise_sum(xs)
}
