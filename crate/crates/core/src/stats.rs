//! Reductions and goodness-of-fit helpers shared by the Monte Carlo code.

use rayon::prelude::*;
use serde::Serialize;

/// Sum with a fixed binary-tree topology, so the result depends only on the
/// order of `xs` and never on how the values were produced.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 8 {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MeanSe {
    pub mean: f64,
    /// Standard error of the mean (sample standard deviation / sqrt(n)).
    pub se: f64,
    pub sd: f64,
    pub n: usize,
}

pub fn mean_se(xs: &[f64]) -> MeanSe {
    let n = xs.len();
    if n == 0 {
        return MeanSe {
            mean: f64::NAN,
            se: f64::NAN,
            sd: f64::NAN,
            n,
        };
    }
    let mean = pairwise_sum(xs) / n as f64;
    if n < 2 {
        return MeanSe {
            mean,
            se: 0.0,
            sd: 0.0,
            n,
        };
    }
    let dev: Vec<f64> = xs.iter().map(|x| (x - mean) * (x - mean)).collect();
    let sd = (pairwise_sum(&dev) / (n - 1) as f64).sqrt();
    MeanSe {
        mean,
        se: sd / (n as f64).sqrt(),
        sd,
        n,
    }
}

/// Evaluates `f(0..count)` in parallel and returns results in index order.
pub fn par_indexed<T: Send>(count: usize, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    (0..count).into_par_iter().map(f).collect()
}

/// One-sample Kolmogorov-Smirnov distance given ascending samples and the
/// model CDF evaluated at each of them.
pub fn ks_distance(sorted: &[f64], cdf_at: &[f64]) -> f64 {
    assert_eq!(sorted.len(), cdf_at.len());
    let n = sorted.len() as f64;
    let mut d = 0.0f64;
    let mut i = 0;
    while i < sorted.len() {
        // ties share one step of the empirical CDF
        let mut j = i;
        while j + 1 < sorted.len() && sorted[j + 1] == sorted[i] {
            j += 1;
        }
        let below = i as f64 / n;
        let above = (j + 1) as f64 / n;
        d = d.max((cdf_at[i] - below).abs()).max((above - cdf_at[j]).abs());
        i = j + 1;
    }
    d
}

/// KS distance of a sample against a closed-form CDF.
pub fn ks_against(samples: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let values: Vec<f64> = sorted.iter().map(|&x| cdf(x)).collect();
    ks_distance(&sorted, &values)
}
