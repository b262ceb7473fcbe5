use std::collections::BTreeMap;

use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{Error, Result};
use crate::model::{representation_of, GroupAssignment};

/// Significance level of the uniformity test.
pub const SIGNIFICANCE: f64 = 0.01;

/// Number of standard errors allowed around an interval bound.
pub const SE_MULTIPLIER: f64 = 3.0;

/// Total-variation distance between two distributions on the same cells.
pub fn tv_distance(p: &[f64], q: &[f64]) -> f64 {
    assert_eq!(p.len(), q.len(), "distributions must share cells");
    0.5 * p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum::<f64>()
}

/// `½ Σ |p̂(x) - 1/N|` for a histogram over `N` enumerated cells.
pub fn tv_distance_to_uniform(counts: &[u64]) -> f64 {
    let n: u64 = counts.iter().sum();
    let cells = counts.len() as f64;
    if n == 0 {
        return if counts.is_empty() {
            0.0
        } else {
            1.0 - 1.0 / cells
        };
    }
    0.5 * counts
        .iter()
        .map(|&c| (c as f64 / n as f64 - 1.0 / cells).abs())
        .sum::<f64>()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiSquareOutcome {
    pub statistic: f64,
    pub degrees_of_freedom: usize,
    /// Upper `1 - SIGNIFICANCE` quantile of the reference distribution.
    pub critical_value: f64,
    pub pass: bool,
}

/// Pearson goodness-of-fit against the uniform distribution on the cells.
pub fn chi_square_uniformity(counts: &[u64]) -> Result<ChiSquareOutcome> {
    let n: u64 = counts.iter().sum();
    let cells = counts.len();
    if cells == 0 {
        return Err(Error::InvalidArgument("histogram has no cells".into()));
    }
    let expected = n as f64 / cells as f64;
    if expected < 5.0 {
        return Err(Error::TooFewSamples { expected });
    }
    let statistic: f64 = counts
        .iter()
        .map(|&c| {
            let d = c as f64 - expected;
            d * d / expected
        })
        .sum();
    let df = cells - 1;
    let critical_value = if df == 0 {
        0.0
    } else {
        ChiSquared::new(df as f64)
            .expect("positive degrees of freedom")
            .inverse_cdf(1.0 - SIGNIFICANCE)
    };
    Ok(ChiSquareOutcome {
        statistic,
        degrees_of_freedom: df,
        critical_value,
        pass: statistic <= critical_value,
    })
}

pub fn binomial_se(p: f64, n: usize) -> f64 {
    (p * (1.0 - p) / n as f64).sqrt()
}

/// Mergeable summary of many sampled group assignments.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleStatistics {
    k: usize,
    ell: usize,
    count: u64,
    /// `rank_counts[i * ell + j]`: samples with rank `i + 1` held by group `j`.
    rank_counts: Vec<u64>,
    /// Sum over samples of the count of group `j` in the top `i + 1`.
    prefix_sum: Vec<u64>,
    prefix_sq: Vec<u64>,
    histogram: BTreeMap<Vec<usize>, u64>,
}

impl SampleStatistics {
    pub fn new(k: usize, ell: usize) -> Self {
        Self {
            k,
            ell,
            count: 0,
            rank_counts: vec![0; k * ell],
            prefix_sum: vec![0; k * ell],
            prefix_sq: vec![0; k * ell],
            histogram: BTreeMap::new(),
        }
    }

    pub fn record(&mut self, y: &GroupAssignment) {
        assert_eq!(y.len(), self.k, "assignment length must equal k");
        let mut running = vec![0u64; self.ell];
        for (i, &g) in y.groups().iter().enumerate() {
            self.rank_counts[i * self.ell + g] += 1;
            running[g] += 1;
            for (j, &c) in running.iter().enumerate() {
                self.prefix_sum[i * self.ell + j] += c;
                self.prefix_sq[i * self.ell + j] += c * c;
            }
        }
        *self
            .histogram
            .entry(representation_of(y, self.ell).0)
            .or_insert(0) += 1;
        self.count += 1;
    }

    /// Associative, commutative combination of two partial summaries.
    pub fn merge(&mut self, other: &SampleStatistics) {
        assert_eq!((self.k, self.ell), (other.k, other.ell), "shape mismatch");
        self.count += other.count;
        for (a, b) in self.rank_counts.iter_mut().zip(&other.rank_counts) {
            *a += b;
        }
        for (a, b) in self.prefix_sum.iter_mut().zip(&other.prefix_sum) {
            *a += b;
        }
        for (a, b) in self.prefix_sq.iter_mut().zip(&other.prefix_sq) {
            *a += b;
        }
        for (x, c) in &other.histogram {
            *self.histogram.entry(x.clone()).or_insert(0) += c;
        }
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    /// Fraction of samples assigning rank `rank` (1-based) to `group`.
    pub fn rank_frequency(&self, rank: usize, group: usize) -> f64 {
        self.rank_counts[(rank - 1) * self.ell + group] as f64 / self.count as f64
    }

    /// `k × ℓ` matrix of per-rank group frequencies; rows sum to 1.
    pub fn frequency_matrix(&self) -> Vec<Vec<f64>> {
        (1..=self.k)
            .map(|i| (0..self.ell).map(|j| self.rank_frequency(i, j)).collect())
            .collect()
    }

    /// Mean and population standard deviation of the share of `group` in
    /// the top `prefix` ranks.
    pub fn prefix_share(&self, prefix: usize, group: usize) -> (f64, f64) {
        let idx = (prefix - 1) * self.ell + group;
        let n = self.count as f64;
        let mean = self.prefix_sum[idx] as f64 / n;
        let var = (self.prefix_sq[idx] as f64 / n - mean * mean).max(0.0);
        (mean / prefix as f64, var.sqrt() / prefix as f64)
    }

    pub fn representation_histogram(&self) -> &BTreeMap<Vec<usize>, u64> {
        &self.histogram
    }
}
