use std::collections::HashMap;

use super::stats::{binomial_se, SE_MULTIPLIER};
use crate::error::{Error, Result};
use crate::model::{FairnessConstraints, Ranking};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub checkpoint: usize,
    pub mean: f64,
    pub std: f64,
}

/// Mean and population std of `(count of group in top i) / i` per checkpoint.
pub fn representation_curve(
    samples: &[Ranking],
    group: usize,
    checkpoints: &[usize],
) -> Vec<CurvePoint> {
    assert!(!samples.is_empty(), "need at least one sample");
    checkpoints
        .iter()
        .map(|&i| {
            let shares: Vec<f64> = samples
                .iter()
                .map(|r| r.count_in_window(group, 1, i) as f64 / i as f64)
                .collect();
            let (mean, std) = mean_std(&shares);
            CurvePoint {
                checkpoint: i,
                mean,
                std,
            }
        })
        .collect()
}

pub(crate) fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    (mean, var.sqrt())
}

/// Empirical `Pr[Y_rank = group]`, rank 1-based.
pub fn fraction_of_rankings(samples: &[Ranking], rank: usize, group: usize) -> f64 {
    assert!(!samples.is_empty(), "need at least one sample");
    let hits = samples
        .iter()
        .filter(|r| r.entries[rank - 1].group == group)
        .count();
    hits as f64 / samples.len() as f64
}

/// An empirical statistic compared against an interval, widened by
/// `SE_MULTIPLIER` standard errors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundCheck {
    pub estimate: f64,
    pub lower: f64,
    pub upper: f64,
    pub se: f64,
    pub pass: bool,
}

impl BoundCheck {
    pub fn new(estimate: f64, lower: f64, upper: f64, se: f64) -> Self {
        let slack = SE_MULTIPLIER * se;
        let pass = estimate >= lower - slack - 1e-12 && estimate <= upper + slack + 1e-12;
        Self {
            estimate,
            lower,
            upper,
            se,
            pass,
        }
    }
}

/// Per-rank check: `L_j/k ≤ Pr[Y_i = j] ≤ U_j/k` up to binomial error.
pub fn rank_bound_check(
    samples: &[Ranking],
    rank: usize,
    group: usize,
    constraints: &FairnessConstraints,
) -> BoundCheck {
    let p = fraction_of_rankings(samples, rank, group);
    let k = constraints.k() as f64;
    BoundCheck::new(
        p,
        constraints.lower()[group] as f64 / k,
        constraints.upper()[group] as f64 / k,
        binomial_se(p, samples.len()),
    )
}

/// Window check on `Z = #ranks in first..=last held by group`:
/// `E[Z]` lies in `[(last-first+1) L_j/k, (last-first+1) U_j/k]`.
pub fn interval_bound_check(
    samples: &[Ranking],
    group: usize,
    first: usize,
    last: usize,
    constraints: &FairnessConstraints,
) -> BoundCheck {
    let z: Vec<f64> = samples
        .iter()
        .map(|r| r.count_in_window(group, first, last) as f64)
        .collect();
    let (mean, std) = mean_std(&z);
    let width = (last - first + 1) as f64;
    let k = constraints.k() as f64;
    BoundCheck::new(
        mean,
        width * constraints.lower()[group] as f64 / k,
        width * constraints.upper()[group] as f64 / k,
        std / (z.len() as f64).sqrt(),
    )
}

/// Rescales scores to `[0, 1]`; constant scores all map to 1.
pub fn min_max_normalize(scores: &HashMap<String, f64>) -> HashMap<String, f64> {
    let lo = scores.values().copied().fold(f64::INFINITY, f64::min);
    let hi = scores.values().copied().fold(f64::NEG_INFINITY, f64::max);
    scores
        .iter()
        .map(|(id, &s)| (id.clone(), if hi > lo { (s - lo) / (hi - lo) } else { 1.0 }))
        .collect()
}

fn dcg(scores: impl Iterator<Item = f64>) -> f64 {
    scores
        .enumerate()
        .map(|(pos, s)| (s.exp2() - 1.0) / ((pos + 2) as f64).log2())
        .sum()
}

/// nDCG of the top `i` ranks against the best possible ordering of every
/// scored item. Returns 1 when the ideal gain is zero.
pub fn ndcg_at(ranking: &Ranking, scores: &HashMap<String, f64>, i: usize) -> Result<f64> {
    let i = i.min(ranking.len());
    let gains = ranking
        .items()
        .take(i)
        .map(|id| {
            scores
                .get(id)
                .copied()
                .ok_or_else(|| Error::MissingScore(id.to_owned()))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut ideal: Vec<f64> = scores.values().copied().collect();
    ideal.sort_by(|a, b| b.total_cmp(a));
    let denom = dcg(ideal.into_iter().take(i));
    if denom == 0.0 {
        return Ok(1.0);
    }
    Ok(dcg(gains.into_iter()) / denom)
}
