use std::collections::HashMap;
use std::fmt;

use rand::Rng;

use super::experiment::stream_rng;
use crate::assembly::{sample_assignment, Backend, RepresentationSampler};
use crate::dp::count_fair_representations;
use crate::error::Result;
use crate::eval::{
    binomial_se, brute_force_enumerate, chi_square_uniformity, tv_distance_to_uniform, BoundCheck,
    ChiSquareOutcome, SampleStatistics,
};
use crate::model::{FairnessConstraints, GroupAssignment};
use crate::walk::WalkConfig;

/// TV budget for the exact sampler.
pub const DP_TV_LIMIT: f64 = 0.02;

#[derive(Debug, Clone)]
pub struct VerifyParams {
    pub constraints: FairnessConstraints,
    pub backend: Backend,
    pub samples: usize,
    pub seed: u64,
    pub tv_delta: f64,
    /// Random `(i, i')` windows checked for the interval property.
    pub windows: usize,
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub backend: Backend,
    pub oracle_count: usize,
    pub dp_count: String,
    pub tv: f64,
    pub tv_limit: f64,
    /// `None` when the sample is too small for the test.
    pub chi_square: Option<ChiSquareOutcome>,
    pub acceptance: Option<(f64, f64)>,
    pub rank_checks: usize,
    pub rank_failures: Vec<(usize, usize, BoundCheck)>,
    pub window_checks: usize,
    pub window_failures: Vec<(usize, usize, usize, BoundCheck)>,
}

impl VerifyReport {
    pub fn counts_agree(&self) -> bool {
        self.dp_count == self.oracle_count.to_string()
    }

    pub fn passed(&self) -> bool {
        self.counts_agree()
            && self.tv <= self.tv_limit
            && self
                .chi_square
                .is_none_or(|c| c.pass || self.backend == Backend::Walk)
            && self.acceptance.is_none_or(|(rate, bound)| rate >= bound)
            && self.rank_failures.is_empty()
            && self.window_failures.is_empty()
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} count: dp {} oracle {}",
            verdict(self.counts_agree()),
            self.dp_count,
            self.oracle_count
        )?;
        writeln!(
            f,
            "{} tv distance {:.5} (limit {})",
            verdict(self.tv <= self.tv_limit),
            self.tv,
            self.tv_limit
        )?;
        match &self.chi_square {
            Some(c) => writeln!(
                f,
                "{} chi-square {:.3} on {} df (critical {:.3} at 0.01){}",
                verdict(c.pass),
                c.statistic,
                c.degrees_of_freedom,
                c.critical_value,
                if self.backend == Backend::Walk {
                    ", informational for walk"
                } else {
                    ""
                }
            )?,
            None => writeln!(f, "SKIP chi-square: expected count per point below 5")?,
        }
        if let Some((rate, bound)) = self.acceptance {
            writeln!(
                f,
                "{} acceptance rate {rate:.4} (bound {bound:.4})",
                verdict(rate >= bound)
            )?;
        }
        writeln!(
            f,
            "{} per-rank bounds: {}/{} within 3 SE",
            verdict(self.rank_failures.is_empty()),
            self.rank_checks - self.rank_failures.len(),
            self.rank_checks
        )?;
        for (i, j, c) in &self.rank_failures {
            writeln!(
                f,
                "  rank {i} group {}: {:.4} outside [{:.4}, {:.4}]",
                j + 1,
                c.estimate,
                c.lower,
                c.upper
            )?;
        }
        writeln!(
            f,
            "{} window bounds: {}/{} within 3 SE",
            verdict(self.window_failures.is_empty()),
            self.window_checks - self.window_failures.len(),
            self.window_checks
        )?;
        for (i, i2, j, c) in &self.window_failures {
            writeln!(
                f,
                "  ranks {i}..={i2} group {}: {:.4} outside [{:.4}, {:.4}]",
                j + 1,
                c.estimate,
                c.lower,
                c.upper
            )?;
        }
        write!(
            f,
            "{}",
            if self.passed() {
                "verification passed"
            } else {
                "verification FAILED"
            }
        )
    }
}

/// Window check computed straight from group assignments.
fn window_check(
    ys: &[GroupAssignment],
    c: &FairnessConstraints,
    group: usize,
    first: usize,
    last: usize,
) -> BoundCheck {
    let z: Vec<f64> = ys
        .iter()
        .map(|y| {
            y.groups()[first - 1..last]
                .iter()
                .filter(|&&g| g == group)
                .count() as f64
        })
        .collect();
    let n = z.len() as f64;
    let mean = z.iter().sum::<f64>() / n;
    let var = z.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    let width = (last - first + 1) as f64;
    let k = c.k() as f64;
    BoundCheck::new(
        mean,
        width * c.lower()[group] as f64 / k,
        width * c.upper()[group] as f64 / k,
        (var / n).sqrt(),
    )
}

/// Compares sampler output against the brute-force oracle.
pub fn verify(params: &VerifyParams) -> Result<VerifyReport> {
    let c = &params.constraints;
    let (k, ell) = (c.k(), c.ell());
    let points = brute_force_enumerate(k, c.lower(), c.upper())?;
    let dp_count = count_fair_representations(c).to_string();

    let cfg = WalkConfig::with_tv_delta(params.tv_delta);
    let mut rng = stream_rng(params.seed, 0);
    let mut sampler = RepresentationSampler::new(c, params.backend, &cfg, &mut rng)?;
    let mut stats = SampleStatistics::new(k, ell);
    let mut ys = Vec::with_capacity(params.samples);
    for _ in 0..params.samples {
        let x = sampler.sample(&mut rng)?;
        let y = sample_assignment(&x, &mut rng);
        stats.record(&y);
        ys.push(y);
    }

    let index: HashMap<&[usize], usize> = points
        .iter()
        .enumerate()
        .map(|(n, p)| (p.counts(), n))
        .collect();
    let mut histogram = vec![0u64; points.len()];
    for (x, &count) in stats.representation_histogram() {
        histogram[index[x.as_slice()]] += count;
    }
    let tv = tv_distance_to_uniform(&histogram);
    let chi_square = chi_square_uniformity(&histogram).ok();
    let (tv_limit, acceptance) = match &sampler {
        RepresentationSampler::Dp(_) => (DP_TV_LIMIT, None),
        RepresentationSampler::Walk(w) => (
            params.tv_delta,
            (ell > 1).then(|| {
                (
                    w.acceptance_rate(),
                    w.geometry().acceptance_lower_bound(params.tv_delta),
                )
            }),
        ),
    };

    let n = params.samples;
    let mut rank_failures = Vec::new();
    for i in 1..=k {
        for j in 0..ell {
            let p = stats.rank_frequency(i, j);
            let check = BoundCheck::new(
                p,
                c.lower()[j] as f64 / k as f64,
                c.upper()[j] as f64 / k as f64,
                binomial_se(p, n),
            );
            if !check.pass {
                rank_failures.push((i, j, check));
            }
        }
    }

    let mut window_rng = stream_rng(params.seed, 1);
    let mut window_failures = Vec::new();
    for _ in 0..params.windows {
        let a = window_rng.gen_range(1..=k);
        let b = window_rng.gen_range(1..=k);
        let (first, last) = (a.min(b), a.max(b));
        for j in 0..ell {
            let check = window_check(&ys, c, j, first, last);
            if !check.pass {
                window_failures.push((first, last, j, check));
            }
        }
    }

    Ok(VerifyReport {
        backend: params.backend,
        oracle_count: points.len(),
        dp_count,
        tv,
        tv_limit,
        chi_square,
        acceptance,
        rank_checks: k * ell,
        rank_failures,
        window_checks: params.windows * ell,
        window_failures,
    })
}
