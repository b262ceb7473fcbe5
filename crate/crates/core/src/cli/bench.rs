use std::time::Instant;

use super::constraints::build_constraints;
use super::experiment::{fmt6, stream_rng};
use crate::assembly::Backend;
use crate::dp::CountTable;
use crate::error::{Error, Result};
use crate::model::FairnessConstraints;
use crate::walk::{WalkConfig, WalkSampler};

pub const DEFAULT_KS: [usize; 4] = [100, 1000, 10_000, 20_000];
pub const DEFAULT_ELLS: [usize; 3] = [2, 5, 10];
pub const BENCH_ETA: f64 = 0.1;

#[derive(Debug, Clone, PartialEq)]
pub struct TimingRow {
    pub backend: Backend,
    pub k: usize,
    pub ell: usize,
    /// Mean seconds to build the sampler and draw one representation.
    pub mean_seconds: f64,
}

/// Equal proportions with slack `BENCH_ETA`.
pub fn bench_instance(k: usize, ell: usize) -> Result<FairnessConstraints> {
    build_constraints(&vec![1.0 / ell as f64; ell], k, BENCH_ETA)
}

/// Seconds to build the table or chain and draw one representation.
pub fn time_once(c: &FairnessConstraints, backend: Backend, seed: u64) -> Result<f64> {
    let mut rng = stream_rng(seed, 0);
    let start = Instant::now();
    match backend {
        Backend::Dp => {
            CountTable::build(c)?.sample(&mut rng);
        }
        Backend::Walk => {
            WalkSampler::new(c, &WalkConfig::default(), &mut rng)?.sample(&mut rng)?;
        }
    }
    Ok(start.elapsed().as_secs_f64())
}

/// Timing grid; walk cells whose Δ is below 1 are skipped.
pub fn run_bench(
    ks: &[usize],
    ells: &[usize],
    backends: &[Backend],
    runs: usize,
    seed: u64,
) -> Result<Vec<TimingRow>> {
    if runs == 0 {
        return Err(Error::InvalidArgument("runs must be at least 1".into()));
    }
    let mut rows = Vec::new();
    for &backend in backends {
        for &ell in ells {
            for &k in ks {
                let c = bench_instance(k, ell)?;
                let mut total = 0.0;
                let mut skipped = false;
                for r in 0..runs {
                    match time_once(&c, backend, seed.wrapping_add(r as u64)) {
                        Ok(t) => total += t,
                        Err(Error::DeltaTooSmall { .. }) => {
                            skipped = true;
                            break;
                        }
                        Err(e) => return Err(e),
                    }
                }
                if !skipped {
                    rows.push(TimingRow {
                        backend,
                        k,
                        ell,
                        mean_seconds: total / runs as f64,
                    });
                }
            }
        }
    }
    Ok(rows)
}

pub fn render_timing(rows: &[TimingRow]) -> String {
    let mut s = String::from("backend,k,ell,mean_seconds\n");
    for r in rows {
        s.push_str(&format!(
            "{},{},{},{}\n",
            r.backend,
            r.k,
            r.ell,
            fmt6(r.mean_seconds)
        ));
    }
    s
}
