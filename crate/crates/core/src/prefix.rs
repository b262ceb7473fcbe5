//! Block-wise sampling under representation bounds on several prefixes.
//!
//! Between consecutive checkpoints `i < i'` the ranks `i+1..=i'` form a
//! block of length `i' - i`. Given the realized group counts `w` of the top
//! `i`, the block's representation is drawn from
//! `{ x : Σ x_j = i' - i, max(0, L_{i'j} - w_j) <= x_j <= min(i' - i, U_{i'j} - w_j) }`
//! and shuffled into place. This is a heuristic: it always emits rankings
//! that satisfy every checkpoint, but the output distribution carries no
//! uniqueness guarantee.

use rand::Rng;

use crate::assembly::{assemble_ranking, sample_assignment, Backend, RepresentationSampler};
use crate::error::{Error, Result};
use crate::model::{
    check_in_group_lists, FairnessConstraints, GroupAssignment, InGroupRanking, Ranking,
};
use crate::walk::WalkConfig;

/// Block resamples allowed at one position before a full restart.
pub const BLOCK_RETRIES: usize = 20;
/// Full restarts allowed before giving up.
pub const FULL_RESTARTS: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixConstraints {
    k: usize,
    checkpoints: Vec<usize>,
    /// `lower[c][j]` bounds group `j` in the top `checkpoints[c]` ranks.
    lower: Vec<Vec<usize>>,
    upper: Vec<Vec<usize>>,
}

impl PrefixConstraints {
    pub fn new(
        k: usize,
        checkpoints: Vec<usize>,
        lower: Vec<Vec<usize>>,
        upper: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let bad = |msg: String| Err::<Self, _>(Error::InvalidPrefixConstraints(msg));
        if checkpoints.is_empty() || checkpoints.last() != Some(&k) {
            return bad(format!("checkpoints must end at k = {k}"));
        }
        if checkpoints.windows(2).any(|w| w[0] >= w[1]) || checkpoints[0] == 0 {
            return bad("checkpoints must be strictly increasing and positive".into());
        }
        if lower.len() != checkpoints.len() || upper.len() != checkpoints.len() {
            return bad("one bound row per checkpoint is required".into());
        }
        let ell = lower[0].len();
        for (c, &i) in checkpoints.iter().enumerate() {
            if lower[c].len() != ell || upper[c].len() != ell {
                return bad(format!("checkpoint {i}: expected {ell} groups"));
            }
            if let Err(e) = crate::model::validate(i, &lower[c], &upper[c]) {
                return bad(format!("checkpoint {i}: {e}"));
            }
        }
        Ok(Self {
            k,
            checkpoints,
            lower,
            upper,
        })
    }

    /// A single checkpoint at `k` carrying the flat bounds.
    pub fn from_flat(constraints: &FairnessConstraints) -> Self {
        Self {
            k: constraints.k(),
            checkpoints: vec![constraints.k()],
            lower: vec![constraints.lower().to_vec()],
            upper: vec![constraints.upper().to_vec()],
        }
    }

    /// Checkpoints every `block` ranks (plus `k`), with bounds
    /// `⌈(p_j - ηb / max(b, k - i)) i⌉` and `⌊(p_j + ηb / max(b, k - i)) i⌋`
    /// clamped to `[0, i]`.
    pub fn from_proportions(proportions: &[f64], k: usize, eta: f64, block: usize) -> Result<Self> {
        if block == 0 {
            return Err(Error::InvalidPrefixConstraints(
                "block size must be positive".into(),
            ));
        }
        let mut checkpoints: Vec<usize> = (1..).map(|m| m * block).take_while(|&i| i < k).collect();
        checkpoints.push(k);
        let (mut lower, mut upper) = (Vec::new(), Vec::new());
        for &i in &checkpoints {
            let slack = eta * block as f64 / block.max(k - i) as f64;
            let (l, u) = crate::cli::proportional_bounds(proportions, i, slack);
            lower.push(l);
            upper.push(u);
        }
        Self::new(k, checkpoints, lower, upper)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn ell(&self) -> usize {
        self.lower[0].len()
    }

    pub fn checkpoints(&self) -> &[usize] {
        &self.checkpoints
    }

    pub fn lower(&self, checkpoint_index: usize) -> &[usize] {
        &self.lower[checkpoint_index]
    }

    pub fn upper(&self, checkpoint_index: usize) -> &[usize] {
        &self.upper[checkpoint_index]
    }

    /// Whether every checkpoint's bounds hold for this assignment.
    pub fn is_satisfied_by(&self, y: &GroupAssignment) -> bool {
        if y.len() != self.k {
            return false;
        }
        let mut counts = vec![0usize; self.ell()];
        let mut c = 0;
        for (rank, &g) in y.groups().iter().enumerate() {
            counts[g] += 1;
            if rank + 1 == self.checkpoints[c] {
                let ok = counts
                    .iter()
                    .zip(self.lower[c].iter().zip(&self.upper[c]))
                    .all(|(&n, (&l, &u))| l <= n && n <= u);
                if !ok {
                    return false;
                }
                c += 1;
            }
        }
        true
    }

    /// Bounds for the block ending at checkpoint `c`, given the counts `w` of
    /// the preceding prefix. `None` when that block polytope is empty.
    fn block_constraints(&self, c: usize, w: &[usize]) -> Option<FairnessConstraints> {
        let start = if c == 0 { 0 } else { self.checkpoints[c - 1] };
        let len = self.checkpoints[c] - start;
        let mut lower = Vec::with_capacity(w.len());
        let mut upper = Vec::with_capacity(w.len());
        for (j, &wj) in w.iter().enumerate() {
            let hi = self.upper[c][j].checked_sub(wj)?.min(len);
            lower.push(self.lower[c][j].saturating_sub(wj));
            upper.push(hi);
        }
        FairnessConstraints::new(len, lower, upper).ok()
    }
}

fn sample_block<R: Rng + ?Sized>(
    block: &FairnessConstraints,
    backend: Backend,
    config: &WalkConfig,
    rng: &mut R,
) -> Result<Vec<usize>> {
    let mut sampler = match RepresentationSampler::new(block, backend, config, rng) {
        Err(Error::DeltaTooSmall { .. }) => {
            RepresentationSampler::new(block, Backend::Dp, config, rng)?
        }
        other => other?,
    };
    let x = sampler.sample(rng)?;
    Ok(sample_assignment(&x, rng).0)
}

/// Samples a ranking whose every checkpoint prefix satisfies its bounds.
///
/// Walk blocks whose `Δ` is below 1 are drawn with the exact sampler.
pub fn sample_prefix_fair_ranking<R: Rng + ?Sized>(
    pc: &PrefixConstraints,
    in_group: &[InGroupRanking],
    backend: Backend,
    config: &WalkConfig,
    rng: &mut R,
) -> Result<Ranking> {
    let last = pc.checkpoints.len() - 1;
    check_in_group_lists(in_group, &pc.upper[last])?;
    let ell = pc.ell();
    let blocks = pc.checkpoints.len();

    for _restart in 0..=FULL_RESTARTS {
        let mut segments: Vec<Vec<usize>> = Vec::with_capacity(blocks);
        let mut prefix_counts: Vec<Vec<usize>> = vec![vec![0; ell]];
        let mut retries = vec![0usize; blocks];
        let mut restart = false;

        while segments.len() < blocks {
            let c = segments.len();
            match pc.block_constraints(c, &prefix_counts[c]) {
                Some(block) => {
                    let segment = sample_block(&block, backend, config, rng)?;
                    let mut counts = prefix_counts[c].clone();
                    for &g in &segment {
                        counts[g] += 1;
                    }
                    segments.push(segment);
                    prefix_counts.push(counts);
                }
                None => {
                    retries[c] += 1;
                    if c == 0 || retries[c] > BLOCK_RETRIES {
                        restart = true;
                        break;
                    }
                    // The dead end is fixed by the realized prefix, so redraw the block before it.
                    segments.pop();
                    prefix_counts.pop();
                }
            }
        }
        if restart {
            continue;
        }
        let y = GroupAssignment(segments.concat());
        debug_assert!(pc.is_satisfied_by(&y));
        return assemble_ranking(&y, in_group);
    }
    Err(Error::BlockInfeasible { checkpoint: pc.k })
}
