//! From a sampled representation to a full ranking: uniformly shuffle the
//! multiset of group labels, then fill each group's ranks with its items in
//! in-group order.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::dp::CountTable;
use crate::error::{Error, Result};
use crate::model::{
    FairnessConstraints, GroupAssignment, GroupRepresentation, InGroupRanking, RankedItem, Ranking,
};
use crate::walk::{WalkConfig, WalkSampler};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    /// Exact counting sampler.
    Dp,
    /// Polytope random walk, within TV `δ` of uniform.
    Walk,
}

impl std::str::FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dp" => Ok(Backend::Dp),
            "walk" => Ok(Backend::Walk),
            other => Err(Error::InvalidArgument(format!("unknown backend {other:?}"))),
        }
    }
}

impl std::fmt::Display for Backend {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Backend::Dp => "dp",
            Backend::Walk => "walk",
        })
    }
}

/// A uniformly random arrangement of `x_j` copies of each group `j`.
pub fn sample_assignment<R: Rng + ?Sized>(x: &GroupRepresentation, rng: &mut R) -> GroupAssignment {
    let mut y: Vec<usize> = x
        .counts()
        .iter()
        .enumerate()
        .flat_map(|(g, &n)| std::iter::repeat_n(g, n))
        .collect();
    y.shuffle(rng);
    GroupAssignment(y)
}

/// Places the `t`-th best item of group `j` at the `t`-th rank assigned to `j`.
pub fn assemble_ranking(y: &GroupAssignment, in_group: &[InGroupRanking]) -> Result<Ranking> {
    let mut next = vec![0usize; in_group.len()];
    let mut entries = Vec::with_capacity(y.len());
    for &g in y.groups() {
        let list = in_group.get(g).ok_or_else(|| {
            Error::InvalidArgument(format!("group {} has no in-group ranking", g + 1))
        })?;
        let Some(item) = list.items.get(next[g]) else {
            let needed = y.groups().iter().filter(|&&h| h == g).count();
            return Err(Error::InsufficientItems {
                group: g,
                needed,
                available: list.items.len(),
            });
        };
        next[g] += 1;
        entries.push(RankedItem {
            item: item.clone(),
            group: g,
        });
    }
    Ok(Ranking { entries })
}

/// Draws representations with either backend, reusing the table or chain.
#[derive(Debug, Clone)]
pub enum RepresentationSampler {
    Dp(CountTable),
    Walk(WalkSampler),
}

impl RepresentationSampler {
    /// Builds the sampler; for the walk this runs the burn-in.
    pub fn new<R: Rng + ?Sized>(
        constraints: &FairnessConstraints,
        backend: Backend,
        config: &WalkConfig,
        rng: &mut R,
    ) -> Result<Self> {
        match backend {
            Backend::Dp => Ok(Self::Dp(CountTable::build(constraints)?)),
            Backend::Walk => Ok(Self::Walk(WalkSampler::new(constraints, config, rng)?)),
        }
    }

    pub fn sample<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<GroupRepresentation> {
        match self {
            Self::Dp(table) => Ok(table.sample(rng)),
            Self::Walk(walk) => walk.sample(rng),
        }
    }
}

/// Reusable sampler for the full two-stage construction.
#[derive(Debug, Clone)]
pub struct FairRankingSampler {
    constraints: FairnessConstraints,
    in_group: Vec<InGroupRanking>,
    representation: RepresentationSampler,
}

impl FairRankingSampler {
    pub fn new<R: Rng + ?Sized>(
        constraints: &FairnessConstraints,
        in_group: &[InGroupRanking],
        backend: Backend,
        config: &WalkConfig,
        rng: &mut R,
    ) -> Result<Self> {
        constraints.check_in_group(in_group)?;
        Ok(Self {
            constraints: constraints.clone(),
            in_group: in_group.to_vec(),
            representation: RepresentationSampler::new(constraints, backend, config, rng)?,
        })
    }

    pub fn constraints(&self) -> &FairnessConstraints {
        &self.constraints
    }

    pub fn representation_sampler(&self) -> &RepresentationSampler {
        &self.representation
    }

    pub fn sample_assignment<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<GroupAssignment> {
        let x = self.representation.sample(rng)?;
        debug_assert!(x.is_group_fair(&self.constraints));
        Ok(sample_assignment(&x, rng))
    }

    pub fn sample<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<Ranking> {
        let y = self.sample_assignment(rng)?;
        assemble_ranking(&y, &self.in_group)
    }
}

/// One ranking from the unique distribution satisfying in-group consistency,
/// uniform representation, and exchangeable adjacent ranks (exact with
/// [`Backend::Dp`], within TV `δ` with [`Backend::Walk`]).
pub fn sample_fair_ranking<R: Rng + ?Sized>(
    constraints: &FairnessConstraints,
    in_group: &[InGroupRanking],
    backend: Backend,
    config: &WalkConfig,
    rng: &mut R,
) -> Result<Ranking> {
    FairRankingSampler::new(constraints, in_group, backend, config, rng)?.sample(rng)
}
