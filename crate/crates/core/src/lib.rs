//! Uniform sampling of ex-post group-fair top-k rankings.
//!
//! A ranking is drawn in two stages: a group representation (how many ranks
//! each group receives) uniformly from the lattice points of
//! `{x : Σ x_j = k, L_j ≤ x_j ≤ U_j}`, then a uniformly random arrangement of
//! the group labels, filled with items in in-group order.
//!
//! ```
//! use fairrank::{sample_fair_ranking, Backend, FairnessConstraints, InGroupRanking, WalkConfig};
//! use rand::SeedableRng;
//!
//! let c = FairnessConstraints::new(3, vec![1, 1], vec![2, 2]).unwrap();
//! let lists = [InGroupRanking::new(0, ["a", "b"]), InGroupRanking::new(1, ["p", "q"])];
//! let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
//! let r = sample_fair_ranking(&c, &lists, Backend::Dp, &WalkConfig::default(), &mut rng).unwrap();
//! assert_eq!(r.len(), 3);
//! assert!(r.is_in_group_consistent(&lists));
//! ```

pub mod assembly;
pub mod cli;
pub mod dp;
pub mod error;
pub mod eval;
pub mod model;
pub mod prefix;
pub mod walk;

pub use assembly::{
    assemble_ranking, sample_assignment, sample_fair_ranking, Backend, FairRankingSampler,
};
pub use dp::{count_fair_representations, CountTable};
pub use error::{Error, Result, Violation};
pub use model::{
    is_group_fair, representation_of, FairnessConstraints, GroupAssignment, GroupRepresentation,
    InGroupRanking, RankedItem, Ranking,
};
pub use prefix::{sample_prefix_fair_ranking, PrefixConstraints};
pub use walk::{WalkConfig, WalkSampler};
