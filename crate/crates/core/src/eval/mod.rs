//! Oracle, statistical checks, ranking metrics and the ε-greedy baseline.

pub mod baseline;
pub mod metrics;
pub mod oracle;
pub mod stats;

pub use baseline::fair_epsilon_greedy;
pub use metrics::{
    fraction_of_rankings, interval_bound_check, min_max_normalize, ndcg_at, rank_bound_check,
    representation_curve, BoundCheck, CurvePoint,
};
pub use oracle::{brute_force_enumerate, MAX_BOX_CELLS};
pub use stats::{
    binomial_se, chi_square_uniformity, tv_distance, tv_distance_to_uniform, ChiSquareOutcome,
    SampleStatistics,
};
