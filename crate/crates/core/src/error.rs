use std::fmt;

/// Which constraint inequality failed during validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `lower` and `upper` have different lengths, or no groups were given.
    GroupCount { lower: usize, upper: usize },
    /// The ranking length is zero.
    ZeroLength,
    /// `L_j > U_j` for a group.
    BoundOrder {
        group: usize,
        lower: usize,
        upper: usize,
    },
    /// `U_j > k` for a group.
    UpperExceedsLength {
        group: usize,
        upper: usize,
        k: usize,
    },
    /// `Σ L_j > k`.
    LowerSumExceedsLength { sum: usize, k: usize },
    /// `Σ U_j < k`.
    UpperSumBelowLength { sum: usize, k: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::GroupCount { lower, upper } => {
                write!(f, "expected matching non-empty bound vectors, got {lower} lower and {upper} upper")
            }
            Violation::ZeroLength => write!(f, "ranking length k must be positive"),
            Violation::BoundOrder {
                group,
                lower,
                upper,
            } => {
                write!(
                    f,
                    "group {}: lower bound {lower} > upper bound {upper}",
                    group + 1
                )
            }
            Violation::UpperExceedsLength { group, upper, k } => {
                write!(f, "group {}: upper bound {upper} > k = {k}", group + 1)
            }
            Violation::LowerSumExceedsLength { sum, k } => {
                write!(f, "sum of lower bounds {sum} > k = {k}")
            }
            Violation::UpperSumBelowLength { sum, k } => {
                write!(f, "sum of upper bounds {sum} < k = {k}")
            }
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("infeasible constraints: {0}")]
    InfeasibleConstraints(Violation),

    #[error("polytope has no feasible lattice point")]
    NoFeasiblePoint,

    #[error("delta radius {delta} is below 1; use the dp sampler for this instance")]
    DeltaTooSmall { delta: usize },

    #[error("invalid walk configuration: {0}")]
    InvalidWalkConfig(String),

    #[error("random walk left the expanded polytope (coordinate {coordinate} = {value})")]
    WalkNotMixed { coordinate: usize, value: f64 },

    #[error("rejection budget exceeded after {rejections} consecutive rejections")]
    RejectionBudgetExceeded { rejections: usize },

    #[error("group {} has {available} items but {needed} are required", group + 1)]
    InsufficientItems {
        group: usize,
        needed: usize,
        available: usize,
    },

    #[error("invalid in-group rankings: {0}")]
    InvalidInGroup(String),

    #[error("invalid prefix constraints: {0}")]
    InvalidPrefixConstraints(String),

    #[error("block ending at rank {checkpoint} is infeasible for every realized prefix tried")]
    BlockInfeasible { checkpoint: usize },

    #[error("instance too large for enumeration ({cells} box cells)")]
    InstanceTooLarge { cells: u128 },

    #[error("too few samples: expected count per cell {expected:.3} is below 5")]
    TooFewSamples { expected: f64 },

    #[error("no score for item {0:?}")]
    MissingScore(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
