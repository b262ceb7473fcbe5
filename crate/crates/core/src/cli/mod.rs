//! Dataset ingestion, experiment configuration and CSV artifacts.

pub mod bench;
pub mod config;
mod constraints;
pub mod dataset;
pub mod experiment;
pub mod verify;

use thiserror::Error;

pub use bench::{run_bench, TimingRow};
pub use config::{ConfigError, ExperimentConfig, Method};
pub use constraints::{build_constraints, proportional_bounds};
pub use dataset::{ingest, Dataset, DatasetError, DatasetRecord};
pub use experiment::{fmt6, run_experiment, stream_rng, Experiment, ExperimentOutcome};
pub use verify::{verify, VerifyParams, VerifyReport};

use crate::error::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error(transparent)]
    Dataset(#[from] DatasetError),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("sample {sample} violates the constraints")]
    ExPost { sample: usize },
    #[error("verification failed")]
    VerificationFailed,
}

impl CliError {
    /// 2 infeasible (or malformed prefix) constraints, 3 parse error, 4 rejection budget
    /// exhausted, 1 anything else.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(
                Error::InfeasibleConstraints(_)
                | Error::InvalidPrefixConstraints(_)
                | Error::NoFeasiblePoint
                | Error::BlockInfeasible { .. },
            ) => 2,
            CliError::Core(Error::RejectionBudgetExceeded { .. }) => 4,
            CliError::Dataset(DatasetError::Parse { .. } | DatasetError::UnknownColumn(_))
            | CliError::Config(_) => 3,
            _ => 1,
        }
    }
}
