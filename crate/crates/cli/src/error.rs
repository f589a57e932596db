use std::path::{Path, PathBuf};

use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const FAILURE: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const INFEASIBLE: i32 = 3;
    /// Results were written but hold fewer than `k` motifs.
    pub const SHORTFALL: i32 = 4;
    pub const BUDGET: i32 = 5;
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("usage: {0}")]
    Usage(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Stream(#[from] std::io::Error),

    #[error("malformed file: {0}")]
    Format(String),

    #[error(transparent)]
    Core(#[from] motif_swarm::Error),
}

impl HarnessError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        HarnessError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        use motif_swarm::Error as E;
        match self {
            HarnessError::Usage(_) => exit::USAGE,
            HarnessError::Core(E::Infeasible(_)) => exit::INFEASIBLE,
            HarnessError::Core(E::BudgetExceeded { .. }) => exit::BUDGET,
            HarnessError::Core(
                E::Config(_) | E::UnknownMeasure(_) | E::UnknownTopology(_),
            ) => exit::USAGE,
            _ => exit::FAILURE,
        }
    }
}
