use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("failed to read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("csv error in {path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },

    #[error("row {row}: cannot parse {cell:?} as a number")]
    NonNumeric { row: usize, cell: String },

    #[error("row {row} has no column {column}")]
    MissingColumn { row: usize, column: usize },

    #[error("series needs at least {required} samples, got {got}")]
    TooShort { required: usize, got: usize },

    #[error("series value at index {index} is not finite")]
    NonFinite { index: usize },

    #[error("segment [{start}, {end}] lies outside a series of length {n}")]
    SegmentOutOfRange { start: usize, end: usize, n: usize },

    #[error("invalid motif coordinates {0}")]
    InvalidMotif(String),

    #[error("empty input")]
    Empty,

    #[error("cannot upsample a length-{from} segment down to {to}")]
    Downsample { from: usize, to: usize },

    #[error("unknown measure {0:?} (expected \"zeuclid\" or \"dtw\")")]
    UnknownMeasure(String),

    #[error("unknown topology {0:?}")]
    UnknownTopology(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("infeasible task: {0}")]
    Infeasible(String),

    #[error("enumeration needs {needed} evaluations, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
}
