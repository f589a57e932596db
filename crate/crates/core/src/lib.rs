//! Anytime time series motif discovery as multimodal optimization.
//!
//! A motif is a pair of non-overlapping segments `(a, w_a, b, w_b)` with low
//! length-normalized dissimilarity. [`SwarmMotif`] searches that 4-D space
//! with a particle swarm whose best-so-far answer can be read at any time;
//! [`oracle`] provides exhaustive ground truth for small inputs.

pub mod dissimilarity;
pub mod error;
pub mod landscape;
pub mod motif;
pub mod oracle;
pub mod series;
pub mod stats;
pub mod store;
pub mod swarm;
pub mod trace;

pub use dissimilarity::{norm_dtw, znorm_euclidean, Dissimilarity, Measure};
pub use error::{Error, Result};
pub use motif::{Motif, MotifCoords, SearchSpace};
pub use series::{
    generate_random_walk, load_csv, upsample, z_normalize, CsvOptions, MissingPolicy, Segment,
    TimeSeries,
};
pub use store::{overlaps, top_k_nonoverlapping, MotifQueue, MotifSet, PositionCache};
pub use swarm::{adaptive_defaults, RunOutcome, RunStats, SwarmConfig, SwarmMotif, Task, TopologyKind};
pub use trace::{NullSink, Recorder, Snapshot, TraceSink};
