//! Harness around the motif swarm: run specification, trace and result
//! files, the reference stopping rule and the subcommands of the
//! `motif-swarm` binary.

pub mod cli;
pub mod commands;
pub mod error;
pub mod formats;
pub mod stop;

pub use commands::{
    landscape_command, oracle_command, run_command, sample_command, sidecar_path, InputSource,
    OracleReport, RunReport, RunSpec,
};
pub use error::{exit, HarnessError};
pub use formats::{parse_motifs, parse_trace, read_motifs, write_motifs, TraceRecord};
pub use stop::{stop_when_within_reference, StopMode};
