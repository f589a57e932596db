//! Anytime snapshots pushed by the engine while it runs.

use std::ops::ControlFlow;
use std::time::Duration;

use crate::stats::percentiles_5_50_95;
use crate::store::MotifSet;

/// State of the search after `iteration` iterations.
#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub iteration: u64,
    pub elapsed: Duration,
    /// Cumulative dissimilarity evaluations (cache hits excluded).
    pub evaluations: u64,
    pub motifs: MotifSet,
}

impl Snapshot {
    pub fn best(&self) -> Option<f64> {
        self.motifs.best().map(|m| m.d)
    }

    /// 5th, 50th and 95th percentile of the current top-k dissimilarities.
    pub fn percentiles(&self) -> Option<[f64; 3]> {
        percentiles_5_50_95(&self.motifs.dissimilarities())
    }
}

/// Receives snapshots; returning `Break` stops the run after this snapshot.
pub trait TraceSink {
    fn record(&mut self, snapshot: &Snapshot) -> ControlFlow<()>;
}

impl<S: TraceSink + ?Sized> TraceSink for &mut S {
    fn record(&mut self, snapshot: &Snapshot) -> ControlFlow<()> {
        (**self).record(snapshot)
    }
}

/// Discards everything.
#[derive(Debug, Default, Clone, Copy)]
pub struct NullSink;

impl TraceSink for NullSink {
    fn record(&mut self, _: &Snapshot) -> ControlFlow<()> {
        ControlFlow::Continue(())
    }
}

/// Keeps every snapshot in memory.
#[derive(Debug, Default, Clone)]
pub struct Recorder {
    pub snapshots: Vec<Snapshot>,
}

impl TraceSink for Recorder {
    fn record(&mut self, snapshot: &Snapshot) -> ControlFlow<()> {
        self.snapshots.push(snapshot.clone());
        ControlFlow::Continue(())
    }
}
