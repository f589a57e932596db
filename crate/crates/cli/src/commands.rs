//! Run orchestration behind each subcommand.

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::ops::{ControlFlow, RangeInclusive};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use motif_swarm::landscape::{slice_landscape, Fixed};
use motif_swarm::oracle::{brute_force_topk, random_sample_reference, SampleReference};
use motif_swarm::{
    generate_random_walk, load_csv, CsvOptions, Measure, MotifSet, RunOutcome, SearchSpace,
    Snapshot, SwarmConfig, SwarmMotif, Task, TimeSeries, TraceSink,
};

use crate::error::{exit, HarnessError};
use crate::formats::{format_d, read_motifs, trace_header, trace_line, write_motifs};
use crate::stop::{stop_when_within_reference, StopMode};

#[derive(Debug, Clone, PartialEq)]
pub enum InputSource {
    File { path: PathBuf, csv: CsvOptions },
    /// Gaussian random walk; `seed` defaults to the run seed.
    RandomWalk { n: usize, seed: Option<u64> },
}

/// Everything one invocation needs.
#[derive(Debug, Clone)]
pub struct RunSpec {
    pub input: InputSource,
    pub measure: Measure,
    pub w_min: usize,
    pub w_max: usize,
    pub k: usize,
    pub iterations: Option<u64>,
    pub time_budget: Option<Duration>,
    pub config: SwarmConfig,
    pub trace_interval: u64,
    pub trace_path: Option<PathBuf>,
    pub out_path: Option<PathBuf>,
    pub reference: Option<PathBuf>,
    pub stop_fraction: f64,
    pub stop_mode: StopMode,
    /// Fill the trace's `elapsed_ms` column with wall-clock time.
    pub record_time: bool,
    /// Sample count for the sampling reference; defaults to `n`.
    pub samples: Option<usize>,
    /// Oracle evaluation budget.
    pub budget: u128,
}

impl RunSpec {
    pub fn new(input: InputSource, w_min: usize, w_max: usize, k: usize) -> Self {
        Self {
            input,
            measure: Measure::ZNormEuclidean,
            w_min,
            w_max,
            k,
            iterations: None,
            time_budget: None,
            config: SwarmConfig::default(),
            trace_interval: 100,
            trace_path: None,
            out_path: None,
            reference: None,
            stop_fraction: 0.95,
            stop_mode: StopMode::Band,
            record_time: false,
            samples: None,
            budget: motif_swarm::oracle::DEFAULT_BUDGET,
        }
    }

    /// Checks that need no I/O.
    pub fn validate(&self) -> Result<(), HarnessError> {
        let usage = |m: String| Err(HarnessError::Usage(m));
        if self.w_min == 0 {
            return usage("--wmin must be at least 1".into());
        }
        if self.w_min > self.w_max {
            return usage(format!("--wmin ({}) exceeds --wmax ({})", self.w_min, self.w_max));
        }
        if self.k == 0 {
            return usage("--k must be at least 1".into());
        }
        if !(0.0..=1.0).contains(&self.stop_fraction) {
            return usage("--stop-fraction must lie in [0, 1]".into());
        }
        if self.trace_interval == 0 {
            return usage("--trace-interval must be at least 1".into());
        }
        if let InputSource::RandomWalk { n, .. } = self.input {
            if n < 2 {
                return usage("--random-walk needs at least 2 samples".into());
            }
        }
        self.config
            .validate()
            .map_err(|e| HarnessError::Usage(e.to_string()))
    }

    fn validate_run(&self) -> Result<(), HarnessError> {
        self.validate()?;
        if self.iterations.is_none() && self.time_budget.is_none() {
            return Err(HarnessError::Usage(
                "set --iterations and/or --time-budget".into(),
            ));
        }
        Ok(())
    }

    pub fn load_series(&self) -> Result<TimeSeries, HarnessError> {
        Ok(match &self.input {
            InputSource::File { path, csv } => load_csv(path, csv)?,
            InputSource::RandomWalk { n, seed } => {
                generate_random_walk(*n, seed.unwrap_or(self.config.seed))?
            }
        })
    }

    pub fn search_space(&self, n: usize) -> Result<SearchSpace, HarnessError> {
        Ok(SearchSpace::new(n, self.w_min, self.w_max)?
            .with_equal_lengths(self.config.equal_lengths)
            .with_max_stretch(self.config.max_stretch))
    }
}

fn create(path: &Path) -> Result<BufWriter<File>, HarnessError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;
    }
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| HarnessError::io(path, e))
}

/// Writes to `path`, or to stdout when `None`.
fn emit(
    path: Option<&Path>,
    body: impl FnOnce(&mut dyn Write) -> io::Result<()>,
) -> Result<(), HarnessError> {
    match path {
        Some(p) => {
            let mut w = create(p)?;
            body(&mut w).and_then(|_| w.flush()).map_err(|e| HarnessError::io(p, e))
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            body(&mut lock)?;
            Ok(())
        }
    }
}

/// Streams trace records and applies the reference and wall-time stops.
struct RunSink {
    trace: Option<(PathBuf, BufWriter<File>)>,
    k: usize,
    record_time: bool,
    reference: Option<Vec<f64>>,
    stop_fraction: f64,
    stop_mode: StopMode,
    time_budget: Option<Duration>,
    started: Instant,
    records: usize,
    reached_reference: bool,
    error: Option<HarnessError>,
}

impl TraceSink for RunSink {
    fn record(&mut self, snapshot: &Snapshot) -> ControlFlow<()> {
        if let Some((path, w)) = self.trace.as_mut() {
            if let Err(e) = writeln!(w, "{}", trace_line(snapshot, self.k, self.record_time)) {
                self.error = Some(HarnessError::io(path, e));
                return ControlFlow::Break(());
            }
        }
        self.records += 1;
        if let Some(reference) = &self.reference {
            let current = snapshot.motifs.dissimilarities();
            match stop_when_within_reference(&current, self.k, reference, self.stop_fraction, self.stop_mode) {
                Ok(true) => {
                    self.reached_reference = true;
                    return ControlFlow::Break(());
                }
                Ok(false) => {}
                Err(e) => {
                    self.error = Some(e);
                    return ControlFlow::Break(());
                }
            }
        }
        match self.time_budget {
            Some(budget) if self.started.elapsed() >= budget => ControlFlow::Break(()),
            _ => ControlFlow::Continue(()),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub outcome: RunOutcome,
    pub trace_records: usize,
    pub reached_reference: bool,
    pub exit_code: i32,
}

/// Runs the swarm, streams the trace and writes the final motif set.
pub fn run_command(spec: &RunSpec) -> Result<RunReport, HarnessError> {
    spec.validate_run()?;
    let z = spec.load_series()?;
    let reference = match &spec.reference {
        Some(path) => {
            let set = read_motifs(path)?;
            if set.is_empty() {
                return Err(HarnessError::Usage(format!("{}: reference has no motifs", path.display())));
            }
            Some(set.dissimilarities())
        }
        None => None,
    };
    let task = Task {
        w_min: spec.w_min,
        w_max: spec.w_max,
        k: spec.k,
        t_max: spec.iterations.unwrap_or(u64::MAX),
    };
    let mut engine = SwarmMotif::new(&z, spec.measure, task, spec.config.clone())?;

    let trace = match &spec.trace_path {
        Some(path) => {
            let mut w = create(path)?;
            writeln!(w, "{}", trace_header(spec.k)).map_err(|e| HarnessError::io(path, e))?;
            Some((path.clone(), w))
        }
        None => None,
    };
    let mut sink = RunSink {
        trace,
        k: spec.k,
        record_time: spec.record_time,
        reference,
        stop_fraction: spec.stop_fraction,
        stop_mode: spec.stop_mode,
        time_budget: spec.time_budget,
        started: Instant::now(),
        records: 0,
        reached_reference: false,
        error: None,
    };
    let outcome = engine.run(&mut sink, spec.trace_interval);
    if let Some(e) = sink.error.take() {
        return Err(e);
    }
    if let Some((path, mut w)) = sink.trace.take() {
        w.flush().map_err(|e| HarnessError::io(&path, e))?;
    }

    emit(spec.out_path.as_deref(), |w| write_motifs(w, &outcome.motifs))?;
    let exit_code = if outcome.motifs.shortfall > 0 {
        exit::SHORTFALL
    } else {
        exit::SUCCESS
    };
    Ok(RunReport {
        outcome,
        trace_records: sink.records,
        reached_reference: sink.reached_reference,
        exit_code,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleSidecar {
    pub evaluations: u64,
    pub elapsed_ms: u128,
    pub n: usize,
    pub w_min: usize,
    pub w_max: usize,
    pub k: usize,
    pub measure: String,
    pub equal_lengths: bool,
}

#[derive(Debug, Clone)]
pub struct OracleReport {
    pub motifs: MotifSet,
    pub sidecar: OracleSidecar,
    pub exit_code: i32,
}

/// Path of the metadata written next to an oracle result.
pub fn sidecar_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".meta.json");
    PathBuf::from(name)
}

/// Exhaustive search; writes the exact motif set and its metadata.
pub fn oracle_command(spec: &RunSpec) -> Result<OracleReport, HarnessError> {
    spec.validate()?;
    let z = spec.load_series()?;
    let space = spec.search_space(z.len())?;
    let result = brute_force_topk(&z, &spec.measure, &space, spec.k, spec.budget)?;
    let sidecar = OracleSidecar {
        evaluations: result.evaluations,
        elapsed_ms: result.elapsed.as_millis(),
        n: z.len(),
        w_min: spec.w_min,
        w_max: spec.w_max,
        k: spec.k,
        measure: spec.measure.name().to_string(),
        equal_lengths: spec.config.equal_lengths,
    };
    emit(spec.out_path.as_deref(), |w| write_motifs(w, &result.motifs))?;
    if let Some(out) = &spec.out_path {
        let path = sidecar_path(out);
        let json = serde_json::to_string_pretty(&sidecar).expect("sidecar serializes");
        fs::write(&path, json + "\n").map_err(|e| HarnessError::io(&path, e))?;
    }
    let exit_code = if result.motifs.shortfall > 0 {
        exit::SHORTFALL
    } else {
        exit::SUCCESS
    };
    Ok(OracleReport {
        motifs: result.motifs,
        sidecar,
        exit_code,
    })
}

pub const SAMPLE_HEADER: &str = "count,min,p5,p50,p95,max";

/// Random-sampling reference: percentiles of `D` at randomly drawn motifs.
pub fn sample_command(spec: &RunSpec) -> Result<SampleReference, HarnessError> {
    spec.validate()?;
    let z = spec.load_series()?;
    let space = spec.search_space(z.len())?;
    let count = spec.samples.unwrap_or(z.len());
    let mut rng = ChaCha8Rng::seed_from_u64(spec.config.seed);
    let report = random_sample_reference(&z, &spec.measure, &space, count, &mut rng)?;
    emit(spec.out_path.as_deref(), |w| {
        writeln!(w, "{SAMPLE_HEADER}")?;
        writeln!(
            w,
            "{},{},{},{},{},{}",
            report.count,
            format_d(report.min),
            format_d(report.p5),
            format_d(report.p50),
            format_d(report.p95),
            format_d(report.max)
        )
    })?;
    Ok(report)
}

/// A 2-D slice of the dissimilarity landscape, written as a CSV matrix.
pub fn landscape_command(
    spec: &RunSpec,
    fixed: Fixed,
    rows: RangeInclusive<usize>,
    cols: RangeInclusive<usize>,
) -> Result<(), HarnessError> {
    let z = spec.load_series()?;
    let slice = slice_landscape(&z, fixed, rows, cols, &spec.measure)?;
    emit(spec.out_path.as_deref(), |w| slice.write_csv(w))
}
