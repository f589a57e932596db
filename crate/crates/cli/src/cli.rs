//! Command-line argument parsing.

use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use motif_swarm::landscape::Fixed;
use motif_swarm::{CsvOptions, Measure, MissingPolicy, SwarmConfig, TopologyKind};

use crate::commands::{InputSource, RunSpec};
use crate::error::HarnessError;
use crate::stop::StopMode;

#[derive(Debug, Parser)]
#[command(name = "motif-swarm", version, about = "Anytime time series motif discovery")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Search for motifs with the particle swarm.
    Run(RunArgs),
    /// Exhaustive exact top-k search (small inputs only).
    Oracle(OracleArgs),
    /// Percentiles of the dissimilarity at randomly sampled motifs.
    Sample(SampleArgs),
    /// Export a 2-D slice of the dissimilarity landscape.
    Landscape(LandscapeArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// CSV file with one sample per row.
    #[arg(long, value_name = "PATH", conflicts_with = "random_walk", required_unless_present = "random_walk")]
    pub input: Option<PathBuf>,
    /// Generate a Gaussian random walk of N samples instead of reading a file.
    #[arg(long, value_name = "N")]
    pub random_walk: Option<usize>,
    /// Seed of the random-walk generator (defaults to --seed).
    #[arg(long, value_name = "S")]
    pub walk_seed: Option<u64>,
    /// 0-based column to read.
    #[arg(long, default_value_t = 0)]
    pub column: usize,
    /// Missing-value policy: strict, drop or interpolate.
    #[arg(long, default_value = "strict")]
    pub missing: MissingPolicy,
    /// Treat the first row as a header (auto-detected when omitted).
    #[arg(long)]
    pub header: Option<bool>,
    #[arg(long, default_value = "zeuclid", value_name = "NAME")]
    pub measure: Measure,
    /// Sakoe-Chiba band for dtw.
    #[arg(long, value_name = "B")]
    pub dtw_band: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TaskArgs {
    #[arg(long, value_name = "W")]
    pub wmin: usize,
    #[arg(long, value_name = "W")]
    pub wmax: usize,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    #[arg(long)]
    pub equal_lengths: bool,
    #[arg(long, value_name = "S")]
    pub max_stretch: Option<usize>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub task: TaskArgs,
    #[arg(long, value_name = "T")]
    pub iterations: Option<u64>,
    /// Wall-time budget, checked at trace snapshots.
    #[arg(long, value_name = "SECONDS")]
    pub time_budget: Option<f64>,
    #[arg(long, value_name = "K")]
    pub particles: Option<usize>,
    #[arg(long, default_value = "lbest-ring", value_name = "NAME")]
    pub topology: TopologyKind,
    #[arg(long, default_value_t = 4.05)]
    pub phi: f64,
    #[arg(long, value_name = "T")]
    pub tau: Option<u64>,
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.002)]
    pub rho: f64,
    #[arg(long)]
    pub no_clamp: bool,
    #[arg(long)]
    pub stochastic_inertia: bool,
    #[arg(long, default_value_t = 0.0, value_name = "F")]
    pub overlap_fraction: f64,
    #[arg(long, value_name = "PATH")]
    pub trace: Option<PathBuf>,
    #[arg(long, default_value_t = 100, value_name = "T")]
    pub trace_interval: u64,
    /// Write wall-clock milliseconds into the trace (not reproducible).
    #[arg(long)]
    pub record_time: bool,
    /// Motif CSV with exact dissimilarities to stop against.
    #[arg(long, value_name = "PATH")]
    pub reference: Option<PathBuf>,
    #[arg(long, default_value_t = 0.95, value_name = "F")]
    pub stop_fraction: f64,
    /// Match each ranked dissimilarity against the ranked reference
    /// instead of the reference band.
    #[arg(long)]
    pub ranked_stop: bool,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub task: TaskArgs,
    /// Maximum number of dissimilarity evaluations.
    #[arg(long, default_value_t = motif_swarm::oracle::DEFAULT_BUDGET)]
    pub budget: u128,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub task: TaskArgs,
    /// Number of samples (defaults to the series length).
    #[arg(long)]
    pub count: Option<usize>,
}

#[derive(Debug, Args)]
pub struct LandscapeArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Fix both starts, "A,B"; the grid ranges over lengths.
    #[arg(long, value_name = "A,B", conflicts_with = "fix_lengths", required_unless_present = "fix_lengths")]
    pub fix_starts: Option<String>,
    /// Fix both lengths, "WA,WB"; the grid ranges over starts.
    #[arg(long, value_name = "WA,WB")]
    pub fix_lengths: Option<String>,
    /// Row range "LO..HI" (inclusive).
    #[arg(long, value_name = "LO..HI")]
    pub rows: String,
    /// Column range "LO..HI" (inclusive).
    #[arg(long, value_name = "LO..HI")]
    pub cols: String,
}

fn usage(msg: impl Into<String>) -> HarnessError {
    HarnessError::Usage(msg.into())
}

fn parse_pair(s: &str) -> Result<(usize, usize), HarnessError> {
    let (x, y) = s
        .split_once(',')
        .ok_or_else(|| usage(format!("expected \"X,Y\", got {s:?}")))?;
    let p = |v: &str| v.trim().parse::<usize>().map_err(|_| usage(format!("bad integer {v:?}")));
    Ok((p(x)?, p(y)?))
}

pub fn parse_range(s: &str) -> Result<RangeInclusive<usize>, HarnessError> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| usage(format!("expected \"LO..HI\", got {s:?}")))?;
    let p = |v: &str| v.trim().parse::<usize>().map_err(|_| usage(format!("bad integer {v:?}")));
    Ok(p(lo)?..=p(hi)?)
}

impl InputArgs {
    fn source(&self) -> InputSource {
        match (&self.input, self.random_walk) {
            (Some(path), _) => InputSource::File {
                path: path.clone(),
                csv: CsvOptions {
                    column: self.column,
                    header: self.header,
                    missing: self.missing,
                    delimiter: None,
                },
            },
            (None, Some(n)) => InputSource::RandomWalk {
                n,
                seed: self.walk_seed,
            },
            (None, None) => unreachable!("clap requires one input"),
        }
    }

    fn spec(&self, w_min: usize, w_max: usize, k: usize) -> RunSpec {
        let mut spec = RunSpec::new(self.source(), w_min, w_max, k);
        spec.measure = self.measure.with_band(self.dtw_band);
        spec.config.seed = self.seed;
        spec.out_path = self.out.clone();
        spec
    }
}

impl TaskArgs {
    fn spec(&self, input: &InputArgs) -> RunSpec {
        let mut spec = input.spec(self.wmin, self.wmax, self.k);
        spec.config.equal_lengths = self.equal_lengths;
        spec.config.max_stretch = self.max_stretch;
        spec
    }
}

impl RunArgs {
    pub fn to_spec(&self) -> Result<RunSpec, HarnessError> {
        let mut spec = self.task.spec(&self.input);
        spec.iterations = self.iterations;
        spec.time_budget = match self.time_budget {
            Some(s) if s.is_finite() && s > 0.0 => Some(Duration::from_secs_f64(s)),
            Some(s) => return Err(usage(format!("--time-budget must be positive, got {s}"))),
            None => None,
        };
        spec.config = SwarmConfig {
            kappa: self.particles,
            topology: self.topology,
            phi: self.phi,
            tau: self.tau,
            alpha: self.alpha,
            rho: self.rho,
            clamp_velocity: !self.no_clamp,
            stochastic_inertia: self.stochastic_inertia,
            overlap_fraction: self.overlap_fraction,
            ..spec.config
        };
        spec.trace_path = self.trace.clone();
        spec.trace_interval = self.trace_interval;
        spec.record_time = self.record_time;
        spec.reference = self.reference.clone();
        spec.stop_fraction = self.stop_fraction;
        spec.stop_mode = if self.ranked_stop {
            StopMode::Ranked
        } else {
            StopMode::Band
        };
        Ok(spec)
    }
}

impl OracleArgs {
    pub fn to_spec(&self) -> RunSpec {
        let mut spec = self.task.spec(&self.input);
        spec.budget = self.budget;
        spec
    }
}

impl SampleArgs {
    pub fn to_spec(&self) -> RunSpec {
        let mut spec = self.task.spec(&self.input);
        spec.samples = self.count;
        spec
    }
}

impl LandscapeArgs {
    pub fn to_parts(
        &self,
    ) -> Result<(RunSpec, Fixed, RangeInclusive<usize>, RangeInclusive<usize>), HarnessError> {
        let spec = self.input.spec(1, 1, 1);
        let fixed = match (&self.fix_starts, &self.fix_lengths) {
            (Some(s), _) => {
                let (a, b) = parse_pair(s)?;
                Fixed::Starts { a, b }
            }
            (None, Some(s)) => {
                let (w_a, w_b) = parse_pair(s)?;
                Fixed::Lengths { w_a, w_b }
            }
            (None, None) => return Err(usage("set --fix-starts or --fix-lengths")),
        };
        Ok((spec, fixed, parse_range(&self.rows)?, parse_range(&self.cols)?))
    }
}
