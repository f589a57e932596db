//! The particle swarm motif search.
//!
//! Each particle flies through the continuous space `(a, w_a, b, w_b)`;
//! its position is floored to a motif whenever it is scored. Personal-best
//! improvements feed a shared [`MotifQueue`], which survives the swarm
//! restarts triggered by stagnation and can be queried at any time.

pub mod constants;
pub mod init;
pub mod topology;

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dissimilarity::Dissimilarity;
use crate::error::{Error, Result};
use crate::motif::{Motif, SearchSpace};
use crate::series::TimeSeries;
use crate::store::{MotifQueue, MotifSet, PositionCache};
use crate::trace::{Snapshot, TraceSink};

pub use constants::UpdateConstants;
pub use init::{initialize_swarm, random_velocity, sample_position, sample_valid_motif, Position};
pub use topology::{initialize_topology, Topology, TopologyKind};

/// Tunable parameters of the optimizer. `None` for `kappa` or `tau` picks
/// them with [`adaptive_defaults`].
#[derive(Debug, Clone, PartialEq)]
pub struct SwarmConfig {
    pub kappa: Option<usize>,
    pub topology: TopologyKind,
    pub phi: f64,
    pub tau: Option<u64>,
    /// Sociability: share of `c0 * phi` given to the neighbourhood term.
    pub alpha: f64,
    /// Per-component craziness probability.
    pub rho: f64,
    pub clamp_velocity: bool,
    pub stochastic_inertia: bool,
    pub equal_lengths: bool,
    pub max_stretch: Option<usize>,
    /// Overlap tolerated between reported motifs (0 = strict).
    pub overlap_fraction: f64,
    pub queue_capacity: Option<usize>,
    pub cache_capacity: usize,
    pub seed: u64,
}

impl Default for SwarmConfig {
    fn default() -> Self {
        Self {
            kappa: None,
            topology: TopologyKind::Ring,
            phi: 4.05,
            tau: None,
            alpha: 0.5,
            rho: 0.002,
            clamp_velocity: true,
            stochastic_inertia: false,
            equal_lengths: false,
            max_stretch: None,
            overlap_fraction: 0.0,
            queue_capacity: None,
            cache_capacity: PositionCache::DEFAULT_CAPACITY,
            seed: 0,
        }
    }
}

impl SwarmConfig {
    pub fn validate(&self) -> Result<()> {
        UpdateConstants::new(self.phi, self.alpha)?;
        if let Some(kappa) = self.kappa {
            if kappa < 2 {
                return Err(Error::Config(format!("need at least 2 particles, got {kappa}")));
            }
        }
        if self.tau == Some(0) {
            return Err(Error::Config("tau must be at least 1".into()));
        }
        if !(0.0..=1.0).contains(&self.rho) {
            return Err(Error::Config(format!("rho must lie in [0, 1], got {}", self.rho)));
        }
        if !(0.0..=1.0).contains(&self.overlap_fraction) {
            return Err(Error::Config(format!(
                "overlap fraction must lie in [0, 1], got {}",
                self.overlap_fraction
            )));
        }
        Ok(())
    }
}

/// What to look for: length range, number of motifs, iteration budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Task {
    pub w_min: usize,
    pub w_max: usize,
    pub k: usize,
    pub t_max: u64,
}

/// Particle count and stagnation threshold scaled to the task:
/// `kappa = clamp(round(50 + n/10^4 + w_delta/10 + 2k), 50, 400)` and
/// `tau = 20 * kappa`.
pub fn adaptive_defaults(n: usize, w_delta: usize, k: usize) -> (usize, u64) {
    let raw = 50.0 + n as f64 / 1e4 + w_delta as f64 / 10.0 + 2.0 * k as f64;
    let kappa = (raw.round() as usize).clamp(50, 400);
    (kappa, 20 * kappa as u64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Particle {
    pub x: Position,
    pub v: Position,
    /// Personal best score.
    pub s: f64,
    /// Position where `s` was reached.
    pub p: Position,
}

#[derive(Debug, Clone)]
pub struct Swarm {
    pub particles: Vec<Particle>,
    pub topology: Topology,
    pub s_star: f64,
    /// Iteration of the last global-best improvement.
    pub t_update: u64,
}

/// Index of the best neighbour of `i`: starts at `i` and moves to any
/// neighbour, in list order, whose score is `<=` the current pick.
pub fn best_neighbor(i: usize, scores: &[f64], topology: &Topology) -> usize {
    let mut g = i;
    for &j in topology.neighbors(i) {
        if scores[j] <= scores[g] {
            g = j;
        }
    }
    g
}

/// Constricted velocity update with explicit random factors. `inertia`
/// replaces `c0` by `(1 - 2(1 - c0)) * u` (stochastic inertia variant).
#[allow(clippy::too_many_arguments)]
pub fn velocity_update(
    v: &Position,
    x: &Position,
    p_own: &Position,
    p_best: &Position,
    c: &UpdateConstants,
    u1: &Position,
    u2: &Position,
    inertia: Option<f64>,
) -> Position {
    let w = match inertia {
        Some(u) => (1.0 - 2.0 * (1.0 - c.c0)) * u,
        None => c.c0,
    };
    std::array::from_fn(|j| {
        w * v[j] + c.c1 * u1[j] * (p_own[j] - x[j]) + c.c2 * u2[j] * (p_best[j] - x[j])
    })
}

/// Per-component velocity caps `[n, w_delta, n, w_delta] / 2`.
pub fn velocity_range(space: &SearchSpace) -> Position {
    let n = space.n as f64 / 2.0;
    let w = space.w_delta() as f64 / 2.0;
    [n, w, n, w]
}

pub fn clamp_velocity(v: &Position, range: &Position) -> Position {
    std::array::from_fn(|j| v[j].max(-range[j]).min(range[j]))
}

/// Counters collected during a run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RunStats {
    /// Dissimilarity invocations (cache misses).
    pub evaluations: u64,
    pub cache_hits: u64,
    /// Particle visits skipped because the position was invalid.
    pub invalid_positions: u64,
    pub restarts: u64,
    /// Velocity components replaced by craziness.
    pub crazy_components: u64,
    /// Velocity components updated in total.
    pub velocity_components: u64,
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub motifs: MotifSet,
    pub iterations: u64,
    /// The sink asked to stop before `t_max`.
    pub stopped_early: bool,
    pub stats: RunStats,
    pub elapsed: Duration,
}

/// One optimizer run over a series.
pub struct SwarmMotif<'a, D> {
    series: &'a TimeSeries,
    measure: D,
    space: SearchSpace,
    task: Task,
    config: SwarmConfig,
    consts: UpdateConstants,
    kappa: usize,
    tau: u64,
    v_range: Position,
    rng: ChaCha8Rng,
    swarm: Swarm,
    queue: MotifQueue,
    cache: PositionCache,
    iteration: u64,
    stats: RunStats,
    scores: Vec<f64>,
}

impl<'a, D: Dissimilarity> SwarmMotif<'a, D> {
    pub fn new(series: &'a TimeSeries, measure: D, task: Task, config: SwarmConfig) -> Result<Self> {
        config.validate()?;
        if task.k == 0 {
            return Err(Error::Config("k must be at least 1".into()));
        }
        let space = SearchSpace::new(series.len(), task.w_min, task.w_max)?
            .with_equal_lengths(config.equal_lengths)
            .with_max_stretch(config.max_stretch);
        let (auto_kappa, _) = adaptive_defaults(space.n, space.w_delta(), task.k);
        let kappa = config.kappa.unwrap_or(auto_kappa);
        let tau = config.tau.unwrap_or(20 * kappa as u64);
        let consts = UpdateConstants::new(config.phi, config.alpha)?;

        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let particles = initialize_swarm(&space, kappa, &mut rng);
        let topology = initialize_topology(config.topology, kappa, &mut rng)?;
        let capacity = config
            .queue_capacity
            .unwrap_or_else(|| MotifQueue::default_capacity(task.k));

        Ok(Self {
            series,
            measure,
            space,
            task,
            consts,
            kappa,
            tau,
            v_range: velocity_range(&space),
            rng,
            swarm: Swarm {
                particles,
                topology,
                s_star: f64::INFINITY,
                t_update: 0,
            },
            queue: MotifQueue::new(space.n, task.k, capacity),
            cache: PositionCache::new(config.cache_capacity),
            iteration: 0,
            stats: RunStats::default(),
            scores: Vec::with_capacity(kappa),
            config,
        })
    }

    pub fn space(&self) -> &SearchSpace {
        &self.space
    }

    pub fn kappa(&self) -> usize {
        self.kappa
    }

    pub fn tau(&self) -> u64 {
        self.tau
    }

    pub fn constants(&self) -> &UpdateConstants {
        &self.consts
    }

    pub fn swarm(&self) -> &Swarm {
        &self.swarm
    }

    pub fn queue(&self) -> &MotifQueue {
        &self.queue
    }

    pub fn cache(&self) -> &PositionCache {
        &self.cache
    }

    pub fn stats(&self) -> RunStats {
        self.stats
    }

    pub fn iteration(&self) -> u64 {
        self.iteration
    }

    /// Current best `k` non-overlapping motifs.
    pub fn top_k(&self) -> MotifSet {
        self.queue
            .top_k_with_overlap(self.task.k, self.config.overlap_fraction)
    }

    pub fn snapshot(&self, elapsed: Duration) -> Snapshot {
        Snapshot {
            iteration: self.iteration,
            elapsed,
            evaluations: self.stats.evaluations,
            motifs: self.top_k(),
        }
    }

    /// Scores every particle at a valid position and records improvements.
    fn fitness_pass(&mut self) {
        let t = self.iteration;
        let Self {
            series,
            measure,
            space,
            swarm,
            queue,
            cache,
            stats,
            ..
        } = self;
        for p in swarm.particles.iter_mut() {
            let Some(m) = space.floor(&p.x) else {
                stats.invalid_positions += 1;
                continue;
            };
            let mut fresh = false;
            let d = cache.lookup_or_insert(m, || {
                fresh = true;
                measure.dissimilarity(series, &m)
            });
            if fresh {
                stats.evaluations += 1;
            } else {
                stats.cache_hits += 1;
            }
            if d < p.s {
                p.s = d;
                p.p = p.x;
                queue.push(Motif { coords: m, d });
                if d < swarm.s_star {
                    swarm.s_star = d;
                    swarm.t_update = t;
                }
            }
        }
    }

    fn update_pass(&mut self) {
        self.scores.clear();
        self.scores.extend(self.swarm.particles.iter().map(|p| p.s));
        for i in 0..self.kappa {
            let g = best_neighbor(i, &self.scores, &self.swarm.topology);
            let p_best = self.swarm.particles[g].p;

            let u1: Position = std::array::from_fn(|_| self.rng.random());
            let u2: Position = std::array::from_fn(|_| self.rng.random());
            let inertia = self
                .config
                .stochastic_inertia
                .then(|| self.rng.random::<f64>());

            let particle = &self.swarm.particles[i];
            let mut v = velocity_update(
                &particle.v,
                &particle.x,
                &particle.p,
                &p_best,
                &self.consts,
                &u1,
                &u2,
                inertia,
            );
            if self.config.clamp_velocity {
                v = clamp_velocity(&v, &self.v_range);
            }
            if self.config.rho > 0.0 {
                let redraw: [bool; 4] =
                    std::array::from_fn(|_| self.rng.random::<f64>() < self.config.rho);
                if redraw.iter().any(|&r| r) {
                    let fresh = random_velocity(&self.space, &mut self.rng);
                    for j in (0..4).filter(|&j| redraw[j]) {
                        v[j] = fresh[j];
                        self.stats.crazy_components += 1;
                    }
                }
            }
            self.stats.velocity_components += 4;

            let particle = &mut self.swarm.particles[i];
            for (x, dv) in particle.x.iter_mut().zip(&v) {
                *x += dv;
            }
            if self.config.equal_lengths {
                particle.x[3] = particle.x[1];
                v[3] = v[1];
            }
            particle.v = v;
        }
    }

    fn restart(&mut self) {
        self.swarm.particles = initialize_swarm(&self.space, self.kappa, &mut self.rng);
        self.swarm.s_star = f64::INFINITY;
        self.swarm.t_update = self.iteration;
        self.cache.clear();
        self.stats.restarts += 1;
    }

    /// Runs a single iteration: fitness, update, stagnation check.
    pub fn step(&mut self) {
        self.iteration += 1;
        self.fitness_pass();
        self.update_pass();
        if self.iteration - self.swarm.t_update >= self.tau {
            self.restart();
        }
    }

    /// Runs until `t_max` iterations or until the sink breaks. The sink sees
    /// a snapshot every `interval` iterations and after the last one.
    pub fn run<S: TraceSink>(&mut self, mut sink: S, interval: u64) -> RunOutcome {
        let start = Instant::now();
        let mut stopped_early = false;
        while self.iteration < self.task.t_max {
            self.step();
            let due = (interval > 0 && self.iteration.is_multiple_of(interval))
                || self.iteration == self.task.t_max;
            if due && sink.record(&self.snapshot(start.elapsed())).is_break() {
                stopped_early = self.iteration < self.task.t_max;
                break;
            }
        }
        RunOutcome {
            motifs: self.top_k(),
            iterations: self.iteration,
            stopped_early,
            stats: self.stats,
            elapsed: start.elapsed(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dissimilarity::Measure;
    use crate::series::generate_random_walk;
    use crate::trace::{NullSink, Recorder};

    #[test]
    fn adaptive_example_and_bounds() {
        assert_eq!(adaptive_defaults(10_000, 100, 10), (81, 1620));
        assert_eq!(adaptive_defaults(1, 1, 1), (52, 1040));
        assert_eq!(adaptive_defaults(0, 0, 0), (50, 1000));
        assert_eq!(adaptive_defaults(100_000_000, 10_000, 1000).0, 400);
        let mut last = 0;
        for n in (0..2_000_000).step_by(50_000) {
            let (k, t) = adaptive_defaults(n, 50, 5);
            assert!(k >= last && (50..=400).contains(&k) && t == 20 * k as u64);
            last = k;
        }
    }

    #[test]
    fn best_neighbor_ties_take_last() {
        let t = initialize_topology(TopologyKind::Ring, 5, &mut ChaCha8Rng::seed_from_u64(0)).unwrap();
        let inf = [f64::INFINITY; 5];
        // Particle 1 (index 0) scans neighbours [1, 4].
        assert_eq!(best_neighbor(0, &inf, &t), 4);
        let s = [1.0, 2.0, 9.0, 9.0, 3.0];
        assert_eq!(best_neighbor(0, &s, &t), 0);
        let s = [5.0, 1.0, 9.0, 9.0, 4.0];
        assert_eq!(best_neighbor(0, &s, &t), 1);
    }

    #[test]
    fn update_rule_examples() {
        let c = UpdateConstants::new(4.05, 0.5).unwrap();
        let zero = [0.0; 4];
        let p = [3.0, 4.0, 5.0, 6.0];
        let v = velocity_update(&zero, &p, &p, &p, &c, &[0.3; 4], &[0.7; 4], None);
        assert_eq!(v, zero);

        let v = velocity_update(
            &zero,
            &zero,
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
            &c,
            &[1.0; 4],
            &[1.0; 4],
            None,
        );
        for (got, want) in v.iter().zip([1.62, 1.62, 0.0, 0.0]) {
            assert!((got - want).abs() < 1e-12);
        }

        // Stochastic inertia: (1 - 2 * 0.2) * u with u = 0.5 gives 0.3.
        let v = velocity_update(&[1.0; 4], &zero, &zero, &zero, &c, &[0.0; 4], &[0.0; 4], Some(0.5));
        for got in v {
            assert!((got - 0.3).abs() < 1e-12);
        }
    }

    #[test]
    fn clamping_example() {
        let range = [50.0, 5.5, 50.0, 5.5];
        assert_eq!(
            clamp_velocity(&[80.0, 3.0, -90.0, -20.0], &range),
            [50.0, 3.0, -50.0, -5.5]
        );
        let space = SearchSpace::new(100, 10, 20).unwrap();
        assert_eq!(velocity_range(&space), range);
    }

    fn engine(t_max: u64, config: SwarmConfig) -> SwarmMotif<'static, Measure> {
        let z = Box::leak(Box::new(generate_random_walk(400, 9).unwrap()));
        let task = Task {
            w_min: 10,
            w_max: 20,
            k: 3,
            t_max,
        };
        SwarmMotif::new(z, Measure::ZNormEuclidean, task, config).unwrap()
    }

    #[test]
    fn zero_iterations_yield_nothing() {
        let out = engine(0, SwarmConfig::default()).run(NullSink, 1);
        assert!(out.motifs.is_empty());
        assert_eq!(out.iterations, 0);
        assert_eq!(out.stats.evaluations, 0);
    }

    #[test]
    fn deterministic_per_seed() {
        let cfg = SwarmConfig {
            seed: 17,
            ..Default::default()
        };
        let mut r1 = Recorder::default();
        let mut r2 = Recorder::default();
        let a = engine(600, cfg.clone()).run(&mut r1, 50);
        let b = engine(600, cfg).run(&mut r2, 50);
        assert_eq!(a.motifs, b.motifs);
        assert_eq!(a.stats, b.stats);
        let strip = |r: &Recorder| {
            r.snapshots
                .iter()
                .map(|s| (s.iteration, s.evaluations, s.motifs.clone()))
                .collect::<Vec<_>>()
        };
        assert_eq!(strip(&r1), strip(&r2));
    }

    #[test]
    fn trace_best_is_monotone() {
        let mut rec = Recorder::default();
        let out = engine(2000, SwarmConfig::default()).run(&mut rec, 10);
        assert_eq!(rec.snapshots.len(), 200);
        let best: Vec<f64> = rec.snapshots.iter().filter_map(|s| s.best()).collect();
        assert!(best.windows(2).all(|w| w[1] <= w[0]));
        assert!(out.motifs.len() == 3);
        assert!(rec.snapshots.windows(2).all(|w| w[0].iteration < w[1].iteration));
    }

    #[test]
    fn personal_bests_never_increase_between_restarts() {
        let mut e = engine(0, SwarmConfig::default());
        let mut prev: Vec<f64> = e.swarm().particles.iter().map(|p| p.s).collect();
        for _ in 0..3000 {
            let restarts = e.stats().restarts;
            e.step();
            let now: Vec<f64> = e.swarm().particles.iter().map(|p| p.s).collect();
            if e.stats().restarts == restarts {
                assert!(now.iter().zip(&prev).all(|(a, b)| a <= b));
                let min = now.iter().copied().fold(f64::INFINITY, f64::min);
                assert_eq!(e.swarm().s_star, min);
            }
            prev = now;
        }
    }

    #[test]
    fn restart_resets_swarm_but_keeps_queue() {
        let cfg = SwarmConfig {
            kappa: Some(10),
            tau: Some(5),
            ..Default::default()
        };
        let mut e = engine(0, cfg);
        let mut seen = 0;
        for _ in 0..500 {
            let before = e.queue().iter().copied().collect::<Vec<_>>();
            let restarts = e.stats().restarts;
            e.step();
            if e.stats().restarts > restarts {
                seen += 1;
                assert!(e.swarm().particles.iter().all(|p| p.s == f64::INFINITY));
                assert_eq!(e.swarm().s_star, f64::INFINITY);
                assert!(e.cache().is_empty());
                // Entries pushed during this step are still there, and so are
                // all the old ones unless evicted by capacity.
                assert!(e.queue().len() >= before.len().min(e.queue().capacity()));
                let best_before = before.first().map(|m| m.d).unwrap_or(f64::INFINITY);
                assert!(e.queue().best().unwrap().d <= best_before);
            }
        }
        assert!(seen > 0);
    }

    #[test]
    fn craziness_one_redraws_everything() {
        let cfg = SwarmConfig {
            rho: 1.0,
            ..Default::default()
        };
        let mut e = engine(0, cfg);
        for _ in 0..50 {
            let before = e.stats().crazy_components;
            e.step();
            assert_eq!(e.stats().crazy_components - before, 4 * e.kappa() as u64);
        }
        let cfg = SwarmConfig {
            rho: 0.0,
            ..Default::default()
        };
        let mut e = engine(100, cfg);
        e.run(NullSink, 0);
        assert_eq!(e.stats().crazy_components, 0);
    }

    #[test]
    fn equal_lengths_keep_particles_tied() {
        let cfg = SwarmConfig {
            equal_lengths: true,
            ..Default::default()
        };
        let mut e = engine(300, cfg);
        let out = e.run(NullSink, 0);
        assert!(e.swarm().particles.iter().all(|p| p.x[1] == p.x[3]));
        assert!(out.motifs.motifs.iter().all(|m| m.coords.w_a() == m.coords.w_b()));
    }

    #[test]
    fn rejects_bad_configs() {
        let z = generate_random_walk(100, 1).unwrap();
        let task = Task {
            w_min: 10,
            w_max: 20,
            k: 1,
            t_max: 10,
        };
        let bad = [
            SwarmConfig { phi: 4.0, ..Default::default() },
            SwarmConfig { kappa: Some(1), ..Default::default() },
            SwarmConfig { tau: Some(0), ..Default::default() },
            SwarmConfig { rho: 1.5, ..Default::default() },
            SwarmConfig { alpha: -0.1, ..Default::default() },
            SwarmConfig { kappa: Some(3), topology: TopologyKind::VonNeumann, ..Default::default() },
        ];
        for cfg in bad {
            assert!(SwarmMotif::new(&z, Measure::ZNormEuclidean, task, cfg).is_err());
        }
        let infeasible = Task { w_min: 60, w_max: 70, ..task };
        assert!(matches!(
            SwarmMotif::new(&z, Measure::ZNormEuclidean, infeasible, SwarmConfig::default()),
            Err(Error::Infeasible(_))
        ));
        let zero_k = Task { k: 0, ..task };
        assert!(SwarmMotif::new(&z, Measure::ZNormEuclidean, zero_k, SwarmConfig::default()).is_err());
    }
}
