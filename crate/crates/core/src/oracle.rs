//! Ground truth for small inputs: exhaustive top-k search and the
//! random-sampling reference distribution.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::time::{Duration, Instant};

use rand::Rng;
use rayon::prelude::*;

use crate::dissimilarity::Dissimilarity;
use crate::error::{Error, Result};
use crate::motif::{Motif, MotifCoords, SearchSpace};
use crate::series::TimeSeries;
use crate::stats::quantile;
use crate::store::{candidate_order, top_k_nonoverlapping, MotifSet};
use crate::swarm::sample_valid_motif;

pub const DEFAULT_BUDGET: u128 = 100_000_000;

#[derive(Debug, Clone)]
pub struct OracleResult {
    pub motifs: MotifSet,
    /// Dissimilarity invocations performed.
    pub evaluations: u64,
    pub elapsed: Duration,
}

#[derive(Clone, Copy)]
struct Ranked(Motif);

impl PartialEq for Ranked {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Ranked {}

impl PartialOrd for Ranked {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ranked {
    fn cmp(&self, other: &Self) -> Ordering {
        candidate_order(&self.0, &other.0)
    }
}

/// Keeps the `cap` smallest candidates seen.
struct Best {
    heap: BinaryHeap<Ranked>,
    cap: usize,
}

impl Best {
    fn new(cap: usize) -> Self {
        Self {
            heap: BinaryHeap::with_capacity(cap + 1),
            cap,
        }
    }

    fn offer(&mut self, m: Motif) {
        if self.heap.len() < self.cap {
            self.heap.push(Ranked(m));
        } else if let Some(top) = self.heap.peek() {
            if candidate_order(&m, &top.0) == Ordering::Less {
                self.heap.pop();
                self.heap.push(Ranked(m));
            }
        }
    }

    fn merge(mut self, other: Best) -> Best {
        for r in other.heap {
            self.offer(r.0);
        }
        self
    }
}

/// All valid motifs with first start `a`, in `(w_a, w_b, b)` order.
fn motifs_starting_at(space: &SearchSpace, a: usize) -> impl Iterator<Item = MotifCoords> + '_ {
    let n = space.n;
    (space.w_min..=space.w_max).flat_map(move |w_a| {
        (space.w_min..=space.w_max)
            .filter(move |&w_b| space.lengths_compatible(w_a, w_b) && a + w_a + w_b <= n)
            .flat_map(move |w_b| {
                (a + w_a + 1..=n + 1 - w_b)
                    .map(move |b| MotifCoords::new(a, w_a, b, w_b).expect("enumerated motif is valid"))
            })
    })
}

/// Exhaustive non-overlapping top-k over every motif in `space`.
///
/// Fails without evaluating anything if the space holds more than `budget`
/// motifs. The result does not depend on thread scheduling.
pub fn brute_force_topk<D: Dissimilarity>(
    z: &TimeSeries,
    measure: &D,
    space: &SearchSpace,
    k: usize,
    budget: u128,
) -> Result<OracleResult> {
    space.validate()?;
    if space.n != z.len() {
        return Err(Error::Config(format!(
            "search space is for n = {}, series has {}",
            space.n,
            z.len()
        )));
    }
    let needed = space.size();
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    if needed == 0 {
        return Err(Error::Infeasible("no valid motif in the search space".into()));
    }

    let start = Instant::now();
    let evaluations = AtomicU64::new(0);
    let a_max = space.n - 2 * space.w_min;
    let mut keep = (1usize << 12).max(256 * k);
    loop {
        let best = (1..=a_max)
            .into_par_iter()
            .fold(
                || Best::new(keep),
                |mut best, a| {
                    for m in motifs_starting_at(space, a) {
                        let d = measure.dissimilarity(z, &m);
                        evaluations.fetch_add(1, AtomicOrdering::Relaxed);
                        best.offer(Motif { coords: m, d });
                    }
                    best
                },
            )
            .reduce(|| Best::new(keep), Best::merge);

        let sorted: Vec<Motif> = best.heap.into_sorted_vec().into_iter().map(|r| r.0).collect();
        let motifs = top_k_nonoverlapping(&sorted, k, space.n);
        // The greedy scan over a sorted prefix matches the scan over the
        // full list as long as it completes inside the prefix.
        if motifs.shortfall == 0 || (sorted.len() as u128) >= needed {
            return Ok(OracleResult {
                motifs,
                evaluations: evaluations.into_inner(),
                elapsed: start.elapsed(),
            });
        }
        keep = keep.saturating_mul(8);
    }
}

/// Percentile summary of dissimilarities at randomly drawn motifs.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleReference {
    pub count: usize,
    pub min: f64,
    pub p5: f64,
    pub p50: f64,
    pub p95: f64,
    pub max: f64,
}

impl SampleReference {
    pub fn from_values(values: &[f64]) -> Option<Self> {
        let mut v = values.to_vec();
        v.sort_by(f64::total_cmp);
        Some(Self {
            count: v.len(),
            min: *v.first()?,
            p5: quantile(&v, 0.05)?,
            p50: quantile(&v, 0.50)?,
            p95: quantile(&v, 0.95)?,
            max: *v.last()?,
        })
    }
}

/// Dissimilarities of `count` motifs drawn with the swarm's initialization
/// law (rejecting invalid draws).
pub fn sample_dissimilarities<D: Dissimilarity, R: Rng + ?Sized>(
    z: &TimeSeries,
    measure: &D,
    space: &SearchSpace,
    count: usize,
    rng: &mut R,
) -> Vec<f64> {
    (0..count)
        .map(|_| {
            let m = sample_valid_motif(space, rng);
            measure.dissimilarity(z, &m)
        })
        .collect()
}

pub fn random_sample_reference<D: Dissimilarity, R: Rng + ?Sized>(
    z: &TimeSeries,
    measure: &D,
    space: &SearchSpace,
    count: usize,
    rng: &mut R,
) -> Result<SampleReference> {
    space.validate()?;
    if count == 0 {
        return Err(Error::Config("sample count must be at least 1".into()));
    }
    let values = sample_dissimilarities(z, measure, space, count, rng);
    Ok(SampleReference::from_values(&values).expect("count >= 1"))
}
