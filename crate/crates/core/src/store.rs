//! Candidate storage: the dissimilarity-ordered motif queue, greedy
//! non-overlapping top-k extraction and the visited-position cache.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, HashSet};

use crate::motif::{Motif, MotifCoords};

#[derive(Debug, Clone, Copy)]
struct Entry(Motif);

impl PartialEq for Entry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Entry {}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .d
            .total_cmp(&other.0.d)
            .then_with(|| self.0.coords.cmp(&other.0.coords))
    }
}

/// Ascending-`d` order with coordinates as tie-breaker; the order every
/// extractor in this crate scans in.
pub fn candidate_order(x: &Motif, y: &Motif) -> Ordering {
    Entry(*x).cmp(&Entry(*y))
}

/// An ordered list of mutually non-overlapping motifs, best first.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct MotifSet {
    pub motifs: Vec<Motif>,
    /// Number of requested motifs that could not be extracted.
    pub shortfall: usize,
}

impl MotifSet {
    pub fn len(&self) -> usize {
        self.motifs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.motifs.is_empty()
    }

    pub fn dissimilarities(&self) -> Vec<f64> {
        self.motifs.iter().map(|m| m.d).collect()
    }

    pub fn best(&self) -> Option<&Motif> {
        self.motifs.first()
    }
}

fn intersection(x: (usize, usize), y: (usize, usize)) -> usize {
    let lo = x.0.max(y.0);
    let hi = x.1.min(y.1);
    if lo <= hi {
        hi - lo + 1
    } else {
        0
    }
}

/// Whether any segment of `m1` overlaps any segment of `m2`.
///
/// With `max_overlap_fraction == 0` any shared sample counts; otherwise a
/// pair of segments overlaps when their intersection exceeds that fraction
/// of the shorter one.
pub fn overlaps(m1: &MotifCoords, m2: &MotifCoords, max_overlap_fraction: f64) -> bool {
    for s1 in m1.segments() {
        for s2 in m2.segments() {
            let shared = intersection(s1, s2);
            let shorter = (s1.1 - s1.0 + 1).min(s2.1 - s2.0 + 1);
            if shared > 0 && shared as f64 > max_overlap_fraction * shorter as f64 {
                return true;
            }
        }
    }
    false
}

/// Greedy scan in the given order, accepting candidates whose samples are
/// all unmarked in `occupied` (indexed by 1-based sample minus one). Marks
/// are cleared again before returning. Returns accepted positions.
fn greedy_occupancy<'a>(
    candidates: impl Iterator<Item = &'a Motif>,
    k: usize,
    occupied: &mut [bool],
) -> Vec<usize> {
    let mut accepted = Vec::with_capacity(k);
    let mut marked: Vec<MotifCoords> = Vec::with_capacity(k);
    if k > 0 {
        for (pos, m) in candidates.enumerate() {
            let segs = m.coords.segments();
            let free = segs
                .iter()
                .all(|&(s, e)| occupied[s - 1..e].iter().all(|o| !o));
            if free {
                for (s, e) in segs {
                    occupied[s - 1..e].fill(true);
                }
                marked.push(m.coords);
                accepted.push(pos);
                if accepted.len() == k {
                    break;
                }
            }
        }
    }
    for c in marked {
        for (s, e) in c.segments() {
            occupied[s - 1..e].fill(false);
        }
    }
    accepted
}

/// Greedy scan with pairwise overlap tests at a tolerated overlap fraction.
fn greedy_pairwise<'a>(
    candidates: impl Iterator<Item = &'a Motif>,
    k: usize,
    fraction: f64,
) -> Vec<usize> {
    let mut accepted: Vec<(usize, MotifCoords)> = Vec::with_capacity(k);
    if k > 0 {
        for (pos, m) in candidates.enumerate() {
            if accepted.iter().all(|(_, c)| !overlaps(c, &m.coords, fraction)) {
                accepted.push((pos, m.coords));
                if accepted.len() == k {
                    break;
                }
            }
        }
    }
    accepted.into_iter().map(|(p, _)| p).collect()
}

/// Greedy top-k non-overlapping extraction over candidates already sorted
/// ascending by `d`, using a boolean occupancy array of size `n`.
pub fn top_k_nonoverlapping<'a>(
    sorted: impl IntoIterator<Item = &'a Motif>,
    k: usize,
    n: usize,
) -> MotifSet {
    let mut occupied = vec![false; n];
    let candidates: Vec<&Motif> = sorted.into_iter().collect();
    let accepted = greedy_occupancy(candidates.iter().copied(), k, &mut occupied);
    let motifs: Vec<Motif> = accepted.into_iter().map(|i| *candidates[i]).collect();
    MotifSet {
        shortfall: k - motifs.len(),
        motifs,
    }
}

/// Bounded, deduplicating priority queue of motif candidates.
#[derive(Debug, Clone)]
pub struct MotifQueue {
    entries: BTreeSet<Entry>,
    members: HashSet<MotifCoords>,
    capacity: usize,
    k: usize,
    n: usize,
    occupied: Vec<bool>,
    /// Size of the greedy top-k of `entries`, valid while `Some`.
    greedy_len: Option<usize>,
}

impl MotifQueue {
    pub fn default_capacity(k: usize) -> usize {
        (20 * k).max(100)
    }

    /// Queue for a series of length `n` that must always be able to yield
    /// `k` non-overlapping motifs.
    pub fn new(n: usize, k: usize, capacity: usize) -> Self {
        Self {
            entries: BTreeSet::new(),
            members: HashSet::new(),
            capacity: capacity.max(k).max(1),
            k,
            n,
            occupied: vec![false; n],
            greedy_len: Some(0),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn iter(&self) -> impl Iterator<Item = &Motif> + '_ {
        self.entries.iter().map(|e| &e.0)
    }

    pub fn best(&self) -> Option<&Motif> {
        self.entries.first().map(|e| &e.0)
    }

    pub fn worst(&self) -> Option<&Motif> {
        self.entries.last().map(|e| &e.0)
    }

    fn greedy(&mut self) -> Vec<usize> {
        let accepted = greedy_occupancy(
            self.entries.iter().map(|e| &e.0),
            self.k,
            &mut self.occupied,
        );
        self.greedy_len = Some(accepted.len());
        accepted
    }

    /// Inserts a candidate. Returns whether the queue changed.
    ///
    /// Duplicate coordinates are ignored. When over capacity the worst
    /// entry that is not part of the current greedy top-k is evicted, so
    /// the best `k` non-overlapping candidates are never lost.
    pub fn push(&mut self, motif: Motif) -> bool {
        if self.members.contains(&motif.coords) {
            return false;
        }
        if self.entries.len() >= self.capacity {
            let worst = self.entries.last().map(|e| e.0);
            let saturated = match self.greedy_len {
                Some(len) => len,
                None => self.greedy().len(),
            } == self.k;
            if let Some(w) = worst {
                if saturated && candidate_order(&motif, &w) != Ordering::Less {
                    // Would be the new worst and cannot join the greedy set.
                    return false;
                }
            }
        }

        self.entries.insert(Entry(motif));
        self.members.insert(motif.coords);
        self.greedy_len = None;

        if self.entries.len() > self.capacity {
            let keep: HashSet<usize> = self.greedy().into_iter().collect();
            let last = self.entries.len() - 1;
            let victim = (0..=last)
                .rev()
                .find(|i| !keep.contains(i))
                .and_then(|i| self.entries.iter().nth(i).copied());
            if let Some(v) = victim {
                self.entries.remove(&v);
                self.members.remove(&v.0.coords);
                // Removing an entry the greedy scan rejected leaves the
                // accepted set unchanged.
            }
            return self.members.contains(&motif.coords);
        }
        true
    }

    /// The best `k` non-overlapping motifs currently stored. Callable at
    /// any point during a run.
    pub fn top_k(&self, k: usize) -> MotifSet {
        top_k_nonoverlapping(self.iter(), k, self.n)
    }

    /// Extraction that tolerates partial overlap up to `fraction` of the
    /// shorter segment. `fraction == 0` is the strict occupancy scan.
    pub fn top_k_with_overlap(&self, k: usize, fraction: f64) -> MotifSet {
        if fraction <= 0.0 {
            return self.top_k(k);
        }
        let all: Vec<&Motif> = self.iter().collect();
        let accepted = greedy_pairwise(all.iter().copied(), k, fraction);
        let motifs: Vec<Motif> = accepted.into_iter().map(|i| *all[i]).collect();
        MotifSet {
            shortfall: k - motifs.len(),
            motifs,
        }
    }
}

/// Bounded memo of dissimilarities keyed by floored coordinates.
#[derive(Debug, Clone)]
pub struct PositionCache {
    map: HashMap<MotifCoords, f64>,
    capacity: usize,
    hits: u64,
    misses: u64,
}

impl PositionCache {
    pub const DEFAULT_CAPACITY: usize = 1 << 20;

    pub fn new(capacity: usize) -> Self {
        Self {
            map: HashMap::new(),
            capacity,
            hits: 0,
            misses: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn hits(&self) -> u64 {
        self.hits
    }

    pub fn misses(&self) -> u64 {
        self.misses
    }

    pub fn contains(&self, key: &MotifCoords) -> bool {
        self.map.contains_key(key)
    }

    /// Returns the cached value for `key`, or computes, stores and returns
    /// it. With capacity 0 nothing is stored.
    pub fn lookup_or_insert(&mut self, key: MotifCoords, compute: impl FnOnce() -> f64) -> f64 {
        if let Some(&d) = self.map.get(&key) {
            self.hits += 1;
            return d;
        }
        self.misses += 1;
        let d = compute();
        if self.capacity == 0 {
            return d;
        }
        if self.map.len() >= self.capacity {
            if let Some(evict) = self.map.keys().next().copied() {
                self.map.remove(&evict);
            }
        }
        self.map.insert(key, d);
        d
    }

    pub fn clear(&mut self) {
        self.map.clear();
    }
}
