//! Fixtures shared by the benchmarks.

use motif_swarm::{generate_random_walk, Motif, MotifCoords, TimeSeries};

pub fn walk(n: usize) -> TimeSeries {
    generate_random_walk(n, 17).expect("n >= 2")
}

/// `count` equal-length motifs over a series of length `n`, with
/// pseudo-random placement and dissimilarity.
pub fn candidates(n: usize, w: usize, count: usize) -> Vec<Motif> {
    let mut state = 0x9e37_79b9_7f4a_7c15u64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let a = 1 + (next() as usize) % (n - 2 * w - 1);
        let b = a + w + 1 + (next() as usize) % (n - a - 2 * w);
        let d = (next() % 1_000_000) as f64 / 1e6;
        if let Ok(coords) = MotifCoords::new(a, w, b, w) {
            out.push(Motif { coords, d });
        }
    }
    out
}
