//! Motif coordinates and the feasible search space they live in.

use std::fmt;

use crate::error::{Error, Result};

/// Integer motif coordinates `(a, w_a, b, w_b)`, 1-based.
///
/// Construction enforces `a >= 1`, positive lengths and `a + w_a < b`, so
/// the two segments never overlap. Bounds that depend on the series and the
/// task (`b + w_b - 1 <= n`, the length range) are checked by
/// [`SearchSpace`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MotifCoords {
    a: usize,
    w_a: usize,
    b: usize,
    w_b: usize,
}

impl MotifCoords {
    pub fn new(a: usize, w_a: usize, b: usize, w_b: usize) -> Result<Self> {
        if a == 0 || w_a == 0 || w_b == 0 || a + w_a >= b {
            return Err(Error::InvalidMotif(format!("({a}, {w_a}, {b}, {w_b})")));
        }
        Ok(Self { a, w_a, b, w_b })
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn w_a(&self) -> usize {
        self.w_a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn w_b(&self) -> usize {
        self.w_b
    }

    /// Inclusive sample ranges of both segments.
    pub fn segments(&self) -> [(usize, usize); 2] {
        [
            (self.a, self.a + self.w_a - 1),
            (self.b, self.b + self.w_b - 1),
        ]
    }
}

impl fmt::Display for MotifCoords {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.a, self.w_a, self.b, self.w_b)
    }
}

/// A motif candidate: coordinates plus their dissimilarity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Motif {
    pub coords: MotifCoords,
    pub d: f64,
}

impl Motif {
    pub fn new(coords: MotifCoords, d: f64) -> Result<Self> {
        if !d.is_finite() || d < 0.0 {
            return Err(Error::InvalidMotif(format!("{coords} with d = {d}")));
        }
        Ok(Self { coords, d })
    }
}

/// The feasible region for one task: series length, length range and the
/// optional length-coupling constraints.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchSpace {
    pub n: usize,
    pub w_min: usize,
    pub w_max: usize,
    /// Force `w_a == w_b`.
    pub equal_lengths: bool,
    /// Bound on `|w_a - w_b|`.
    pub max_stretch: Option<usize>,
}

impl SearchSpace {
    pub fn new(n: usize, w_min: usize, w_max: usize) -> Result<Self> {
        let space = Self {
            n,
            w_min,
            w_max,
            equal_lengths: false,
            max_stretch: None,
        };
        space.validate()?;
        Ok(space)
    }

    pub fn with_equal_lengths(mut self, on: bool) -> Self {
        self.equal_lengths = on;
        self
    }

    pub fn with_max_stretch(mut self, stretch: Option<usize>) -> Self {
        self.max_stretch = stretch;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.w_min == 0 {
            return Err(Error::Config("w_min must be at least 1".into()));
        }
        if self.w_min > self.w_max {
            return Err(Error::Config(format!(
                "w_min ({}) exceeds w_max ({})",
                self.w_min, self.w_max
            )));
        }
        if self.n < 2 * self.w_min + 1 {
            return Err(Error::Infeasible(format!(
                "series of length {} cannot hold two non-overlapping segments of length {}",
                self.n, self.w_min
            )));
        }
        Ok(())
    }

    /// `w_max - w_min + 1`.
    pub fn w_delta(&self) -> usize {
        self.w_max - self.w_min + 1
    }

    pub fn lengths_compatible(&self, w_a: usize, w_b: usize) -> bool {
        if self.equal_lengths && w_a != w_b {
            return false;
        }
        match self.max_stretch {
            Some(s) => w_a.abs_diff(w_b) <= s,
            None => true,
        }
    }

    /// True iff the coordinates satisfy every bound of this space.
    pub fn contains(&self, m: &MotifCoords) -> bool {
        let in_range = |w: usize| (self.w_min..=self.w_max).contains(&w);
        in_range(m.w_a)
            && in_range(m.w_b)
            && m.b + m.w_b - 1 <= self.n
            && self.lengths_compatible(m.w_a, m.w_b)
    }

    /// Floors a continuous position component-wise and returns the motif it
    /// denotes, or `None` if it falls outside the space.
    pub fn floor(&self, x: &[f64; 4]) -> Option<MotifCoords> {
        let mut c = [0usize; 4];
        for (dst, &v) in c.iter_mut().zip(x) {
            // Also rejects NaN.
            if v.is_nan() || v < 1.0 || v >= (usize::MAX / 4) as f64 {
                return None;
            }
            *dst = v.floor() as usize;
        }
        let m = MotifCoords::new(c[0], c[1], c[2], c[3]).ok()?;
        self.contains(&m).then_some(m)
    }

    pub fn valid_position(&self, x: &[f64; 4]) -> bool {
        self.floor(x).is_some()
    }

    /// Number of distinct valid motifs.
    pub fn size(&self) -> u128 {
        let mut total: u128 = 0;
        for w_a in self.w_min..=self.w_max {
            for w_b in self.w_min..=self.w_max {
                if !self.lengths_compatible(w_a, w_b) || w_a + w_b >= self.n {
                    continue;
                }
                // a in 1..=m, and for each a there are m + 1 - a choices of b.
                let m = (self.n - w_a - w_b) as u128;
                total += m * (m + 1) / 2;
            }
        }
        total
    }
}
