//! Length-normalized segment dissimilarities, the fitness function of the
//! swarm.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::motif::MotifCoords;
use crate::series::{upsample, z_normalize, TimeSeries};

/// Anything that scores a motif. Implementations must be deterministic.
///
/// Callers guarantee that `m` lies inside the series.
pub trait Dissimilarity: Sync {
    fn dissimilarity(&self, series: &TimeSeries, m: &MotifCoords) -> f64;
}

impl<D: Dissimilarity + ?Sized> Dissimilarity for &D {
    fn dissimilarity(&self, series: &TimeSeries, m: &MotifCoords) -> f64 {
        (**self).dissimilarity(series, m)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Measure {
    /// Euclidean distance between z-normalized segments over their length;
    /// the shorter segment is linearly upsampled first.
    #[default]
    ZNormEuclidean,
    /// DTW between z-normalized segments over the longer length, with an
    /// optional Sakoe-Chiba band.
    NormDtw { band: Option<usize> },
}

impl Measure {
    pub fn name(&self) -> &'static str {
        match self {
            Measure::ZNormEuclidean => "zeuclid",
            Measure::NormDtw { .. } => "dtw",
        }
    }

    pub fn with_band(self, band: Option<usize>) -> Self {
        match self {
            Measure::NormDtw { .. } => Measure::NormDtw { band },
            other => other,
        }
    }

    /// Dissimilarity of two raw segments.
    pub fn between(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        match *self {
            Measure::ZNormEuclidean => znorm_euclidean(x, y),
            Measure::NormDtw { band } => norm_dtw(&z_normalize(x), &z_normalize(y), band),
        }
    }

    /// Dissimilarity of the motif `m` in `z`.
    pub fn evaluate(&self, z: &TimeSeries, m: &MotifCoords) -> Result<f64> {
        let x = z.segment(m.a(), m.w_a())?;
        let y = z.segment(m.b(), m.w_b())?;
        self.between(x.values(), y.values())
    }
}

impl Dissimilarity for Measure {
    fn dissimilarity(&self, series: &TimeSeries, m: &MotifCoords) -> f64 {
        self.evaluate(series, m)
            .unwrap_or_else(|e| panic!("dissimilarity of {m}: {e}"))
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "zeuclid" | "znorm-euclidean" | "euclidean" => Ok(Measure::ZNormEuclidean),
            "dtw" | "norm-dtw" => Ok(Measure::NormDtw { band: None }),
            _ => Err(Error::UnknownMeasure(s.to_string())),
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Euclidean distance between the z-normalized inputs divided by their
/// common length. Unequal lengths are reconciled by upsampling the shorter
/// normalized input to the longer one.
pub fn znorm_euclidean(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::Empty);
    }
    let mut xn = z_normalize(x);
    let mut yn = z_normalize(y);
    if xn.len() < yn.len() {
        xn = upsample(&xn, yn.len())?;
    } else if yn.len() < xn.len() {
        yn = upsample(&yn, xn.len())?;
    }
    let sum: f64 = xn.iter().zip(&yn).map(|(a, b)| (a - b) * (a - b)).sum();
    Ok(sum.sqrt() / xn.len() as f64)
}

/// Squared-cost DTW, square-rooted and divided by the longer length.
///
/// Inputs are used as given; [`Measure::between`] z-normalizes them first.
/// With a band `r`, cell `(i, j)` is reachable only if
/// `|i - j| <= max(r, |len(x) - len(y)|)`.
pub fn norm_dtw(x: &[f64], y: &[f64], band: Option<usize>) -> Result<f64> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::Empty);
    }
    Ok(dtw_cost(x, y, band).sqrt() / x.len().max(y.len()) as f64)
}

/// Accumulated squared cost of the optimal warping path.
fn dtw_cost(x: &[f64], y: &[f64], band: Option<usize>) -> f64 {
    // Rows iterate over the longer input so the buffers stay short.
    let (x, y) = if x.len() >= y.len() { (x, y) } else { (y, x) };
    let m = y.len();
    let window = band.map(|r| r.max(x.len() - m));

    let mut prev = vec![f64::INFINITY; m + 1];
    let mut curr = vec![f64::INFINITY; m + 1];
    prev[0] = 0.0;
    for (i, &xi) in x.iter().enumerate() {
        let (lo, hi) = match window {
            Some(w) => (i.saturating_sub(w), (i + w).min(m - 1)),
            None => (0, m - 1),
        };
        if window.is_some() {
            curr.fill(f64::INFINITY);
        } else {
            curr[0] = f64::INFINITY;
        }
        let mut left = curr[lo];
        let mut diag = prev[lo];
        for ((&yj, up), out) in y[lo..=hi]
            .iter()
            .zip(&prev[lo + 1..=hi + 1])
            .zip(&mut curr[lo + 1..=hi + 1])
        {
            let cost = (xi - yj) * (xi - yj);
            left = cost + diag.min(*up).min(left);
            diag = *up;
            *out = left;
        }
        std::mem::swap(&mut prev, &mut curr);
    }
    prev[m]
}
