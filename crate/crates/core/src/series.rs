//! Time series container, CSV ingestion, segment access and the
//! per-segment preprocessing used by the dissimilarity measures.

use std::fs::File;
use std::path::Path;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};

/// An immutable, finite-valued time series.
///
/// All public indices are 1-based: sample `1` is `values()[0]`.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    values: Vec<f64>,
}

impl TimeSeries {
    pub const MIN_LEN: usize = 2;

    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < Self::MIN_LEN {
            return Err(Error::TooShort {
                required: Self::MIN_LEN,
                got: values.len(),
            });
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index: index + 1 });
        }
        Ok(Self { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// The segment `[start, start + len - 1]` (1-based, inclusive).
    pub fn segment(&self, start: usize, len: usize) -> Result<Segment<'_>> {
        let end = (start + len).saturating_sub(1);
        if start == 0 || len == 0 || end > self.len() {
            return Err(Error::SegmentOutOfRange {
                start,
                end,
                n: self.len(),
            });
        }
        Ok(Segment {
            start,
            values: &self.values[start - 1..end],
        })
    }
}

/// A borrowed view of `len` consecutive samples starting at `start`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment<'a> {
    start: usize,
    values: &'a [f64],
}

impl<'a> Segment<'a> {
    pub fn start(&self) -> usize {
        self.start
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Last sample index covered, inclusive.
    pub fn end(&self) -> usize {
        self.start + self.values.len() - 1
    }

    pub fn values(&self) -> &'a [f64] {
        self.values
    }
}

/// What to do with empty or non-numeric cells while loading a CSV column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MissingPolicy {
    /// Any missing or non-numeric cell is an error.
    #[default]
    Strict,
    /// Skip rows whose cell is missing.
    Drop,
    /// Fill gaps linearly between the nearest valid neighbours; leading and
    /// trailing gaps take the nearest valid value.
    Interpolate,
}

impl FromStr for MissingPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "strict" => Ok(Self::Strict),
            "drop" => Ok(Self::Drop),
            "interpolate" => Ok(Self::Interpolate),
            other => Err(Error::Config(format!("unknown missing-value policy {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CsvOptions {
    /// 0-based column index.
    pub column: usize,
    /// `None` detects a header from the first row.
    pub header: Option<bool>,
    pub missing: MissingPolicy,
    pub delimiter: Option<u8>,
}

const MISSING_TOKENS: &[&str] = &["", "na", "n/a", "nan", "null", "none", "?"];

fn is_missing_token(cell: &str) -> bool {
    let cell = cell.trim().to_ascii_lowercase();
    MISSING_TOKENS.contains(&cell.as_str())
}

fn parse_cell(cell: &str) -> Option<f64> {
    cell.trim().parse::<f64>().ok().filter(|v| v.is_finite())
}

/// Reads one column of a delimited text file as a time series.
pub fn load_csv(path: impl AsRef<Path>, options: &CsvOptions) -> Result<TimeSeries> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    read_column(file, options).map_err(|e| match e {
        Error::Csv { source, .. } => Error::Csv {
            path: path.to_path_buf(),
            source,
        },
        other => other,
    })
}

/// Same as [`load_csv`] over any reader.
pub fn read_column<R: std::io::Read>(reader: R, options: &CsvOptions) -> Result<TimeSeries> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .delimiter(options.delimiter.unwrap_or(b','))
        .from_reader(reader);

    let mut cells: Vec<Option<f64>> = Vec::new();
    for (row, record) in rdr.records().enumerate() {
        let record = record.map_err(|source| Error::Csv {
            path: Default::default(),
            source,
        })?;
        let row = row + 1;
        let cell = record.get(options.column).ok_or(Error::MissingColumn {
            row,
            column: options.column,
        })?;
        match parse_cell(cell) {
            Some(v) => cells.push(Some(v)),
            None => {
                let header_row = row == 1
                    && match options.header {
                        Some(h) => h,
                        None => !is_missing_token(cell),
                    };
                if header_row {
                    continue;
                }
                if options.missing == MissingPolicy::Strict || !is_missing_token(cell) {
                    return Err(Error::NonNumeric {
                        row,
                        cell: cell.to_string(),
                    });
                }
                cells.push(None);
            }
        }
    }

    let values = match options.missing {
        MissingPolicy::Strict | MissingPolicy::Drop => cells.into_iter().flatten().collect(),
        MissingPolicy::Interpolate => interpolate_gaps(&cells),
    };
    TimeSeries::new(values)
}

fn interpolate_gaps(cells: &[Option<f64>]) -> Vec<f64> {
    let known: Vec<(usize, f64)> = cells
        .iter()
        .enumerate()
        .filter_map(|(i, c)| c.map(|v| (i, v)))
        .collect();
    if known.is_empty() {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(cells.len());
    let mut next = 0;
    for i in 0..cells.len() {
        while next < known.len() && known[next].0 < i {
            next += 1;
        }
        let v = match (next.checked_sub(1).map(|p| known[p]), known.get(next)) {
            (_, Some(&(j, v))) if j == i => v,
            (Some((i0, v0)), Some(&(i1, v1))) => {
                v0 + (v1 - v0) * (i - i0) as f64 / (i1 - i0) as f64
            }
            (Some((_, v0)), None) => v0,
            (None, Some(&(_, v1))) => v1,
            (None, None) => unreachable!(),
        };
        out.push(v);
    }
    out
}

/// Gaussian random walk: `z_1 = 0`, `z_{i+1} = z_i + N(0, 1)`.
pub fn generate_random_walk(n: usize, seed: u64) -> Result<TimeSeries> {
    if n < TimeSeries::MIN_LEN {
        return Err(Error::TooShort {
            required: TimeSeries::MIN_LEN,
            got: n,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values = Vec::with_capacity(n);
    let mut z = 0.0;
    values.push(z);
    for _ in 1..n {
        let step: f64 = StandardNormal.sample(&mut rng);
        z += step;
        values.push(z);
    }
    TimeSeries::new(values)
}

/// Mean and population standard deviation.
pub(crate) fn mean_std(x: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mean = x.iter().sum::<f64>() / n;
    let var = x.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    (mean, var.sqrt())
}

/// Z-normalizes with the population standard deviation. A constant input
/// (σ negligible relative to its magnitude) maps to all zeros.
pub fn z_normalize(x: &[f64]) -> Vec<f64> {
    if x.is_empty() {
        return Vec::new();
    }
    let (mean, std) = mean_std(x);
    if std <= 1e-12 * mean.abs().max(1.0) {
        return vec![0.0; x.len()];
    }
    x.iter().map(|v| (v - mean) / std).collect()
}

/// Linear interpolation of `x` onto `target_len` evenly spaced points over
/// the same index range. Endpoints are reproduced exactly.
pub fn upsample(x: &[f64], target_len: usize) -> Result<Vec<f64>> {
    if x.is_empty() {
        return Err(Error::Empty);
    }
    if target_len < x.len() {
        return Err(Error::Downsample {
            from: x.len(),
            to: target_len,
        });
    }
    if target_len == x.len() {
        return Ok(x.to_vec());
    }
    let span = x.len() - 1;
    let steps = target_len - 1;
    let out = (0..target_len)
        .map(|j| {
            // Exact rational position j * span / steps.
            let num = j * span;
            let (i, rem) = (num / steps, num % steps);
            if rem == 0 {
                x[i]
            } else {
                let t = rem as f64 / steps as f64;
                x[i] + t * (x[i + 1] - x[i])
            }
        })
        .collect();
    Ok(out)
}
