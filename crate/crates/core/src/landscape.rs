//! Two-dimensional slices of the dissimilarity landscape, for heatmaps.

use std::io::{self, Write};
use std::ops::RangeInclusive;

use crate::dissimilarity::Measure;
use crate::error::{Error, Result};
use crate::series::TimeSeries;
use crate::stats::format_significant;

/// Which pair of coordinates is held fixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fixed {
    /// Fix both starts; rows range over `w_a`, columns over `w_b`.
    Starts { a: usize, b: usize },
    /// Fix both lengths; rows range over `a`, columns over `b`.
    Lengths { w_a: usize, w_b: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Landscape {
    pub fixed: Fixed,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    /// `values[r][c]` is the dissimilarity at `(rows[r], cols[c])`.
    pub values: Vec<Vec<f64>>,
}

/// Evaluates the measure over a grid of the two free coordinates.
///
/// Segment pairs are scored as raw pairs: the non-overlap rule for motifs
/// is not applied, so the diagonal of a fixed-length slice is zero. Every
/// segment must lie inside the series.
pub fn slice_landscape(
    z: &TimeSeries,
    fixed: Fixed,
    rows: RangeInclusive<usize>,
    cols: RangeInclusive<usize>,
    measure: &Measure,
) -> Result<Landscape> {
    if rows.is_empty() || cols.is_empty() {
        return Err(Error::Config("empty landscape range".into()));
    }
    let rows: Vec<usize> = rows.collect();
    let cols: Vec<usize> = cols.collect();
    let values = rows
        .iter()
        .map(|&r| {
            cols.iter()
                .map(|&c| {
                    let (a, w_a, b, w_b) = match fixed {
                        Fixed::Starts { a, b } => (a, r, b, c),
                        Fixed::Lengths { w_a, w_b } => (r, w_a, c, w_b),
                    };
                    let x = z.segment(a, w_a)?;
                    let y = z.segment(b, w_b)?;
                    measure.between(x.values(), y.values())
                })
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Landscape {
        fixed,
        rows,
        cols,
        values,
    })
}

impl Landscape {
    /// CSV matrix: the first row holds column coordinates, the first column
    /// row coordinates; the corner names both axes.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        let corner = match self.fixed {
            Fixed::Starts { .. } => "w_a\\w_b",
            Fixed::Lengths { .. } => "a\\b",
        };
        write!(out, "{corner}")?;
        for c in &self.cols {
            write!(out, ",{c}")?;
        }
        writeln!(out)?;
        for (r, row) in self.rows.iter().zip(&self.values) {
            write!(out, "{r}")?;
            for v in row {
                write!(out, ",{}", format_significant(*v, 12))?;
            }
            writeln!(out)?;
        }
        Ok(())
    }
}
