//! On-disk formats: motif result CSV and the anytime trace CSV.

use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;

use motif_swarm::stats::format_significant;
use motif_swarm::{Motif, MotifCoords, MotifSet, Snapshot};

use crate::error::HarnessError;

pub const MOTIF_HEADER: &str = "rank,a,w_a,b,w_b,d";
const SIG_DIGITS: usize = 12;

pub fn format_d(d: f64) -> String {
    format_significant(d, SIG_DIGITS)
}

pub fn write_motifs<W: Write>(mut out: W, set: &MotifSet) -> io::Result<()> {
    writeln!(out, "{MOTIF_HEADER}")?;
    for (rank, m) in set.motifs.iter().enumerate() {
        let c = m.coords;
        writeln!(
            out,
            "{},{},{},{},{},{}",
            rank + 1,
            c.a(),
            c.w_a(),
            c.b(),
            c.w_b(),
            format_d(m.d)
        )?;
    }
    Ok(())
}

pub fn parse_motifs<R: BufRead>(input: R) -> Result<MotifSet, HarnessError> {
    let mut lines = input.lines();
    match lines.next() {
        Some(Ok(h)) if h.trim() == MOTIF_HEADER => {}
        Some(Ok(h)) => {
            return Err(HarnessError::Format(format!(
                "expected header {MOTIF_HEADER:?}, found {h:?}"
            )))
        }
        Some(Err(e)) => return Err(e.into()),
        None => return Err(HarnessError::Format("empty motif file".into())),
    }
    let mut motifs = Vec::new();
    for (i, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let bad = |what: &str| HarnessError::Format(format!("line {}: {what}: {line:?}", i + 2));
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 6 {
            return Err(bad("expected 6 fields"));
        }
        let int = |s: &str| s.parse::<usize>().map_err(|_| bad("bad integer"));
        let rank = int(fields[0])?;
        if rank != motifs.len() + 1 {
            return Err(bad("ranks must be consecutive from 1"));
        }
        let coords = MotifCoords::new(int(fields[1])?, int(fields[2])?, int(fields[3])?, int(fields[4])?)
            .map_err(|_| bad("invalid motif"))?;
        let d: f64 = fields[5].parse().map_err(|_| bad("bad dissimilarity"))?;
        motifs.push(Motif::new(coords, d).map_err(|_| bad("invalid dissimilarity"))?);
    }
    Ok(MotifSet {
        motifs,
        shortfall: 0,
    })
}

pub fn read_motifs(path: &Path) -> Result<MotifSet, HarnessError> {
    let file = File::open(path).map_err(|e| HarnessError::io(path, e))?;
    parse_motifs(BufReader::new(file))
}

pub fn trace_header(k: usize) -> String {
    let mut h = String::from("iteration,elapsed_ms,evals");
    for i in 1..=k {
        h.push_str(&format!(",a_{i},w_a_{i},b_{i},w_b_{i},d_{i}"));
    }
    h
}

/// One trace record. `elapsed_ms` is left empty unless wall-clock
/// recording is requested, so traces stay reproducible by default.
pub fn trace_line(snapshot: &Snapshot, k: usize, record_time: bool) -> String {
    let elapsed = if record_time {
        snapshot.elapsed.as_millis().to_string()
    } else {
        String::new()
    };
    let mut line = format!("{},{},{}", snapshot.iteration, elapsed, snapshot.evaluations);
    for i in 0..k {
        match snapshot.motifs.motifs.get(i) {
            Some(m) => {
                let c = m.coords;
                line.push_str(&format!(
                    ",{},{},{},{},{}",
                    c.a(),
                    c.w_a(),
                    c.b(),
                    c.w_b(),
                    format_d(m.d)
                ));
            }
            None => line.push_str(",,,,,"),
        }
    }
    line
}

/// A parsed trace record.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRecord {
    pub iteration: u64,
    pub elapsed_ms: Option<u64>,
    pub evaluations: u64,
    pub dissimilarities: Vec<f64>,
}

pub fn parse_trace<R: BufRead>(input: R) -> Result<Vec<TraceRecord>, HarnessError> {
    let mut records = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        if i == 0 || line.trim().is_empty() {
            continue;
        }
        let bad = || HarnessError::Format(format!("trace line {}: {line:?}", i + 1));
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() < 3 || !(fields.len() - 3).is_multiple_of(5) {
            return Err(bad());
        }
        let dissimilarities = fields[3..]
            .chunks(5)
            .filter(|g| !g[4].is_empty())
            .map(|g| g[4].parse::<f64>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        records.push(TraceRecord {
            iteration: fields[0].parse().map_err(|_| bad())?,
            elapsed_ms: match fields[1] {
                "" => None,
                s => Some(s.parse().map_err(|_| bad())?),
            },
            evaluations: fields[2].parse().map_err(|_| bad())?,
            dissimilarities,
        });
    }
    Ok(records)
}
