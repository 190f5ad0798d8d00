//! Draw-history files and their audit against the exact probabilities.
//!
//! Format: UTF-8 text, one draw per line, `label,v1,v2,...,vm`. The label
//! holds no comma; values are base-10 integers in any order. Blank lines and
//! lines starting with `#` are skipped.

use std::fmt;
use std::io::BufRead;

use serde::Serialize;
use thiserror::Error;

use crate::error::{Error, Result};
use crate::exact::ExactProb;
use crate::gapcount::{gap_probability, DrawSpec, Subset, Topology};
use crate::montecarlo::{wilson_interval, Z_95};
use crate::oracle::{min_gap, MinGap};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DrawRecord {
    pub label: String,
    pub numbers: Subset,
}

impl fmt::Display for DrawRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)?;
        for v in self.numbers.as_slice() {
            write!(f, ",{v}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("malformed line: {0}")]
    MalformedLine(String),
    #[error("number {value} is outside 1..={n}")]
    OutOfRangeNumber { value: i64, n: u32 },
    #[error("number {0} appears more than once")]
    DuplicateNumber(u32),
    #[error("expected {expected} numbers, found {found}")]
    WrongCount { expected: u32, found: usize },
    #[error("read failed: {0}")]
    Io(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    /// 1-based line number in the input.
    pub line: usize,
    pub kind: ParseErrorKind,
}

fn parse_line(text: &str, spec: DrawSpec) -> std::result::Result<DrawRecord, ParseErrorKind> {
    let mut fields = text.split(',');
    let label = fields.next().unwrap_or_default().trim().to_string();
    let mut numbers = Vec::with_capacity(spec.m as usize);
    for field in fields {
        let field = field.trim();
        let value: i64 = field
            .parse()
            .map_err(|_| ParseErrorKind::MalformedLine(format!("`{field}` is not an integer")))?;
        if value < 1 || value > spec.n as i64 {
            return Err(ParseErrorKind::OutOfRangeNumber { value, n: spec.n });
        }
        numbers.push(value as u32);
    }
    if numbers.len() != spec.m as usize {
        return Err(ParseErrorKind::WrongCount {
            expected: spec.m,
            found: numbers.len(),
        });
    }
    numbers.sort_unstable();
    if let Some(w) = numbers.windows(2).find(|w| w[0] == w[1]) {
        return Err(ParseErrorKind::DuplicateNumber(w[0]));
    }
    Ok(DrawRecord {
        label,
        numbers: Subset::from_sorted_unchecked(numbers),
    })
}

/// Reads and validates every draw, preserving input order.
pub fn parse_draws<R: BufRead>(input: R, spec: DrawSpec) -> Result<Vec<DrawRecord>, ParseError> {
    let mut records = Vec::new();
    for (idx, line) in input.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|e| ParseError {
            line: line_no,
            kind: ParseErrorKind::Io(e.to_string()),
        })?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let record = parse_line(trimmed, spec).map_err(|kind| ParseError {
            line: line_no,
            kind,
        })?;
        records.push(record);
    }
    Ok(records)
}

/// One record per line, numbers ascending.
pub fn serialize_draws(records: &[DrawRecord]) -> String {
    records.iter().map(|r| format!("{r}\n")).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuditRow {
    pub k: u32,
    /// Draws containing two numbers closer than `k`.
    pub hits: u64,
    pub empirical_freq: f64,
    pub exact_p: ExactProb,
    pub deviation: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    /// Whether `exact_p` lies inside the Wilson 95% interval.
    pub exact_inside: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuditReport {
    pub spec: DrawSpec,
    pub topology: Topology,
    pub draws: usize,
    pub rows: Vec<AuditRow>,
}

/// Compares the frequency of close pairs in `records` with the exact
/// probabilities for `k = 1..=k_max`.
pub fn audit(
    records: &[DrawRecord],
    spec: DrawSpec,
    topology: Topology,
    k_max: u32,
) -> Result<AuditReport> {
    if records.is_empty() {
        return Err(Error::EmptyHistory);
    }
    if k_max == 0 {
        return Err(Error::InvalidK(0));
    }
    let gaps: Vec<MinGap> = records
        .iter()
        .map(|r| min_gap(&r.numbers, spec.n, topology))
        .collect();
    let draws = records.len() as u64;
    let rows = (1..=k_max)
        .map(|k| {
            let hits = gaps.iter().filter(|g| g.closer_than(k)).count() as u64;
            let exact_p = gap_probability(spec, k, topology)?.p;
            let empirical_freq = hits as f64 / draws as f64;
            let (ci_low, ci_high) = wilson_interval(hits, draws, Z_95);
            let p = exact_p.to_f64();
            Ok(AuditRow {
                k,
                hits,
                empirical_freq,
                deviation: (empirical_freq - p).abs(),
                ci_low,
                ci_high,
                exact_inside: ci_low <= p && p <= ci_high,
                exact_p,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AuditReport {
        spec,
        topology,
        draws: records.len(),
        rows,
    })
}
