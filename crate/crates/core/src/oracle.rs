//! Exhaustive ground truth: visit every `m`-subset of `1..=n` in
//! lexicographic order and tally subsets by their exact minimum gap.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{trim_decimal, ExactProb, DEFAULT_DIGITS};
use crate::gapcount::{
    count_cycle, count_cycle_displayed, count_line, displayed_cycle_probability, DrawSpec, Subset,
    Topology,
};

/// Default cap on the number of subsets one enumeration may visit.
pub const DEFAULT_BUDGET: u64 = 20_000_000;

/// Smallest distance between adjacent chosen numbers, if any pair exists.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MinGap {
    Gap(u32),
    NoPair,
}

impl MinGap {
    /// True when every pair is at least `k` apart (vacuously so without pairs).
    pub fn at_least(self, k: u32) -> bool {
        match self {
            MinGap::Gap(g) => g >= k,
            MinGap::NoPair => true,
        }
    }

    /// True when some pair is closer than `k`.
    pub fn closer_than(self, k: u32) -> bool {
        !self.at_least(k)
    }
}

impl AsRef<[u32]> for Subset {
    fn as_ref(&self) -> &[u32] {
        self.as_slice()
    }
}

pub(crate) fn line_min_gap(values: &[u32]) -> MinGap {
    values
        .windows(2)
        .map(|w| w[1] - w[0])
        .min()
        .map_or(MinGap::NoPair, MinGap::Gap)
}

/// Minimum gap of a sorted subset of `1..=n`. On the ring the wraparound gap
/// `n - (max - min)` is included.
pub fn min_gap<S: AsRef<[u32]> + ?Sized>(subset: &S, n: u32, topology: Topology) -> MinGap {
    let values = subset.as_ref();
    let line = line_min_gap(values);
    match (topology, line) {
        (Topology::Cycle, MinGap::Gap(g)) => {
            let wrap = n - (values[values.len() - 1] - values[0]);
            MinGap::Gap(g.min(wrap))
        }
        _ => line,
    }
}

/// Advances `c` to its lexicographic successor among increasing sequences
/// with entries at most `n`. Returns false once `c` is the last one.
fn next_combination(c: &mut [u32], n: u32) -> bool {
    let len = c.len() as u32;
    let Some(i) = (0..c.len())
        .rev()
        .find(|&i| c[i] < n - (len - 1 - i as u32))
    else {
        return false;
    };
    c[i] += 1;
    for j in i + 1..c.len() {
        c[j] = c[j - 1] + 1;
    }
    true
}

/// Calls `visit` on every `m`-subset of `1..=n` whose smallest element is
/// `first`, in lexicographic order. These ranges are contiguous in the full
/// lexicographic order.
fn for_each_with_first<F: FnMut(&[u32])>(n: u32, m: u32, first: u32, mut visit: F) {
    let mut c: Vec<u32> = (first..first + m).collect();
    loop {
        visit(&c);
        if !next_combination(&mut c[1..], n) {
            break;
        }
    }
}

/// Calls `visit` on every `m`-subset of `1..=n` exactly once, in
/// lexicographic order.
pub fn for_each_subset<F: FnMut(&[u32])>(n: u32, m: u32, mut visit: F) {
    if m > n {
        return;
    }
    if m == 0 {
        visit(&[]);
        return;
    }
    for first in 1..=n - m + 1 {
        for_each_with_first(n, m, first, &mut visit);
    }
}

#[derive(Clone, Debug)]
pub struct EnumOptions {
    pub budget: u64,
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
}

impl Default for EnumOptions {
    fn default() -> Self {
        Self {
            budget: DEFAULT_BUDGET,
            threads: None,
        }
    }
}

/// Exact counts of subsets by minimum gap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapDistribution {
    pub spec: DrawSpec,
    pub topology: Topology,
    /// Subsets whose minimum gap is exactly the key.
    pub counts: BTreeMap<u32, BigUint>,
    /// Subsets with fewer than two elements.
    pub no_pair: BigUint,
    pub total: BigUint,
}

impl GapDistribution {
    /// Number of subsets whose gaps are all at least `k`; `tail(1) == total`.
    pub fn tail(&self, k: u32) -> BigUint {
        self.counts.range(k..).map(|(_, c)| c).sum::<BigUint>() + &self.no_pair
    }
}

#[derive(Default)]
struct Tally {
    by_gap: Vec<u64>,
    no_pair: u64,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        if self.by_gap.len() < other.by_gap.len() {
            self.by_gap.resize(other.by_gap.len(), 0);
        }
        for (a, b) in self.by_gap.iter_mut().zip(other.by_gap) {
            *a += b;
        }
        self.no_pair += other.no_pair;
        self
    }
}

fn tally_range(spec: DrawSpec, topology: Topology, first: u32) -> Tally {
    let mut tally = Tally {
        by_gap: vec![0; spec.n as usize + 1],
        no_pair: 0,
    };
    for_each_with_first(spec.n, spec.m, first, |s| {
        match min_gap(s, spec.n, topology) {
            MinGap::Gap(g) => tally.by_gap[g as usize] += 1,
            MinGap::NoPair => tally.no_pair += 1,
        }
    });
    tally
}

/// Enumerates every subset with the default budget and thread pool.
pub fn enumerate_distribution(spec: DrawSpec, topology: Topology) -> Result<GapDistribution> {
    enumerate_distribution_with(spec, topology, &EnumOptions::default())
}

/// Enumerates every subset, partitioned by smallest element into contiguous
/// lexicographic ranges that are tallied independently and summed in order.
pub fn enumerate_distribution_with(
    spec: DrawSpec,
    topology: Topology,
    options: &EnumOptions,
) -> Result<GapDistribution> {
    let total = spec.outcomes();
    if total.to_u64().is_none_or(|t| t > options.budget) {
        return Err(Error::BudgetExceeded {
            count: total,
            budget: options.budget,
        });
    }
    let tally = if spec.m == 0 {
        Tally {
            by_gap: Vec::new(),
            no_pair: 1,
        }
    } else {
        let firsts: Vec<u32> = (1..=spec.n - spec.m + 1).collect();
        let run = || {
            firsts
                .par_iter()
                .map(|&first| tally_range(spec, topology, first))
                .reduce(Tally::default, Tally::merge)
        };
        match options.threads {
            Some(t) => rayon::ThreadPoolBuilder::new()
                .num_threads(t.max(1))
                .build()
                .expect("thread pool")
                .install(run),
            None => run(),
        }
    };
    let counts = tally
        .by_gap
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(g, &c)| (g as u32, BigUint::from(c)))
        .collect();
    let dist = GapDistribution {
        spec,
        topology,
        counts,
        no_pair: BigUint::from(tally.no_pair),
        total,
    };
    debug_assert_eq!(dist.tail(1), dist.total);
    Ok(dist)
}

/// Published probabilities for the 6-of-49 draw, indexed by `k - 1` for
/// `k = 1..=10`; every `k >= 10` gives 1.
pub const PUBLISHED_49_6_LINE: [&str; 10] = [
    "0", "0.495198", "0.766686", "0.903824", "0.966031", "0.990375", "0.99806", "0.999785",
    "0.999994", "1",
];
pub const PUBLISHED_49_6_CYCLE: [&str; 10] = [
    "0", "0.503203", "0.806793", "0.937157", "0.984296", "0.997447", "0.999821", "0.999999", "1",
    "1",
];

/// Published value for `(spec, k, topology)` when one exists.
pub fn published_value(spec: DrawSpec, k: u32, topology: Topology) -> Option<&'static str> {
    if spec != (DrawSpec { n: 49, m: 6 }) || k == 0 {
        return None;
    }
    let idx = (k as usize).min(10) - 1;
    Some(match topology {
        Topology::Line => PUBLISHED_49_6_LINE[idx],
        Topology::Cycle => PUBLISHED_49_6_CYCLE[idx],
    })
}

/// One row of the ring-count adjudication.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjudicationRow {
    pub k: u32,
    /// Subsets with all circular gaps `>= k`, by enumeration.
    pub oracle_count: BigUint,
    /// Same count from the case-split recurrence.
    pub recurrence_count: BigUint,
    /// The displayed closed form without the `(k - 1)` factor.
    pub displayed_count: BigUint,
    pub oracle_p: ExactProb,
    pub displayed_p: ExactProb,
    pub published: Option<&'static str>,
}

impl AdjudicationRow {
    pub fn oracle_agrees_with_recurrence(&self) -> bool {
        self.oracle_count == self.recurrence_count
    }

    /// Whether the enumerated probability, rounded to six decimals, equals
    /// the published value.
    pub fn published_reproduced(&self) -> Option<bool> {
        self.published
            .map(|p| trim_decimal(&self.oracle_p.to_decimal(DEFAULT_DIGITS)) == p)
    }

    /// Whether the displayed closed form, rounded to six decimals, equals the
    /// published value.
    pub fn displayed_matches_published(&self) -> Option<bool> {
        self.published
            .map(|p| trim_decimal(&self.displayed_p.to_decimal(DEFAULT_DIGITS)) == p)
    }
}

/// Compares a ring enumeration against the recurrence, the displayed closed
/// form and any published values, for `k = 1..=k_max`.
pub fn adjudicate_cycle(dist: &GapDistribution, k_max: u32) -> Result<Vec<AdjudicationRow>> {
    let spec = dist.spec;
    let total = dist.total.clone();
    (1..=k_max)
        .map(|k| {
            let oracle_count = dist.tail(k);
            let oracle_p = if spec.m < 2 {
                ExactProb::zero()
            } else {
                ExactProb::new(oracle_count.clone(), total.clone())?.complement()
            };
            Ok(AdjudicationRow {
                k,
                recurrence_count: count_cycle(spec, k)?,
                displayed_count: count_cycle_displayed(spec, k)?,
                displayed_p: displayed_cycle_probability(spec, k)?,
                published: published_value(spec, k, Topology::Cycle),
                oracle_count,
                oracle_p,
            })
        })
        .collect()
}

/// Tail sums of a line enumeration checked against the closed form for
/// every `k` in `1..=k_max`; returns the first disagreeing `k`.
pub fn first_line_mismatch(dist: &GapDistribution, k_max: u32) -> Result<Option<u32>> {
    for k in 1..=k_max {
        if dist.tail(k) != count_line(dist.spec, k)? {
            return Ok(Some(k));
        }
    }
    Ok(None)
}
