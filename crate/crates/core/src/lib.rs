//! Exact probabilities that a uniform draw of `m` numbers from `1..=n`
//! contains two numbers closer than `k`, on a line or on a ring.
//!
//! Every count is available through independent routes that check each
//! other: closed-form binomials ([`gapcount`]), the two-index recurrence and
//! the generating-function series ([`recurrence`]), exhaustive enumeration
//! ([`oracle`]) and seeded sampling ([`montecarlo`]). On top of those sit the
//! even-money betting game ([`ev`]) and auditing of real draw histories
//! ([`ingest`]).

pub mod error;
pub mod ev;
pub mod exact;
pub mod gapcount;
pub mod ingest;
pub mod montecarlo;
pub mod oracle;
pub mod recurrence;

pub use error::{Error, Result};
pub use ev::{game_ev, Advantage, EvReport};
pub use exact::{binom, prob_ratio, ExactProb};
pub use gapcount::{
    compress, count_cycle, count_cycle_displayed, count_line, expand, gap_probability, DrawSpec,
    GapProbability, Subset, Topology,
};
pub use ingest::{audit, parse_draws, AuditReport, AuditRow, DrawRecord, ParseError};
pub use montecarlo::{sample_draw, simulate, SimConfig, SimReport};
pub use oracle::{enumerate_distribution, min_gap, GapDistribution, MinGap};
pub use recurrence::{crosscheck, dp_f, series_f, DpTable, SeriesTable};
