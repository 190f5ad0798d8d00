//! Closed-form counts of gap-constrained draws on a line and on a ring, the
//! resulting probabilities, and the compress/expand renumbering bijection.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{binom, ExactProb};
use crate::oracle::{line_min_gap, MinGap};

/// A draw of `m` numbers out of `1..=n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DrawSpec {
    pub n: u32,
    pub m: u32,
}

impl DrawSpec {
    pub fn new(n: u32, m: u32) -> Result<Self> {
        if n == 0 || m > n {
            return Err(Error::InvalidSpec { n, m });
        }
        Ok(Self { n, m })
    }

    /// Number of equally likely outcomes, `C(n, m)`.
    pub fn outcomes(&self) -> BigUint {
        binom(self.n as i64, self.m as i64)
    }
}

impl fmt::Display for DrawSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.m, self.n)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Topology {
    /// `1..=n` on a segment; `1` and `n` are not adjacent.
    Line,
    /// `1..=n` on a circle; `n` is followed by `1`.
    Cycle,
}

impl fmt::Display for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Topology::Line => "line",
            Topology::Cycle => "cycle",
        })
    }
}

impl FromStr for Topology {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "line" => Ok(Topology::Line),
            "cycle" | "ring" | "circle" => Ok(Topology::Cycle),
            other => Err(format!(
                "unknown topology `{other}` (expected line or cycle)"
            )),
        }
    }
}

/// A strictly increasing sequence of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Subset(Vec<u32>);

impl Subset {
    /// Validates that `values` is strictly increasing within `1..=n`.
    pub fn new(values: Vec<u32>, n: u32) -> Result<Self> {
        if let Some(&v) = values.iter().find(|&&v| v == 0 || v > n) {
            return Err(Error::InvalidSubset(format!("{v} is outside 1..={n}")));
        }
        if let Some(w) = values.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSubset(format!(
                "values must be strictly increasing, found {} before {}",
                w[0], w[1]
            )));
        }
        Ok(Self(values))
    }

    pub(crate) fn from_sorted_unchecked(values: Vec<u32>) -> Self {
        debug_assert!(values.windows(2).all(|w| w[0] < w[1]));
        Self(values)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.0
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

fn check_k(k: u32) -> Result<()> {
    if k == 0 {
        Err(Error::InvalidK(k))
    } else {
        Ok(())
    }
}

/// `C(n - (k-1)(m-1), m)` over signed arguments, zero outside the binomial's
/// support.
fn line_formula(n: i64, m: i64, k: i64) -> BigUint {
    binom(n - (k - 1) * (m - 1), m)
}

/// Number of `m`-subsets of `1..=n` whose consecutive differences are all at
/// least `k`.
pub fn count_line(spec: DrawSpec, k: u32) -> Result<BigUint> {
    check_k(k)?;
    Ok(line_formula(spec.n as i64, spec.m as i64, k as i64))
}

/// Number of `m`-subsets of a ring of `n` positions whose circular gaps are
/// all at least `k`.
///
/// Splits on whether one of the positions `1..k` is chosen. At most one of
/// them can be; if it is, cutting it out together with `k - 1` neighbours on
/// each side leaves a line of `n - 2k + 1` positions for the other `m - 1`
/// numbers. If none is, dropping `1..k` leaves a line of `n - k + 1` positions
/// whose ends are automatically far enough apart across the cut.
pub fn count_cycle(spec: DrawSpec, k: u32) -> Result<BigUint> {
    check_k(k)?;
    let (n, m, k) = (spec.n as i64, spec.m as i64, k as i64);
    Ok(match m {
        0 => BigUint::one(),
        1 => BigUint::from(n as u64),
        _ if k == 1 => binom(n, m),
        _ => {
            BigUint::from((k - 1) as u64) * line_formula(n - 2 * k + 1, m - 1, k)
                + line_formula(n - k + 1, m, k)
        }
    })
}

/// The ring count as it is commonly displayed in closed form, with the
/// `(k - 1)` multiplicity of the first term dropped:
/// `C(n-k+1-(k-1)(m-1), m) + C(n-2k+1-(k-1)(m-2), m-1)`.
///
/// It agrees with [`count_cycle`] only at `k = 2`; for `k >= 3` it undercounts,
/// and at `k = 1` it exceeds `C(n, m)`. Kept so the discrepancy can be shown
/// side by side with the correct count.
pub fn count_cycle_displayed(spec: DrawSpec, k: u32) -> Result<BigUint> {
    check_k(k)?;
    let (n, m, k) = (spec.n as i64, spec.m as i64, k as i64);
    Ok(binom(n - k + 1 - (k - 1) * (m - 1), m) + binom(n - 2 * k + 1 - (k - 1) * (m - 2), m - 1))
}

/// `p_k` together with its complement `q_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GapProbability {
    pub spec: DrawSpec,
    pub k: u32,
    pub topology: Topology,
    /// Probability that two drawn numbers are at distance less than `k`.
    pub p: ExactProb,
    /// Probability that all drawn numbers are at least `k` apart.
    pub q: ExactProb,
    /// Set when `m < 2`: no pair exists, so `p` is vacuously zero.
    pub degenerate: bool,
}

/// Probability that a uniform draw contains two numbers at distance less
/// than `k` under the given topology.
pub fn gap_probability(spec: DrawSpec, k: u32, topology: Topology) -> Result<GapProbability> {
    check_k(k)?;
    let degenerate = spec.m < 2;
    let q = if degenerate || k == 1 {
        ExactProb::one()
    } else {
        let count = match topology {
            Topology::Line => count_line(spec, k)?,
            Topology::Cycle => count_cycle(spec, k)?,
        };
        ExactProb::new(count, spec.outcomes())?
    };
    Ok(GapProbability {
        spec,
        k,
        topology,
        p: q.complement(),
        q,
        degenerate,
    })
}

/// `1 - displayed/C(n, m)` using [`count_cycle_displayed`]. At `k = 1` (and for
/// `m < 2`) the displayed expression is not a count of anything, so the
/// convention `p = 0` applies there as everywhere else.
pub fn displayed_cycle_probability(spec: DrawSpec, k: u32) -> Result<ExactProb> {
    check_k(k)?;
    if spec.m < 2 || k == 1 {
        return Ok(ExactProb::zero());
    }
    let q = ExactProb::new(count_cycle_displayed(spec, k)?, spec.outcomes())?;
    Ok(q.complement())
}

/// Maps a subset with line gaps `>= k` onto an unconstrained subset by
/// subtracting `(i-1)(k-1)` from its `i`-th element.
pub fn compress(subset: &Subset, k: u32) -> Result<Subset> {
    check_k(k)?;
    if let MinGap::Gap(g) = line_min_gap(subset.as_slice()) {
        if g < k {
            return Err(Error::GapTooSmall { k });
        }
    }
    let step = k - 1;
    let values = subset
        .as_slice()
        .iter()
        .enumerate()
        .map(|(i, &v)| v - i as u32 * step)
        .collect();
    Ok(Subset::from_sorted_unchecked(values))
}

/// Inverse of [`compress`]: adds `(i-1)(k-1)` to the `i`-th element, giving a
/// subset of `1..=target_n` with line gaps `>= k`.
pub fn expand(subset: &Subset, k: u32, target_n: u32) -> Result<Subset> {
    check_k(k)?;
    let m = subset.len() as i64;
    let limit = target_n as i64 - (k as i64 - 1) * (m - 1).max(0);
    if let Some(&v) = subset.as_slice().iter().find(|&&v| v as i64 > limit) {
        return Err(Error::ExpandOutOfRange { value: v, limit });
    }
    let step = k - 1;
    let values = subset
        .as_slice()
        .iter()
        .enumerate()
        .map(|(i, &v)| v + i as u32 * step)
        .collect();
    Ok(Subset::from_sorted_unchecked(values))
}
