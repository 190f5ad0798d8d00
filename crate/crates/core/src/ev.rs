//! Even-money bet on "some two drawn numbers are closer than `k`": the player
//! wins one unit when it happens and loses the unit stake otherwise.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::ExactProb;
use crate::gapcount::{gap_probability, DrawSpec, Topology};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Advantage {
    House,
    Player,
    Fair,
}

impl fmt::Display for Advantage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Advantage::House => "house",
            Advantage::Player => "player",
            Advantage::Fair => "fair",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvReport {
    pub spec: DrawSpec,
    pub k: u32,
    pub topology: Topology,
    pub win_prob: ExactProb,
    /// Player's expected gain per unit stake, `2p - 1`.
    pub ev_per_unit_stake: BigRational,
    /// `-ev`.
    pub house_edge: BigRational,
    pub advantaged_party: Advantage,
}

impl EvReport {
    /// Expected gain for a stake of `stake` units.
    pub fn ev_for_stake(&self, stake: &BigRational) -> BigRational {
        &self.ev_per_unit_stake * stake
    }
}

/// `2p - 1` for an even-money bet won with probability `p`.
pub fn even_money_ev(win_prob: &ExactProb) -> BigRational {
    win_prob.to_ratio() * BigRational::from_integer(BigInt::from(2)) - BigRational::one()
}

pub fn advantage_of(ev: &BigRational) -> Advantage {
    match ev.cmp(&BigRational::zero()) {
        Ordering::Less => Advantage::House,
        Ordering::Greater => Advantage::Player,
        Ordering::Equal => Advantage::Fair,
    }
}

pub fn game_ev(spec: DrawSpec, k: u32, topology: Topology) -> Result<EvReport> {
    if spec.m < 2 {
        return Err(Error::DegenerateDraw(spec.m));
    }
    let win_prob = gap_probability(spec, k, topology)?.p;
    let ev = even_money_ev(&win_prob);
    Ok(EvReport {
        spec,
        k,
        topology,
        house_edge: -ev.clone(),
        advantaged_party: advantage_of(&ev),
        ev_per_unit_stake: ev,
        win_prob,
    })
}
