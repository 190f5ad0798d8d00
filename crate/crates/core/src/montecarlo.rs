//! Seeded Monte Carlo estimates of gap probabilities.
//!
//! # Reproducibility
//!
//! Draws come from [`ChaCha8Rng`] (ChaCha with 8 rounds, `rand_chacha` 0.3).
//! Worker `w` of a run with seed `s` uses `ChaCha8Rng::seed_from_u64(s)` with
//! its stream set to `w`, so workers never share state and every stream is
//! fully determined by `(s, w)`. Trials are split as evenly as possible, the
//! first `trials % workers` workers taking one extra. Each draw is a partial
//! Fisher-Yates shuffle over `1..=n` using `gen_range` on `u32`, whose output
//! does not depend on the platform's pointer width.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gapcount::{DrawSpec, Subset, Topology};
use crate::oracle::min_gap;

/// Two-sided 95% standard normal quantile.
pub const Z_95: f64 = 1.959_963_984_540_054;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimConfig {
    pub spec: DrawSpec,
    pub k: u32,
    pub topology: Topology,
    pub trials: u64,
    pub seed: u64,
    /// Number of independent RNG streams the trials are split across.
    pub workers: u32,
}

impl SimConfig {
    pub fn new(spec: DrawSpec, k: u32, topology: Topology, trials: u64, seed: u64) -> Self {
        Self {
            spec,
            k,
            topology,
            trials,
            seed,
            workers: 1,
        }
    }

    pub fn with_workers(mut self, workers: u32) -> Self {
        self.workers = workers;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimReport {
    pub spec: DrawSpec,
    pub k: u32,
    pub topology: Topology,
    /// Trials in which some pair was closer than `k`.
    pub hits: u64,
    pub trials: u64,
    pub estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub seed: u64,
    pub workers: u32,
}

/// RNG for worker `worker` of a run seeded with `seed`.
pub fn worker_rng(seed: u64, worker: u32) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(worker as u64);
    rng
}

/// Reusable draw buffer. Partial Fisher-Yates produces a uniform ordered
/// sample from any starting arrangement of the pool, so the pool is not reset
/// between draws.
pub struct Sampler {
    pool: Vec<u32>,
    m: usize,
}

impl Sampler {
    pub fn new(spec: DrawSpec) -> Self {
        Self {
            pool: (1..=spec.n).collect(),
            m: spec.m as usize,
        }
    }

    /// Draws into `out`, sorted ascending.
    pub fn draw_into<R: Rng + ?Sized>(&mut self, rng: &mut R, out: &mut Vec<u32>) {
        let n = self.pool.len() as u32;
        for i in 0..self.m {
            let j = rng.gen_range(i as u32..n) as usize;
            self.pool.swap(i, j);
        }
        out.clear();
        out.extend_from_slice(&self.pool[..self.m]);
        out.sort_unstable();
    }
}

/// One uniform `m`-subset of `1..=n`.
pub fn sample_draw<R: Rng + ?Sized>(spec: DrawSpec, rng: &mut R) -> Subset {
    let mut out = Vec::with_capacity(spec.m as usize);
    Sampler::new(spec).draw_into(rng, &mut out);
    Subset::from_sorted_unchecked(out)
}

/// `count` independent draws from a single stream, e.g. a synthetic history.
pub fn draw_history(spec: DrawSpec, count: usize, seed: u64) -> Vec<Subset> {
    let mut rng = worker_rng(seed, 0);
    let mut sampler = Sampler::new(spec);
    let mut buf = Vec::with_capacity(spec.m as usize);
    (0..count)
        .map(|_| {
            sampler.draw_into(&mut rng, &mut buf);
            Subset::from_sorted_unchecked(buf.clone())
        })
        .collect()
}

/// Wilson score interval for `hits` successes out of `trials`, clamped to
/// `[0, 1]`.
pub fn wilson_interval(hits: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = hits as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    let low = if hits == 0 {
        0.0
    } else {
        (center - half).max(0.0).min(p)
    };
    let high = if hits == trials {
        1.0
    } else {
        (center + half).min(1.0).max(p)
    };
    (low, high)
}

fn run_worker(config: &SimConfig, worker: u32, trials: u64) -> u64 {
    let mut rng = worker_rng(config.seed, worker);
    let mut sampler = Sampler::new(config.spec);
    let mut buf = Vec::with_capacity(config.spec.m as usize);
    let mut hits = 0;
    for _ in 0..trials {
        sampler.draw_into(&mut rng, &mut buf);
        if min_gap(&buf[..], config.spec.n, config.topology).closer_than(config.k) {
            hits += 1;
        }
    }
    hits
}

/// Runs the configured trials. The report depends only on the config, not on
/// how many threads execute the workers.
pub fn simulate(config: &SimConfig) -> Result<SimReport> {
    if config.k == 0 {
        return Err(Error::InvalidK(0));
    }
    if config.trials == 0 || config.workers == 0 {
        return Err(Error::InvalidSimConfig);
    }
    let workers = config.workers as u64;
    let hits: u64 = (0..config.workers)
        .into_par_iter()
        .map(|w| {
            let share = config.trials / workers + u64::from((w as u64) < config.trials % workers);
            run_worker(config, w, share)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .sum();
    let (ci_low, ci_high) = wilson_interval(hits, config.trials, Z_95);
    Ok(SimReport {
        spec: config.spec,
        k: config.k,
        topology: config.topology,
        hits,
        trials: config.trials,
        estimate: hits as f64 / config.trials as f64,
        ci_low,
        ci_high,
        seed: config.seed,
        workers: config.workers,
    })
}
