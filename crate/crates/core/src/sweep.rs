//! Monte Carlo sweeps over the tolerance grid.
//!
//! Each `(alpha, realization)` pair is an independent work item with its own
//! derived seed, so sweeps parallelize freely and reproduce byte-identical
//! output for a given base seed regardless of worker count.
//!
//! Seed derivation: a work item uses `base ^ mix(mix(a) + realization)` with
//! `a = alpha_index + 1`, or `a = 0` in paired mode so that one network, one
//! load vector and one seed-node choice are reused across the whole grid for
//! each realization (which makes the failed set exactly monotone in alpha).

use std::path::PathBuf;
use std::sync::Arc;

use rayon::prelude::*;

use crate::cascade::{run_cascade, CascadeConfig, LoadProfile, SeedSpec};
use crate::degree::{degree_stats, DegreeStats};
use crate::edgelist::load_edge_list;
use crate::error::{Error, Result};
use crate::generate::{gen_ba, gen_er};
use crate::graph::Network;
use crate::rng::{derive_seed, rng_from_seed};
use rand_chacha::rand_core::RngCore;

/// Which network each realization runs on.
#[derive(Debug, Clone, PartialEq)]
pub enum NetworkSpec {
    Er { n: usize, mean_degree: f64 },
    Ba { n: usize, m: usize },
    File { path: PathBuf },
}

impl NetworkSpec {
    /// Kind tag used in sweep records and CSV.
    pub fn kind(&self) -> &'static str {
        match self {
            NetworkSpec::Er { .. } => "er",
            NetworkSpec::Ba { .. } => "ba",
            NetworkSpec::File { .. } => "file",
        }
    }
}

/// Full sweep configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub network: NetworkSpec,
    pub delta: f64,
    /// Strictly increasing, all positive.
    pub alphas: Vec<f64>,
    pub realizations: usize,
    pub seed_count: usize,
    pub base_seed: u64,
    /// Reuse one network + loads + seed choice per realization across the
    /// whole grid instead of drawing fresh randomness per grid point.
    pub paired: bool,
    /// Worker threads; 0 picks the rayon default.
    pub workers: usize,
}

/// Builds the grid `start, start + step, ...` up to and including `stop`
/// (with a little slack for float accumulation).
pub fn alpha_grid(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if !(start.is_finite() && stop.is_finite() && step.is_finite()) || step <= 0.0 {
        return Err(Error::invalid("alpha_step", "need a positive finite step"));
    }
    if start <= 0.0 {
        return Err(Error::invalid("alpha_start", "grid must start above 0"));
    }
    if stop < start {
        return Err(Error::invalid("alpha_stop", "grid end below its start"));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| start + i as f64 * step).collect())
}

/// One cascade realization at one grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub network_kind: String,
    pub n: usize,
    /// Target mean degree for generated networks (`2m` nominal for the
    /// preferential-attachment kind), realized mean degree for files.
    pub mean_degree: f64,
    pub delta: f64,
    pub alpha: f64,
    pub realization: usize,
    /// The derived per-run seed actually used.
    pub rng_seed: u64,
    pub giant_fraction: f64,
    pub failed_fraction: f64,
    pub rounds: usize,
}

fn validate(cfg: &SweepConfig) -> Result<()> {
    if cfg.alphas.is_empty() {
        return Err(Error::invalid("alphas", "empty tolerance grid"));
    }
    if cfg.alphas.iter().any(|&a| !a.is_finite() || a <= 0.0) {
        return Err(Error::invalid("alphas", "grid values must be positive"));
    }
    if cfg.alphas.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid("alphas", "grid must be strictly increasing"));
    }
    if cfg.realizations == 0 {
        return Err(Error::invalid("realizations", "need at least 1"));
    }
    if cfg.seed_count == 0 {
        return Err(Error::invalid("seed_count", "need at least 1 seed node"));
    }
    Ok(())
}

/// Runs the full grid × realization matrix and returns records ordered by
/// `(alpha index, realization)`.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRecord>> {
    validate(cfg)?;

    let preloaded: Option<Arc<Network>> = match &cfg.network {
        NetworkSpec::File { path } => Some(Arc::new(load_edge_list(path)?)),
        _ => None,
    };
    let (kind, n, mean_degree) = match (&cfg.network, &preloaded) {
        (NetworkSpec::Er { n, mean_degree }, _) => ("er", *n, *mean_degree),
        (NetworkSpec::Ba { n, m }, _) => ("ba", *n, 2.0 * *m as f64),
        (NetworkSpec::File { .. }, Some(net)) => ("file", net.node_count(), net.mean_degree()),
        (NetworkSpec::File { .. }, None) => unreachable!(),
    };

    let items: Vec<(usize, usize)> = (0..cfg.alphas.len())
        .flat_map(|i| (0..cfg.realizations).map(move |r| (i, r)))
        .collect();

    let run_item = |&(alpha_idx, realization): &(usize, usize)| -> Result<SweepRecord> {
        let alpha = cfg.alphas[alpha_idx];
        let lane = if cfg.paired { 0 } else { alpha_idx as u64 + 1 };
        let run_seed = derive_seed(cfg.base_seed, lane, realization as u64);
        let mut rng = rng_from_seed(run_seed);

        let network: Arc<Network> = match (&cfg.network, &preloaded) {
            (_, Some(net)) => Arc::clone(net),
            (NetworkSpec::Er { n, mean_degree }, None) => {
                Arc::new(gen_er(*n, *mean_degree, rng.next_u64())?)
            }
            (NetworkSpec::Ba { n, m }, None) => Arc::new(gen_ba(*n, *m, rng.next_u64())?),
            (NetworkSpec::File { .. }, None) => unreachable!(),
        };

        let loads = LoadProfile::uniform(network.node_count(), 0.0, 1.0, alpha, rng.next_u64())?;
        let cascade_cfg = CascadeConfig {
            delta: cfg.delta,
            seeds: SeedSpec::RandomCount(cfg.seed_count),
            rng_seed: rng.next_u64(),
        };
        let outcome = run_cascade(&network, &loads, &cascade_cfg)?;

        Ok(SweepRecord {
            network_kind: kind.to_string(),
            n,
            mean_degree,
            delta: cfg.delta,
            alpha,
            realization,
            rng_seed: run_seed,
            giant_fraction: outcome.giant_fraction(),
            failed_fraction: outcome.failed_fraction(),
            rounds: outcome.rounds(),
        })
    };

    // Indexed collect keeps (alpha, realization) order no matter how many
    // workers execute the items.
    if cfg.workers == 0 {
        items.par_iter().map(run_item).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.workers)
            .build()
            .map_err(|e| Error::invalid("workers", e.to_string()))?;
        pool.install(|| items.par_iter().map(run_item).collect())
    }
}

/// Simulated transition estimate: the smallest grid tolerance from which the
/// per-alpha quantile of `G` stays above `g_star` for the rest of the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionEstimate {
    pub alpha_sim: f64,
    pub g_star: f64,
    /// Quantile level in `[0, 1]`; 0.5 is the median.
    pub quantile: f64,
    /// Analytic threshold, attached by callers that computed one.
    pub alpha_c: Option<f64>,
}

/// Nearest-rank quantile of an unsorted sample.
fn quantile_of(values: &mut [f64], q: f64) -> f64 {
    values.sort_by(f64::total_cmp);
    let idx = ((values.len() - 1) as f64 * q).round() as usize;
    values[idx.min(values.len() - 1)]
}

/// Sustained-crossing transition detector over sweep records.
///
/// Groups records by grid tolerance, takes the `quantile` of `G` at each, and
/// returns the first tolerance whose quantile exceeds `g_star` and keeps
/// exceeding it at every larger grid point. A single spike that falls back
/// below `g_star` is not a transition.
pub fn estimate_transition(
    records: &[SweepRecord],
    g_star: f64,
    quantile: f64,
) -> Result<TransitionEstimate> {
    if records.is_empty() {
        return Err(Error::invalid("records", "no sweep records"));
    }
    if !(0.0..=1.0).contains(&quantile) {
        return Err(Error::invalid("quantile", "must lie in [0, 1]"));
    }

    // Group in grid order; records arrive ordered but don't rely on it.
    let mut alphas: Vec<f64> = records.iter().map(|r| r.alpha).collect();
    alphas.sort_by(f64::total_cmp);
    alphas.dedup();

    let mut quantiles = Vec::with_capacity(alphas.len());
    for &alpha in &alphas {
        let mut g: Vec<f64> = records
            .iter()
            .filter(|r| r.alpha == alpha)
            .map(|r| r.giant_fraction)
            .collect();
        quantiles.push(quantile_of(&mut g, quantile));
    }

    // Longest suffix staying above g_star.
    let mut start = alphas.len();
    while start > 0 && quantiles[start - 1] > g_star {
        start -= 1;
    }
    if start == alphas.len() {
        return Err(Error::NoTransition(format!(
            "quantile G never exceeds {g_star} on the grid"
        )));
    }

    Ok(TransitionEstimate {
        alpha_sim: alphas[start],
        g_star,
        quantile,
        alpha_c: None,
    })
}

/// One reference instance of the configured network, generated from a seed
/// derived off `base_seed`. Threshold analysis, the absorbing-node table and
/// sweeps then share a single instance per configuration.
pub fn reference_network(network: &NetworkSpec, base_seed: u64) -> Result<Network> {
    // Lane u64::MAX cannot collide with sweep lanes (alpha_index + 1).
    let seed = derive_seed(base_seed, u64::MAX, 0);
    match network {
        NetworkSpec::Er { n, mean_degree } => gen_er(*n, *mean_degree, seed),
        NetworkSpec::Ba { n, m } => gen_ba(*n, *m, seed),
        NetworkSpec::File { path } => load_edge_list(path),
    }
}

/// Degree statistics of the [`reference_network`] instance.
pub fn reference_stats(network: &NetworkSpec, base_seed: u64) -> Result<DegreeStats> {
    Ok(degree_stats(&reference_network(network, base_seed)?))
}
