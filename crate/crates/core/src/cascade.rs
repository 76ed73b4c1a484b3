//! Synchronous overload cascade with local load sharing.
//!
//! Every node starts un-failed with an initial load `L_v` and a capacity
//! `C_v = (1 + alpha) * L_v`. After a set of seed nodes is failed, rounds
//! proceed synchronously: each node that failed in the previous round
//! transfers a fixed load `delta` to every neighbor that is un-failed at the
//! start of the round; once all of a round's transfers have landed, every
//! un-failed node whose load strictly exceeds its capacity fails. The process
//! halts when a round produces no new failures. A failed node transfers
//! exactly once and stops accounting load from then on.
//!
//! Transfers within a round accumulate before the overload check, so the
//! outcome does not depend on any iteration order.

use crate::components::giant_component;
use crate::error::{Error, Result};
use crate::graph::{AliveMask, Network};
use crate::rng::{rng_from_seed, sample_distinct, uniform_f64};

/// Initial loads plus the tolerance parameter; capacity is derived as
/// `(1 + alpha) * load` and never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadProfile {
    initial: Vec<f64>,
    alpha: f64,
}

impl LoadProfile {
    /// Wraps an arbitrary load vector. Requires `alpha > 0` (the capacity
    /// rule degenerates otherwise) and finite, nonnegative loads.
    pub fn new(initial: Vec<f64>, alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha <= 0.0 {
            return Err(Error::invalid(
                "alpha",
                format!("tolerance must be positive, got {alpha}"),
            ));
        }
        if initial.iter().any(|l| !l.is_finite() || *l < 0.0) {
            return Err(Error::invalid(
                "loads",
                "loads must be finite and nonnegative",
            ));
        }
        Ok(LoadProfile { initial, alpha })
    }

    /// Uniform i.i.d. loads on `[l_min, l_max)` with the given tolerance.
    pub fn uniform(n: usize, l_min: f64, l_max: f64, alpha: f64, rng_seed: u64) -> Result<Self> {
        Self::new(assign_loads(n, l_min, l_max, rng_seed)?, alpha)
    }

    pub fn len(&self) -> usize {
        self.initial.len()
    }

    pub fn is_empty(&self) -> bool {
        self.initial.is_empty()
    }

    pub fn initial(&self) -> &[f64] {
        &self.initial
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn capacity(&self, v: usize) -> f64 {
        (1.0 + self.alpha) * self.initial[v]
    }
}

/// Draws `n` i.i.d. uniform loads on `[l_min, l_max)`, deterministic per seed.
pub fn assign_loads(n: usize, l_min: f64, l_max: f64, rng_seed: u64) -> Result<Vec<f64>> {
    if !(l_min.is_finite() && l_max.is_finite()) || l_min >= l_max {
        return Err(Error::invalid(
            "l_min/l_max",
            format!("need l_min < l_max, got [{l_min}, {l_max}]"),
        ));
    }
    let mut rng = rng_from_seed(rng_seed);
    let span = l_max - l_min;
    Ok((0..n)
        .map(|_| l_min + span * uniform_f64(&mut rng))
        .collect())
}

/// How the initially failed nodes are chosen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeedSpec {
    /// Explicit node ids; must be distinct, in range and non-empty.
    Nodes(Vec<usize>),
    /// Draw this many distinct nodes uniformly, using the config's seed.
    RandomCount(usize),
}

/// Cascade run parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct CascadeConfig {
    /// Load transferred per failed-node/un-failed-neighbor pair.
    pub delta: f64,
    pub seeds: SeedSpec,
    /// Stream for random seed-node selection; unused with explicit seeds.
    pub rng_seed: u64,
}

impl CascadeConfig {
    /// Single random seed node, the smallest perturbation.
    pub fn single_seed(delta: f64, rng_seed: u64) -> Self {
        CascadeConfig {
            delta,
            seeds: SeedSpec::RandomCount(1),
            rng_seed,
        }
    }

    fn resolve_seeds(&self, node_count: usize) -> Result<Vec<usize>> {
        let seeds = match &self.seeds {
            SeedSpec::Nodes(nodes) => {
                let mut sorted = nodes.clone();
                sorted.sort_unstable();
                sorted.dedup();
                if sorted.len() != nodes.len() {
                    return Err(Error::invalid("seeds", "seed nodes must be distinct"));
                }
                if nodes.iter().any(|&v| v >= node_count) {
                    return Err(Error::invalid("seeds", "seed node out of range"));
                }
                nodes.clone()
            }
            SeedSpec::RandomCount(count) => {
                if *count > node_count {
                    return Err(Error::invalid(
                        "seed_count",
                        format!("{count} seeds requested from {node_count} nodes"),
                    ));
                }
                let mut rng = rng_from_seed(self.rng_seed);
                sample_distinct(&mut rng, node_count, *count)
            }
        };
        if seeds.is_empty() {
            return Err(Error::invalid("seeds", "seed set must not be empty"));
        }
        Ok(seeds)
    }
}

/// Final state of a cascade run.
#[derive(Debug, Clone, PartialEq)]
pub struct CascadeOutcome {
    failed: Vec<bool>,
    rounds: usize,
    giant_fraction: f64,
    failed_fraction: f64,
    final_load: Vec<f64>,
}

impl CascadeOutcome {
    pub fn failed(&self, v: usize) -> bool {
        self.failed[v]
    }

    pub fn failed_flags(&self) -> &[bool] {
        &self.failed
    }

    pub fn failed_count(&self) -> usize {
        self.failed.iter().filter(|&&f| f).count()
    }

    /// Redistribution rounds executed after seeding: rounds in which at
    /// least one transfer landed on an un-failed node.
    pub fn rounds(&self) -> usize {
        self.rounds
    }

    /// Largest connected component of un-failed nodes over total `N`.
    pub fn giant_fraction(&self) -> f64 {
        self.giant_fraction
    }

    pub fn failed_fraction(&self) -> f64 {
        self.failed_fraction
    }

    /// Load at halt for un-failed nodes; load at the moment of failure for
    /// failed nodes (they stop accounting once failed).
    pub fn final_load(&self) -> &[f64] {
        &self.final_load
    }

    pub fn alive_mask(&self) -> AliveMask {
        AliveMask::from_vec(self.failed.iter().map(|&f| !f).collect())
    }
}

/// Runs one cascade to steady state.
pub fn run_cascade(
    net: &Network,
    loads: &LoadProfile,
    cfg: &CascadeConfig,
) -> Result<CascadeOutcome> {
    let n = net.node_count();
    if loads.len() != n {
        return Err(Error::invalid(
            "loads",
            format!("{} loads for {n} nodes", loads.len()),
        ));
    }
    if !cfg.delta.is_finite() || cfg.delta <= 0.0 {
        return Err(Error::invalid(
            "delta",
            format!("transfer quantum must be positive, got {}", cfg.delta),
        ));
    }
    let seeds = cfg.resolve_seeds(n)?;

    let mut failed = vec![false; n];
    let mut load: Vec<f64> = loads.initial().to_vec();
    let capacity: Vec<f64> = (0..n).map(|v| loads.capacity(v)).collect();

    for &s in &seeds {
        failed[s] = true;
    }
    let mut frontier: Vec<u32> = seeds.iter().map(|&s| s as u32).collect();

    let mut rounds = 0usize;
    let mut touched: Vec<u32> = Vec::new();
    let mut stamp = vec![0u32; n];
    let mut epoch = 0u32;

    while !frontier.is_empty() {
        epoch += 1;
        touched.clear();
        for &u in &frontier {
            for &w in net.neighbors(u as usize) {
                let w = w as usize;
                if !failed[w] {
                    load[w] += cfg.delta;
                    if stamp[w] != epoch {
                        stamp[w] = epoch;
                        touched.push(w as u32);
                    }
                }
            }
        }
        if touched.is_empty() {
            break;
        }
        rounds += 1;
        frontier.clear();
        for &w in &touched {
            let w = w as usize;
            if load[w] > capacity[w] {
                failed[w] = true;
                frontier.push(w as u32);
            }
        }
    }

    let alive = AliveMask::from_vec(failed.iter().map(|&f| !f).collect());
    let giant = giant_component(net, &alive);
    let failed_count = n - alive.alive_count();

    Ok(CascadeOutcome {
        failed,
        rounds,
        giant_fraction: if n == 0 {
            0.0
        } else {
            giant.largest_size as f64 / n as f64
        },
        failed_fraction: if n == 0 {
            0.0
        } else {
            failed_count as f64 / n as f64
        },
        final_load: load,
    })
}

/// Flags nodes that can absorb the worst case of `degree - 1` incoming
/// transfers without overloading: `L_v + (k_v - 1) delta < (1 + alpha) L_v`.
/// Nodes of degree 0 or 1 always qualify; their failure cannot propagate.
pub fn classify_independent_absorbing(net: &Network, loads: &LoadProfile, delta: f64) -> Vec<bool> {
    let alpha = loads.alpha();
    (0..net.node_count())
        .map(|v| {
            let k = net.degree(v);
            k <= 1 || loads.initial()[v] > (k - 1) as f64 * delta / alpha
        })
        .collect()
}

/// Monte Carlo estimate of the fraction of degree-`k` nodes that behave as
/// absorbing nodes, over `trials` independent load assignments each followed
/// by a single-seed cascade.
///
/// A node counts as absorbing in a trial if it can take the worst-case
/// `(k - 1) delta` inflow without overloading, or if it ends the cascade
/// un-failed with every un-failed neighbor itself in that worst-case-proof
/// class. Entries are `None` for degrees with no nodes. This is a trend
/// check against the analytic probabilities, not a sharp estimator.
pub fn empirical_absorbing_fraction(
    net: &Network,
    alpha: f64,
    delta: f64,
    trials: usize,
    rng_seed: u64,
) -> Result<Vec<Option<f64>>> {
    let n = net.node_count();
    let k_max = net.max_degree();
    let mut hits = vec![0u64; k_max + 1];
    let mut totals = vec![0u64; k_max + 1];

    for trial in 0..trials {
        let loads = LoadProfile::uniform(
            n,
            0.0,
            1.0,
            alpha,
            crate::rng::derive_seed(rng_seed, trial as u64, 0),
        )?;
        let cfg =
            CascadeConfig::single_seed(delta, crate::rng::derive_seed(rng_seed, trial as u64, 1));
        let outcome = run_cascade(net, &loads, &cfg)?;
        let independent = classify_independent_absorbing(net, &loads, delta);

        for v in 0..n {
            let k = net.degree(v);
            totals[k] += 1;
            let absorbing = independent[v]
                || (!outcome.failed(v)
                    && net
                        .neighbors(v)
                        .iter()
                        .all(|&w| outcome.failed(w as usize) || independent[w as usize]));
            if absorbing {
                hits[k] += 1;
            }
        }
    }

    Ok(hits
        .iter()
        .zip(&totals)
        .map(|(&h, &t)| {
            if t == 0 {
                None
            } else {
                Some(h as f64 / t as f64)
            }
        })
        .collect())
}
