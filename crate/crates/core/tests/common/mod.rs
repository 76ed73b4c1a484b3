//! Independent oracles shared by the integration and acceptance suites.
//!
//! Everything here is written against the plainest possible data structures
//! and re-derives results from scratch, deliberately sharing no code paths
//! with the library implementations it checks.

#![allow(dead_code)]

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Plain adjacency for oracle-side graphs.
pub type Adjacency = Vec<Vec<usize>>;

/// Outcome of the reference cascade.
pub struct RefOutcome {
    pub failed: Vec<bool>,
    pub rounds: usize,
    pub final_load: Vec<f64>,
    pub giant_fraction: f64,
}

/// Straightforward cascade simulator: full-node scans each round, no
/// frontier bookkeeping, breadth-first component search at the end.
/// Iterates nodes in descending order so any hidden order dependence in the
/// engine would show up as a mismatch.
pub fn reference_cascade(
    adj: &Adjacency,
    loads: &[f64],
    alpha: f64,
    delta: f64,
    seeds: &[usize],
) -> RefOutcome {
    let n = adj.len();
    let mut failed = vec![false; n];
    let mut load = loads.to_vec();
    let capacity: Vec<f64> = loads.iter().map(|&l| (1.0 + alpha) * l).collect();

    for &s in seeds {
        failed[s] = true;
    }
    let mut last_failed: Vec<usize> = seeds.to_vec();
    let mut rounds = 0;

    while !last_failed.is_empty() {
        let mut delivered = false;
        for w in (0..n).rev() {
            if failed[w] {
                continue;
            }
            for &u in &adj[w] {
                if last_failed.contains(&u) {
                    load[w] += delta;
                    delivered = true;
                }
            }
        }
        if !delivered {
            break;
        }
        rounds += 1;
        let mut newly: Vec<usize> = Vec::new();
        for w in (0..n).rev() {
            if !failed[w] && load[w] > capacity[w] {
                newly.push(w);
            }
        }
        for &w in &newly {
            failed[w] = true;
        }
        last_failed = newly;
    }

    let giant = largest_alive_component(adj, &failed);
    RefOutcome {
        rounds,
        final_load: load,
        giant_fraction: if n == 0 { 0.0 } else { giant as f64 / n as f64 },
        failed,
    }
}

/// Largest component among un-failed nodes, by breadth-first search.
pub fn largest_alive_component(adj: &Adjacency, failed: &[bool]) -> usize {
    let n = adj.len();
    let mut visited = vec![false; n];
    let mut best = 0;
    for start in 0..n {
        if failed[start] || visited[start] {
            continue;
        }
        let mut queue = std::collections::VecDeque::from([start]);
        visited[start] = true;
        let mut size = 0;
        while let Some(v) = queue.pop_front() {
            size += 1;
            for &w in &adj[v] {
                if !failed[w] && !visited[w] {
                    visited[w] = true;
                    queue.push_back(w);
                }
            }
        }
        best = best.max(size);
    }
    best
}

/// Random simple graph on `n` nodes: each of the `n(n-1)/2` pairs is an edge
/// with probability `p`. Returns plain adjacency plus the edge list.
pub fn random_graph(n: usize, p: f64, rng: &mut ChaCha8Rng) -> (Adjacency, Vec<(u32, u32)>) {
    let mut adj = vec![Vec::new(); n];
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if uniform(rng) < p {
                adj[u].push(v);
                adj[v].push(u);
                edges.push((u as u32, v as u32));
            }
        }
    }
    (adj, edges)
}

pub fn uniform(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Absorbing probability evaluated the slow, obvious way: exact binomial
/// coefficients by multiplicative recurrence, direct powers, explicit CDF.
pub fn naive_absorbing_probability(k: usize, sigma: f64, alpha: f64, delta: f64) -> f64 {
    let phi = |l: f64| l.clamp(0.0, 1.0);
    let mut total = sigma.powi(k as i32);
    for m in 0..k {
        let mut binom = 1.0;
        for i in 0..m {
            binom *= (k - i) as f64 / (i + 1) as f64;
        }
        let weight = binom * sigma.powi(m as i32) * (1.0 - sigma).powi((k - m) as i32);
        total += weight * (1.0 - phi((k - m - 1) as f64 * delta / alpha));
    }
    total
}

/// Smallest fixed point of `sigma = sum_j j p_j a_j(sigma) / <k>`, found by a
/// sign-change scan plus bisection, entirely independent of the library's
/// damped iteration.
pub fn bisect_sigma(p_k: &[f64], alpha: f64, delta: f64) -> f64 {
    let mean: f64 = p_k.iter().enumerate().map(|(k, &p)| k as f64 * p).sum();
    let g = |sigma: f64| -> f64 {
        p_k.iter()
            .enumerate()
            .map(|(j, &p)| j as f64 * p * naive_absorbing_probability(j, sigma, alpha, delta))
            .sum::<f64>()
            / mean
    };
    // h(0) <= 0; find the first grid cell where h turns nonnegative.
    let h = |s: f64| s - g(s);
    let steps = 2000;
    let mut lo = 0.0;
    let mut hi = 1.0;
    let mut found = false;
    for i in 1..=steps {
        let s = i as f64 / steps as f64;
        if h(s) >= 0.0 {
            lo = (i - 1) as f64 / steps as f64;
            hi = s;
            found = true;
            break;
        }
    }
    if !found {
        return 1.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if h(mid) >= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Nearest-rank quantile; sorts a copy.
pub fn quantile(values: &[f64], q: f64) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let idx = ((sorted.len() - 1) as f64 * q).round() as usize;
    sorted[idx.min(sorted.len() - 1)]
}
