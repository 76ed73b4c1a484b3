//! Random graph generators: Erdős–Rényi G(n, p) and Barabási–Albert
//! preferential attachment.
//!
//! Both are degree-degree uncorrelated enough for the threshold analysis at
//! desk scale (finite BA instances carry mild degree correlations; they are
//! used here regardless, matching common practice for these models).
//! Generation is single-threaded and fully determined by the seed.

use crate::error::{Error, Result};
use crate::graph::Network;
use crate::rng::{gen_index, rng_from_seed, uniform_f64_open};

/// Erdős–Rényi G(n, p) with `p = mean_degree / (n - 1)`.
///
/// Deterministic per seed. Requires `n >= 2` and `0 < mean_degree <= n - 1`
/// (`mean_degree = n - 1` forces the complete graph). Edges are drawn with the
/// geometric skipping method, so the cost is proportional to the edge count.
/// The skip lengths go through the platform's `ln`; the RNG stream itself is
/// platform-independent, so bit-exact graphs across platforms additionally
/// assume identical `ln` rounding (always true within one build).
pub fn gen_er(n: usize, mean_degree: f64, rng_seed: u64) -> Result<Network> {
    if n < 2 {
        return Err(Error::invalid(
            "n",
            format!("need at least 2 nodes, got {n}"),
        ));
    }
    if !mean_degree.is_finite() || mean_degree <= 0.0 {
        return Err(Error::invalid(
            "mean_degree",
            format!("must be positive, got {mean_degree}"),
        ));
    }
    if mean_degree > (n - 1) as f64 {
        return Err(Error::invalid(
            "mean_degree",
            format!("{mean_degree} exceeds n - 1 = {}", n - 1),
        ));
    }

    let p = mean_degree / (n - 1) as f64;
    let mut adjacency = vec![Vec::new(); n];
    let push_edge = |adj: &mut Vec<Vec<u32>>, u: usize, v: usize| {
        adj[u].push(v as u32);
        adj[v].push(u as u32);
    };

    if p >= 1.0 {
        for u in 0..n {
            for v in (u + 1)..n {
                push_edge(&mut adjacency, u, v);
            }
        }
        return Ok(Network::from_adjacency_unchecked(adjacency));
    }

    // Below f64 resolution 1 - p rounds to 1 and the geometric skip
    // degenerates; such a p cannot produce an edge at any feasible n.
    if 1.0 - p == 1.0 {
        return Ok(Network::from_adjacency_unchecked(adjacency));
    }

    // Geometric skipping over the n*(n-1)/2 candidate pairs. A skip past
    // every remaining pair means no further edges, so capping it keeps the
    // arithmetic in range for tiny p.
    let mut rng = rng_from_seed(rng_seed);
    let log_q = (1.0 - p).ln();
    let skip_cap = (n as f64) * (n as f64);
    let mut v: usize = 1;
    let mut w: i64 = -1;
    while v < n {
        let r = uniform_f64_open(&mut rng);
        let skip = (r.ln() / log_q).floor().clamp(0.0, skip_cap);
        w += 1 + skip as i64;
        while w >= v as i64 && v < n {
            w -= v as i64;
            v += 1;
        }
        if v < n {
            push_edge(&mut adjacency, w as usize, v);
        }
    }
    Ok(Network::from_adjacency_unchecked(adjacency))
}

/// Barabási–Albert preferential attachment.
///
/// Starts from a complete graph on `m + 1` nodes; each subsequent node
/// attaches to `m` distinct existing nodes chosen with probability
/// proportional to their current degree (duplicate targets are redrawn).
/// Edge count is exactly `m*(m+1)/2 + (n-m-1)*m`, so the mean degree is a
/// little under `2m`. Deterministic per seed. Requires `1 <= m < n`.
pub fn gen_ba(n: usize, m: usize, rng_seed: u64) -> Result<Network> {
    if m < 1 {
        return Err(Error::invalid("m", "attachment count must be at least 1"));
    }
    if m >= n {
        return Err(Error::invalid(
            "m",
            format!("attachment count {m} must be below node count {n}"),
        ));
    }

    let mut rng = rng_from_seed(rng_seed);
    let mut adjacency = vec![Vec::new(); n];
    // One entry per half-edge; uniform draws from this are degree-proportional.
    let mut endpoints: Vec<u32> = Vec::with_capacity(2 * (m * (m + 1) / 2 + (n - m - 1) * m));

    for u in 0..=m {
        for v in (u + 1)..=m {
            adjacency[u].push(v as u32);
            adjacency[v].push(u as u32);
            endpoints.push(u as u32);
            endpoints.push(v as u32);
        }
    }

    let mut targets: Vec<u32> = Vec::with_capacity(m);
    for new in (m + 1)..n {
        targets.clear();
        // Snapshot length: the new node's own edges must not bias this round.
        let pool = endpoints.len();
        while targets.len() < m {
            let candidate = endpoints[gen_index(&mut rng, pool)];
            if !targets.contains(&candidate) {
                targets.push(candidate);
            }
        }
        for &t in &targets {
            adjacency[new].push(t);
            adjacency[t as usize].push(new as u32);
            endpoints.push(new as u32);
            endpoints.push(t);
        }
    }

    Ok(Network::from_adjacency_unchecked(adjacency))
}

/// Exact edge count of [`gen_ba`] output: the seed clique plus `m` per node.
pub fn ba_edge_count(n: usize, m: usize) -> usize {
    m * (m + 1) / 2 + (n - m - 1) * m
}
