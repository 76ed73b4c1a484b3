//! Undirected simple graphs as adjacency lists.
//!
//! A [`Network`] is immutable once built: cascade state lives outside it, so a
//! single graph can be shared read-only across any number of concurrent runs.
//! Invariants enforced at construction: symmetric adjacency, no self-loops,
//! no parallel edges, all endpoints in `0..node_count`.

use std::collections::HashSet;

use crate::error::{Error, Result};

/// Immutable undirected simple graph. Neighbor lists are kept sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Network {
    adjacency: Vec<Vec<u32>>,
    edge_count: usize,
}

impl Network {
    /// Builds a network from an explicit edge list, validating simplicity.
    pub fn from_edges(node_count: usize, edges: &[(u32, u32)]) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); node_count];
        let mut seen: HashSet<(u32, u32)> = HashSet::with_capacity(edges.len());
        for &(u, v) in edges {
            if u as usize >= node_count || v as usize >= node_count {
                return Err(Error::invalid(
                    "edges",
                    format!("edge ({u}, {v}) out of range for {node_count} nodes"),
                ));
            }
            if u == v {
                return Err(Error::invalid("edges", format!("self-loop at node {u}")));
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(Error::invalid(
                    "edges",
                    format!("duplicate edge ({}, {})", key.0, key.1),
                ));
            }
            adjacency[u as usize].push(v);
            adjacency[v as usize].push(u);
        }
        Ok(Self::from_adjacency_unchecked(adjacency))
    }

    /// Wraps adjacency built by a generator. Sorts neighbor lists; the caller
    /// guarantees symmetry, simplicity and range.
    pub(crate) fn from_adjacency_unchecked(mut adjacency: Vec<Vec<u32>>) -> Self {
        let mut half_edges = 0usize;
        for list in &mut adjacency {
            list.sort_unstable();
            half_edges += list.len();
        }
        debug_assert!(half_edges.is_multiple_of(2));
        Network {
            adjacency,
            edge_count: half_edges / 2,
        }
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Mean degree `2E / N`.
    pub fn mean_degree(&self) -> f64 {
        if self.node_count() == 0 {
            return 0.0;
        }
        2.0 * self.edge_count as f64 / self.node_count() as f64
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adjacency[v]
    }

    /// Edges as `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, list)| {
            let u = u as u32;
            list.iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }
}

/// Per-node liveness flags; `true` means un-failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AliveMask {
    alive: Vec<bool>,
}

impl AliveMask {
    pub fn all_alive(node_count: usize) -> Self {
        AliveMask {
            alive: vec![true; node_count],
        }
    }

    pub fn from_vec(alive: Vec<bool>) -> Self {
        AliveMask { alive }
    }

    pub fn len(&self) -> usize {
        self.alive.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alive.is_empty()
    }

    pub fn is_alive(&self, v: usize) -> bool {
        self.alive[v]
    }

    pub fn kill(&mut self, v: usize) {
        self.alive[v] = false;
    }

    pub fn alive_count(&self) -> usize {
        self.alive.iter().filter(|&&a| a).count()
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.alive
    }
}
