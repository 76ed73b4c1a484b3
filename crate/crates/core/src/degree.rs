//! Empirical and analytic degree distributions.

use crate::error::{Error, Result};
use crate::graph::Network;

/// Degree distribution summary: `p_k` is the fraction of nodes with degree
/// `k`, indexed from 0 to `k_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeStats {
    p_k: Vec<f64>,
    mean_degree: f64,
    second_moment: f64,
    k_max: usize,
}

impl DegreeStats {
    /// Empirical degree histogram of a network.
    pub fn from_network(net: &Network) -> Self {
        let n = net.node_count();
        let k_max = net.max_degree();
        let mut counts = vec![0usize; k_max + 1];
        for v in 0..n {
            counts[net.degree(v)] += 1;
        }
        let p_k: Vec<f64> = counts.iter().map(|&c| c as f64 / n as f64).collect();
        Self::from_pk_unchecked(p_k)
    }

    /// Builds stats from an explicit `p_k` vector. The vector must be
    /// nonnegative and sum to 1 within 1e-9; it is renormalized exactly.
    pub fn from_pk(p_k: Vec<f64>) -> Result<Self> {
        if p_k.is_empty() {
            return Err(Error::invalid("p_k", "empty distribution"));
        }
        if p_k.iter().any(|&p| !p.is_finite() || p < 0.0) {
            return Err(Error::invalid(
                "p_k",
                "entries must be finite and nonnegative",
            ));
        }
        let total: f64 = p_k.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::invalid(
                "p_k",
                format!("probabilities sum to {total}, not 1"),
            ));
        }
        let normalized = p_k.iter().map(|&p| p / total).collect();
        Ok(Self::from_pk_unchecked(normalized))
    }

    /// Poisson(`mean`) degree distribution, truncated once the tail falls
    /// below 1e-12 and renormalized. The analytic counterpart of an
    /// Erdős–Rényi instance's empirical histogram.
    pub fn poisson(mean: f64) -> Result<Self> {
        if !mean.is_finite() || mean <= 0.0 {
            return Err(Error::invalid(
                "mean",
                format!("must be positive, got {mean}"),
            ));
        }
        let mut p_k = Vec::new();
        let mut p = (-mean).exp();
        let mut k = 0usize;
        loop {
            p_k.push(p);
            if k as f64 > mean && p < 1e-12 {
                break;
            }
            k += 1;
            p *= mean / k as f64;
            if k > 10_000 {
                return Err(Error::invalid("mean", "distribution too wide to tabulate"));
            }
        }
        let total: f64 = p_k.iter().sum();
        for p in &mut p_k {
            *p /= total;
        }
        Ok(Self::from_pk_unchecked(p_k))
    }

    fn from_pk_unchecked(p_k: Vec<f64>) -> Self {
        let mean_degree: f64 = p_k.iter().enumerate().map(|(k, &p)| k as f64 * p).sum();
        let second_moment: f64 = p_k
            .iter()
            .enumerate()
            .map(|(k, &p)| (k as f64) * (k as f64) * p)
            .sum();
        let k_max = p_k.len() - 1;
        DegreeStats {
            p_k,
            mean_degree,
            second_moment,
            k_max,
        }
    }

    pub fn p_k(&self) -> &[f64] {
        &self.p_k
    }

    /// `⟨k⟩`
    pub fn mean_degree(&self) -> f64 {
        self.mean_degree
    }

    /// `⟨k²⟩`
    pub fn second_moment(&self) -> f64 {
        self.second_moment
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    /// Mean excess degree `(⟨k²⟩ - ⟨k⟩) / ⟨k⟩`: the expected number of
    /// further links of a node reached along a random edge.
    pub fn excess_degree_mean(&self) -> f64 {
        (self.second_moment - self.mean_degree) / self.mean_degree
    }
}

/// Empirical degree statistics of a network.
pub fn degree_stats(net: &Network) -> DegreeStats {
    DegreeStats::from_network(net)
}
