//! Analytic threshold machinery.
//!
//! The capacity tolerance `alpha_c` below which the surviving giant component
//! vanishes is bracketed by two conditions:
//!
//! * cascades can spread at all only while `alpha <= (⟨k⟩ - 1) * delta`
//!   (an average failure then overloads at least one further neighbor), and
//! * survivors form a giant component once the absorbing nodes (nodes that
//!   never propagate failure) percolate, i.e. once the excess-degree-weighted
//!   absorbing probability `Σ k(k-1) p_k a_k / ⟨k⟩` reaches 1.
//!
//! `a_k` (probability that a degree-`k` node is absorbing) and `sigma`
//! (probability that a random neighbor is absorbing) solve a coupled pair of
//! self-consistency equations under the locally tree-like approximation:
//! `sigma = Σ_j j p_j a_j / ⟨k⟩`, with `a_k` the binomial mixture over the
//! number `m` of absorbing neighbors of the chance that the remaining
//! `k - m - 1` worst-case transfers stay within capacity.
//!
//! The scan for `alpha_c` starts at the spread bound and walks down in small
//! steps until the percolation criterion fails.

use crate::degree::DegreeStats;
use crate::error::{Error, Result};

/// Cumulative distribution function of a uniform initial load on
/// `[l_min, l_max]`; the default unit interval matches uniform loads on
/// `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformCdf {
    l_min: f64,
    l_max: f64,
}

impl Default for UniformCdf {
    fn default() -> Self {
        UniformCdf {
            l_min: 0.0,
            l_max: 1.0,
        }
    }
}

impl UniformCdf {
    pub fn new(l_min: f64, l_max: f64) -> Result<Self> {
        if !(l_min.is_finite() && l_max.is_finite()) || l_min >= l_max {
            return Err(Error::invalid(
                "l_min/l_max",
                format!("need l_min < l_max, got [{l_min}, {l_max}]"),
            ));
        }
        Ok(UniformCdf { l_min, l_max })
    }

    /// `P{L < l}`: 0 below `l_min`, linear in between, 1 above `l_max`.
    pub fn phi(&self, l: f64) -> f64 {
        if l <= self.l_min {
            0.0
        } else if l >= self.l_max {
            1.0
        } else {
            (l - self.l_min) / (self.l_max - self.l_min)
        }
    }
}

/// Largest tolerance at which large-scale cascades can still occur:
/// `(⟨k⟩ - 1) * delta`. Above it, an average failure overloads fewer than
/// one further neighbor and the cascade dies out.
pub fn cascade_bound(mean_degree: f64, delta: f64) -> Result<f64> {
    if !delta.is_finite() || delta <= 0.0 {
        return Err(Error::invalid(
            "delta",
            format!("must be positive, got {delta}"),
        ));
    }
    if !mean_degree.is_finite() || mean_degree <= 1.0 {
        return Err(Error::invalid(
            "mean_degree",
            format!("bound nonpositive at ⟨k⟩ = {mean_degree}; no cascade regime"),
        ));
    }
    Ok((mean_degree - 1.0) * delta)
}

/// Diagnostic variant of [`cascade_bound`] that weights neighbors by excess
/// degree instead of a plain degree average: `(⟨k²⟩/⟨k⟩ - 1) * delta`.
pub fn cascade_bound_excess(stats: &DegreeStats, delta: f64) -> Result<f64> {
    if !delta.is_finite() || delta <= 0.0 {
        return Err(Error::invalid(
            "delta",
            format!("must be positive, got {delta}"),
        ));
    }
    let ratio = stats.second_moment() / stats.mean_degree();
    if !ratio.is_finite() || ratio <= 1.0 {
        return Err(Error::invalid(
            "stats",
            format!("bound nonpositive at ⟨k²⟩/⟨k⟩ = {ratio}"),
        ));
    }
    Ok((ratio - 1.0) * delta)
}

/// ln(k!) table for 0..=k_max.
fn ln_factorials(k_max: usize) -> Vec<f64> {
    let mut table = vec![0.0; k_max + 1];
    for k in 1..=k_max {
        table[k] = table[k - 1] + (k as f64).ln();
    }
    table
}

/// `C(k, m) sigma^m (1 - sigma)^(k - m)`, stable for large `k` via logs.
fn binomial_term(k: usize, m: usize, sigma: f64, ln_fact: &[f64]) -> f64 {
    if sigma == 0.0 {
        return if m == 0 { 1.0 } else { 0.0 };
    }
    if sigma == 1.0 {
        return if m == k { 1.0 } else { 0.0 };
    }
    let ln = ln_fact[k] - ln_fact[m] - ln_fact[k - m]
        + m as f64 * sigma.ln()
        + (k - m) as f64 * (1.0 - sigma).ln();
    ln.exp()
}

fn validate_alpha_delta(alpha: f64, delta: f64) -> Result<()> {
    if !alpha.is_finite() || alpha <= 0.0 {
        return Err(Error::invalid(
            "alpha",
            format!("must be positive, got {alpha}"),
        ));
    }
    if !delta.is_finite() || delta <= 0.0 {
        return Err(Error::invalid(
            "delta",
            format!("must be positive, got {delta}"),
        ));
    }
    Ok(())
}

fn absorbing_probability_impl(
    k: usize,
    sigma: f64,
    alpha: f64,
    delta: f64,
    cdf: &UniformCdf,
    ln_fact: &[f64],
) -> f64 {
    if k == 0 {
        return 1.0;
    }
    // An inflow of (k - m - 1) transfers overloads even the largest load
    // once it reaches alpha * l_max, so those terms carry weight zero and
    // the sum can start at the first m whose inflow stays below that.
    let ratio = alpha * cdf.l_max / delta;
    let m_lo = if ratio < (k - 1) as f64 {
        k - 1 - ratio.floor() as usize
    } else {
        0
    };
    let mut acc = sigma.powi(k as i32);
    for m in m_lo..k {
        let survive = 1.0 - cdf.phi((k - m - 1) as f64 * delta / alpha);
        if survive <= 0.0 {
            continue;
        }
        acc += binomial_term(k, m, sigma, ln_fact) * survive;
    }
    acc.clamp(0.0, 1.0)
}

/// Probability that a degree-`k` node is absorbing, given the neighbor
/// absorbing probability `sigma`: the binomial sum over the number of
/// absorbing neighbors `m`, weighting each by the chance that the worst-case
/// remaining inflow `(k - m - 1) delta` stays within capacity. Clamped to
/// `[0, 1]` against round-off. Identically 1 for `k <= 1`.
pub fn absorbing_probability(
    k: usize,
    sigma: f64,
    alpha: f64,
    delta: f64,
    cdf: &UniformCdf,
) -> Result<f64> {
    validate_alpha_delta(alpha, delta)?;
    if !(0.0..=1.0).contains(&sigma) {
        return Err(Error::invalid(
            "sigma",
            format!("must lie in [0, 1], got {sigma}"),
        ));
    }
    let ln_fact = ln_factorials(k);
    Ok(absorbing_probability_impl(
        k, sigma, alpha, delta, cdf, &ln_fact,
    ))
}

/// Closed form of [`absorbing_probability`] for the unit-interval CDF,
/// valid when `k <= floor(alpha/delta) + 1` (every inflow stays on the
/// linear branch): `1 - (k-1)Δ/α + kσΔ/α - σ^k Δ/α`.
pub fn absorbing_probability_closed(k: usize, sigma: f64, alpha: f64, delta: f64) -> f64 {
    debug_assert!(alpha > 0.0 && delta > 0.0);
    debug_assert!(k as f64 <= (alpha / delta).floor() + 1.0);
    let r = delta / alpha;
    (1.0 - (k as f64 - 1.0) * r + k as f64 * sigma * r - sigma.powi(k as i32) * r).clamp(0.0, 1.0)
}

/// Fixed-point solver settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Stop once successive iterates differ by less than this.
    pub tol: f64,
    pub max_iter: usize,
    /// Damping factor in `(0, 1]`; the update is
    /// `sigma <- (1 - damping) sigma + damping * g(sigma)`.
    pub damping: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            tol: 1e-12,
            max_iter: 100_000,
            damping: 0.5,
        }
    }
}

/// Self-consistent solution of the absorbing-node equations at one tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct AbsorbingSolution {
    /// Probability that a random neighbor is absorbing.
    pub sigma_a: f64,
    /// Absorbing probability per degree, `0..=k_max`.
    pub a_k: Vec<f64>,
    pub alpha: f64,
    pub delta: f64,
    pub converged: bool,
    pub iterations: usize,
    /// Self-consistency defect `|sigma - Σ_j j p_j a_j(sigma) / ⟨k⟩|`.
    pub residual: f64,
}

/// Damped fixed-point iteration for the neighbor absorbing probability.
///
/// Iterates `sigma <- (1 - γ) sigma + γ Σ_j j p_j a_j(sigma) / ⟨k⟩` from
/// `sigma = 0`. The map is monotone, so this converges upward to the smallest
/// self-consistent solution; `sigma = 1` is always a (trivial) fixed point
/// and must not be used as the start. Non-convergence is reported through
/// the `converged` flag rather than an error so scans can react.
pub fn solve_sigma(
    stats: &DegreeStats,
    alpha: f64,
    delta: f64,
    cdf: &UniformCdf,
    opts: &SolverOptions,
) -> Result<AbsorbingSolution> {
    validate_alpha_delta(alpha, delta)?;
    if !(opts.damping > 0.0 && opts.damping <= 1.0) {
        return Err(Error::invalid(
            "damping",
            format!("must lie in (0, 1], got {}", opts.damping),
        ));
    }
    if stats.mean_degree() <= 0.0 {
        return Err(Error::invalid(
            "stats",
            "mean degree must be positive to define neighbor probabilities",
        ));
    }

    let p_k = stats.p_k();
    let mean = stats.mean_degree();
    let ln_fact = ln_factorials(stats.k_max());

    let neighbor_avg = |sigma: f64| -> f64 {
        let mut acc = 0.0;
        for (j, &p) in p_k.iter().enumerate() {
            if p == 0.0 || j == 0 {
                continue;
            }
            acc += j as f64 * p * absorbing_probability_impl(j, sigma, alpha, delta, cdf, &ln_fact);
        }
        acc / mean
    };

    let mut sigma = 0.0;
    let mut iterations = 0;
    let mut converged = false;
    while iterations < opts.max_iter {
        let next = (1.0 - opts.damping) * sigma + opts.damping * neighbor_avg(sigma);
        iterations += 1;
        let step = (next - sigma).abs();
        sigma = next;
        if step < opts.tol {
            converged = true;
            break;
        }
    }

    let residual = (sigma - neighbor_avg(sigma)).abs();
    let a_k = (0..=stats.k_max())
        .map(|k| absorbing_probability_impl(k, sigma, alpha, delta, cdf, &ln_fact))
        .collect();

    Ok(AbsorbingSolution {
        sigma_a: sigma,
        a_k,
        alpha,
        delta,
        converged,
        iterations,
        residual,
    })
}

/// Mean number of absorbing further-links of a node reached along a random
/// edge: `Σ_k k (k - 1) p_k a_k / ⟨k⟩`. Absorbing nodes percolate into a
/// giant sub-network exactly when this reaches 1.
pub fn branching_factor(stats: &DegreeStats, sol: &AbsorbingSolution) -> f64 {
    assert!(sol.converged, "branching factor needs a converged solution");
    assert_eq!(
        sol.a_k.len(),
        stats.k_max() + 1,
        "solution and stats disagree on k_max"
    );
    let acc: f64 = stats
        .p_k()
        .iter()
        .enumerate()
        .map(|(k, &p)| k as f64 * (k as f64 - 1.0) * p * sol.a_k[k])
        .sum();
    acc / stats.mean_degree()
}

/// Scan settings for [`find_alpha_c`].
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ScanOptions {
    /// Downward step; defaults to `delta / 10` when `None`.
    pub scan_step: Option<f64>,
    pub solver: SolverOptions,
}

/// Result of the critical-tolerance scan.
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdReport {
    /// First scanned tolerance at which absorbing nodes fail to percolate.
    pub alpha_c: f64,
    /// Scan start, `(⟨k⟩ - 1) * delta`.
    pub cascade_bound: f64,
    /// `(alpha, branching factor)` for every probe, in scan order.
    pub branching_trace: Vec<(f64, f64)>,
    /// Step actually used.
    pub step: f64,
    pub delta: f64,
    /// `(⟨k²⟩ - ⟨k⟩) / ⟨k⟩`, the branching factor with all `a_k = 1`.
    pub excess_degree_mean: f64,
    /// Set when the excess-degree mean is at most 1: the graph itself has no
    /// supercritical regime and the threshold is degenerate.
    pub marginal: bool,
}

/// Walks the tolerance down from the cascade bound until the absorbing-node
/// branching factor drops below 1; that tolerance is `alpha_c`.
///
/// Fails if the tolerance reaches zero with the branching factor still at or
/// above 1, or if the sigma solver stops converging at some probe.
pub fn find_alpha_c(
    stats: &DegreeStats,
    delta: f64,
    cdf: &UniformCdf,
    scan: &ScanOptions,
) -> Result<ThresholdReport> {
    let start = cascade_bound(stats.mean_degree(), delta)?;
    let step = match scan.scan_step {
        Some(s) if s.is_finite() && s > 0.0 => s,
        Some(s) => {
            return Err(Error::invalid(
                "scan_step",
                format!("must be positive, got {s}"),
            ))
        }
        None => delta / 10.0,
    };

    let mut trace = Vec::new();
    for i in 0.. {
        let alpha = start - i as f64 * step;
        if alpha <= 0.0 {
            return Err(Error::NoThreshold { start });
        }
        let sol = solve_sigma(stats, alpha, delta, cdf, &scan.solver)?;
        if !sol.converged {
            return Err(Error::SolverDiverged {
                alpha,
                residual: sol.residual,
                iterations: sol.iterations,
            });
        }
        let branching = branching_factor(stats, &sol);
        trace.push((alpha, branching));
        if branching < 1.0 {
            let excess = stats.excess_degree_mean();
            return Ok(ThresholdReport {
                alpha_c: alpha,
                cascade_bound: start,
                branching_trace: trace,
                step,
                delta,
                excess_degree_mean: excess,
                marginal: excess <= 1.0 + 1e-9,
            });
        }
    }
    unreachable!("scan loop exits by return");
}
