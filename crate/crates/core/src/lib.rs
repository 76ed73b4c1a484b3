//! Cascading overload failures with local load sharing.
//!
//! A node `v` carries an initial load `L_v` and a capacity
//! `C_v = (1 + alpha) * L_v`. When a node fails it sheds a fixed load `delta`
//! onto each un-failed neighbor; neighbors pushed past capacity fail in turn.
//! The observable is the giant-component fraction `G` of un-failed nodes in
//! steady state. For uniform loads on `[0, 1]` there is a critical tolerance
//! `alpha_c`: below it cascades shred the network (`G ≈ 0`), above it `G`
//! rises sharply toward 1.
//!
//! The crate provides:
//!
//! * seedable Erdős–Rényi and Barabási–Albert generators with degree
//!   statistics, components and edge-list I/O ([`gen_er`], [`gen_ba`],
//!   [`degree_stats`], [`giant_component`], [`save_edge_list`]);
//! * the cascade engine ([`run_cascade`]) plus absorbing-node classifiers;
//! * the analytic threshold: uniform-load CDF, absorbing-probability
//!   self-consistency, percolation branching factor and the `alpha_c` scan
//!   ([`solve_sigma`], [`branching_factor`], [`find_alpha_c`]);
//! * a deterministic Monte Carlo sweep runner with CSV and SVG output
//!   ([`run_sweep`], [`estimate_transition`]).
//!
//! Everything stochastic takes an explicit 64-bit seed and draws from a
//! ChaCha8 stream (see [`rng`]), so identical configurations reproduce
//! identical bytes regardless of worker count.

pub mod cascade;
pub mod components;
pub mod csv;
pub mod degree;
pub mod edgelist;
pub mod error;
pub mod generate;
pub mod graph;
pub mod plot;
pub mod rng;
pub mod sweep;
pub mod theory;

pub use cascade::{
    assign_loads, classify_independent_absorbing, empirical_absorbing_fraction, run_cascade,
    CascadeConfig, CascadeOutcome, LoadProfile, SeedSpec,
};
pub use components::{giant_component, ComponentLabels};
pub use degree::{degree_stats, DegreeStats};
pub use edgelist::{load_edge_list, save_edge_list};
pub use error::{Error, Result};
pub use generate::{ba_edge_count, gen_ba, gen_er};
pub use graph::{AliveMask, Network};
pub use sweep::{
    estimate_transition, reference_network, reference_stats, run_sweep, NetworkSpec, SweepConfig,
    SweepRecord, TransitionEstimate,
};
pub use theory::{
    absorbing_probability, absorbing_probability_closed, branching_factor, cascade_bound,
    cascade_bound_excess, find_alpha_c, solve_sigma, AbsorbingSolution, ScanOptions, SolverOptions,
    ThresholdReport, UniformCdf,
};
