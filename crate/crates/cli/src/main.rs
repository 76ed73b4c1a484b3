//! `loadshare`: cascading overload failures on networks.
//!
//! Subcommands: `gen` (write an edge list), `cascade` (single run),
//! `sweep` (tolerance grid to CSV/SVG), `threshold` (analytic critical
//! tolerance, optionally next to a simulated estimate), `absorbing`
//! (empirical vs analytic absorbing-node fractions).
//!
//! Exit codes: 0 success, 2 configuration error, 3 no transition or no
//! threshold found, 4 I/O error.

mod config;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use loadshare::sweep::alpha_grid;
use loadshare::{
    cascade_bound_excess, degree_stats, estimate_transition, find_alpha_c, gen_ba, gen_er,
    reference_network, run_cascade, run_sweep, save_edge_list, solve_sigma, CascadeConfig,
    DegreeStats, Error as CoreError, LoadProfile, Network, NetworkSpec, ScanOptions, SeedSpec,
    SolverOptions, SweepConfig, ThresholdReport, UniformCdf,
};

use config::FileConfig;

// ── errors and exit codes ───────────────────────────────────────────────

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, bad config file, bad input data. Exit 2.
    Config(String),
    /// Threshold scan or transition estimate came up empty. Exit 3.
    NoResult(String),
    /// Filesystem trouble. Exit 4.
    Io(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "config error: {msg}"),
            CliError::NoResult(msg) => write!(f, "{msg}"),
            CliError::Io(msg) => write!(f, "i/o error: {msg}"),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::NoResult(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(err: CoreError) -> Self {
        match err {
            CoreError::Io(e) => CliError::Io(e.to_string()),
            CoreError::NoThreshold { .. }
            | CoreError::NoTransition(_)
            | CoreError::SolverDiverged { .. } => CliError::NoResult(err.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }
}

// ── command line surface ────────────────────────────────────────────────

#[derive(Parser)]
#[command(
    name = "loadshare",
    version,
    about = "Cascading overload failures with local load sharing"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a network and write it as an edge list
    Gen(GenArgs),
    /// Run a single cascade and print the outcome
    Cascade(CascadeArgs),
    /// Sweep a tolerance grid over many realizations to CSV (and SVG)
    Sweep(SweepArgs),
    /// Compute the analytic critical tolerance, optionally with a
    /// simulated estimate next to it
    Threshold(ThresholdArgs),
    /// Tabulate empirical vs analytic absorbing-node fractions by degree
    Absorbing(AbsorbingArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum NetKindArg {
    Er,
    Ba,
    File,
}

#[derive(Args)]
struct NetFlags {
    /// Network kind
    #[arg(long, value_enum)]
    net: Option<NetKindArg>,
    /// Node count for generated networks
    #[arg(long)]
    n: Option<usize>,
    /// Target mean degree (er; for ba used as 2m when --m is absent)
    #[arg(long = "k-avg")]
    k_avg: Option<f64>,
    /// Attachments per node (ba)
    #[arg(long)]
    m: Option<usize>,
    /// Edge-list path, required with --net file
    #[arg(value_name = "GRAPH")]
    graph: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    net: NetFlags,
    /// Generator seed
    #[arg(long = "rng-seed")]
    rng_seed: Option<u64>,
    /// Output edge-list path
    #[arg(long)]
    out: Option<PathBuf>,
    /// Key-value config file; flags override it
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct CascadeArgs {
    #[command(flatten)]
    net: NetFlags,
    /// Transferred load per failed neighbor
    #[arg(long)]
    delta: Option<f64>,
    /// Capacity tolerance
    #[arg(long)]
    alpha: Option<f64>,
    /// Number of randomly chosen initial failures
    #[arg(long = "seed-count")]
    seed_count: Option<usize>,
    /// Base seed for network, loads and initial failures
    #[arg(long = "rng-seed")]
    rng_seed: Option<u64>,
    /// Key-value config file; flags override it
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    net: NetFlags,
    /// Transferred load per failed neighbor
    #[arg(long)]
    delta: Option<f64>,
    /// First grid tolerance
    #[arg(long = "alpha-start")]
    alpha_start: Option<f64>,
    /// Last grid tolerance (inclusive)
    #[arg(long = "alpha-stop")]
    alpha_stop: Option<f64>,
    /// Grid spacing
    #[arg(long = "alpha-step")]
    alpha_step: Option<f64>,
    /// Cascade realizations per grid point
    #[arg(long)]
    realizations: Option<usize>,
    /// Number of randomly chosen initial failures
    #[arg(long = "seed-count")]
    seed_count: Option<usize>,
    /// Base seed all per-run streams derive from
    #[arg(long = "rng-seed")]
    rng_seed: Option<u64>,
    /// Reuse one network and load vector per realization across the grid
    #[arg(long, action = clap::ArgAction::SetTrue)]
    paired: bool,
    /// CSV output path (stdout when absent)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write an SVG scatter here
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Worker threads (0 = automatic)
    #[arg(long)]
    workers: Option<usize>,
    /// Key-value config file; flags override it
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct ThresholdArgs {
    #[command(flatten)]
    net: NetFlags,
    /// Transferred load per failed neighbor
    #[arg(long)]
    delta: Option<f64>,
    /// Provide all three alpha-grid flags to also estimate the simulated onset
    #[arg(long = "alpha-start")]
    alpha_start: Option<f64>,
    /// Last grid tolerance (inclusive)
    #[arg(long = "alpha-stop")]
    alpha_stop: Option<f64>,
    /// Grid spacing
    #[arg(long = "alpha-step")]
    alpha_step: Option<f64>,
    /// Cascade realizations per grid point
    #[arg(long)]
    realizations: Option<usize>,
    /// Number of randomly chosen initial failures
    #[arg(long = "seed-count")]
    seed_count: Option<usize>,
    /// Base seed all per-run streams derive from
    #[arg(long = "rng-seed")]
    rng_seed: Option<u64>,
    /// Reuse one network and load vector per realization across the grid
    #[arg(long, action = clap::ArgAction::SetTrue)]
    paired: bool,
    /// Giant-fraction level defining the simulated onset
    #[arg(long = "g-star")]
    g_star: Option<f64>,
    /// CSV output path for the sweep records
    #[arg(long)]
    out: Option<PathBuf>,
    /// SVG scatter with the threshold marker
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Worker threads (0 = automatic)
    #[arg(long)]
    workers: Option<usize>,
    /// Key-value config file; flags override it
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct AbsorbingArgs {
    #[command(flatten)]
    net: NetFlags,
    /// Transferred load per failed neighbor
    #[arg(long)]
    delta: Option<f64>,
    /// Capacity tolerance
    #[arg(long)]
    alpha: Option<f64>,
    /// Monte Carlo trials for the empirical fractions
    #[arg(long)]
    realizations: Option<usize>,
    /// Base seed for the network instance and all trials
    #[arg(long = "rng-seed")]
    rng_seed: Option<u64>,
    /// Write the table as CSV here as well
    #[arg(long)]
    out: Option<PathBuf>,
    /// Key-value config file; flags override it
    #[arg(long)]
    config: Option<PathBuf>,
}

// ── flag/config merging ─────────────────────────────────────────────────

fn load_config(path: &Option<PathBuf>) -> Result<FileConfig, CliError> {
    match path {
        Some(p) => FileConfig::load(p),
        None => Ok(FileConfig::default()),
    }
}

fn pick<T>(flag: Option<T>, file: Option<T>, default: T) -> T {
    flag.or(file).unwrap_or(default)
}

fn require<T>(value: Option<T>, name: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Config(format!("missing required `{name}`")))
}

fn resolve_network(flags: &NetFlags, file: &FileConfig) -> Result<NetworkSpec, CliError> {
    let kind = match flags.net {
        Some(k) => Some(k),
        None => match file.get::<String>("net")?.as_deref() {
            None => None,
            Some("er") => Some(NetKindArg::Er),
            Some("ba") => Some(NetKindArg::Ba),
            Some("file") => Some(NetKindArg::File),
            Some(other) => {
                return Err(CliError::Config(format!(
                    "net must be er, ba or file, got `{other}`"
                )))
            }
        },
    };
    let kind = require(kind, "--net")?;
    let n = flags.n.or(file.get("n")?);
    let k_avg = flags.k_avg.or(file.get("k-avg")?);
    let m = flags.m.or(file.get("m")?);

    match kind {
        NetKindArg::Er => Ok(NetworkSpec::Er {
            n: require(n, "--n")?,
            mean_degree: require(k_avg, "--k-avg")?,
        }),
        NetKindArg::Ba => {
            let m = match (m, k_avg) {
                (Some(m), _) => m,
                (None, Some(k)) => (k / 2.0).round().max(1.0) as usize,
                (None, None) => return Err(CliError::Config("missing `--m` or `--k-avg`".into())),
            };
            Ok(NetworkSpec::Ba {
                n: require(n, "--n")?,
                m,
            })
        }
        NetKindArg::File => {
            let path = flags
                .graph
                .clone()
                .or(file.get::<PathBuf>("graph")?)
                .ok_or_else(|| {
                    CliError::Config("missing GRAPH path (required with --net file)".into())
                })?;
            Ok(NetworkSpec::File { path })
        }
    }
}

fn describe(spec: &NetworkSpec) -> String {
    match spec {
        NetworkSpec::Er { n, mean_degree } => format!("er n={n} k-avg={mean_degree}"),
        NetworkSpec::Ba { n, m } => format!("ba n={n} m={m}"),
        NetworkSpec::File { path } => format!("file {}", path.display()),
    }
}

// ── commands ────────────────────────────────────────────────────────────

fn cmd_gen(args: &GenArgs) -> Result<(), CliError> {
    let file = load_config(&args.config)?;
    let spec = resolve_network(&args.net, &file)?;
    let rng_seed = pick(args.rng_seed, file.get("rng-seed")?, 0);
    let out: PathBuf = require(args.out.clone().or(file.get("out")?), "--out")?;

    let net = match &spec {
        NetworkSpec::Er { n, mean_degree } => gen_er(*n, *mean_degree, rng_seed)?,
        NetworkSpec::Ba { n, m } => gen_ba(*n, *m, rng_seed)?,
        NetworkSpec::File { .. } => {
            return Err(CliError::Config(
                "gen needs --net er or --net ba, not file".into(),
            ))
        }
    };
    save_edge_list(&net, &out)?;
    println!(
        "wrote {}: {} nodes, {} edges, mean degree {:.4}",
        out.display(),
        net.node_count(),
        net.edge_count(),
        net.mean_degree()
    );
    Ok(())
}

fn build_network(spec: &NetworkSpec, seed: u64) -> Result<Network, CliError> {
    Ok(reference_network(spec, seed)?)
}

fn cmd_cascade(args: &CascadeArgs) -> Result<(), CliError> {
    let file = load_config(&args.config)?;
    let spec = resolve_network(&args.net, &file)?;
    let delta = pick(args.delta, file.get("delta")?, 0.01);
    let alpha = require(args.alpha.or(file.get("alpha")?), "--alpha")?;
    let seed_count = pick(args.seed_count, file.get("seed-count")?, 1);
    let rng_seed = pick(args.rng_seed, file.get("rng-seed")?, 0);

    let net = build_network(&spec, rng_seed)?;
    let loads = LoadProfile::uniform(
        net.node_count(),
        0.0,
        1.0,
        alpha,
        loadshare::rng::derive_seed(rng_seed, 1, 0),
    )?;
    let cfg = CascadeConfig {
        delta,
        seeds: SeedSpec::RandomCount(seed_count),
        rng_seed: loadshare::rng::derive_seed(rng_seed, 2, 0),
    };
    let outcome = run_cascade(&net, &loads, &cfg)?;

    println!(
        "network: {} ({} edges, mean degree {:.4})",
        describe(&spec),
        net.edge_count(),
        net.mean_degree()
    );
    println!("alpha: {alpha}  delta: {delta}  seeds: {seed_count}  rng-seed: {rng_seed}");
    println!(
        "failed: {} of {} ({:.4})",
        outcome.failed_count(),
        net.node_count(),
        outcome.failed_fraction()
    );
    println!(
        "giant component fraction G: {:.4}",
        outcome.giant_fraction()
    );
    println!("rounds: {}", outcome.rounds());
    Ok(())
}

struct GridFlags {
    start: Option<f64>,
    stop: Option<f64>,
    step: Option<f64>,
}

fn resolve_grid(flags: GridFlags, file: &FileConfig) -> Result<Option<Vec<f64>>, CliError> {
    let start = flags.start.or(file.get("alpha-start")?);
    let stop = flags.stop.or(file.get("alpha-stop")?);
    let step = flags.step.or(file.get("alpha-step")?);
    match (start, stop, step) {
        (None, None, None) => Ok(None),
        (Some(start), Some(stop), Some(step)) => Ok(Some(alpha_grid(start, stop, step)?)),
        _ => Err(CliError::Config(
            "provide all of --alpha-start/--alpha-stop/--alpha-step or none".into(),
        )),
    }
}

fn cmd_sweep(args: &SweepArgs) -> Result<(), CliError> {
    let file = load_config(&args.config)?;
    let spec = resolve_network(&args.net, &file)?;
    let delta = pick(args.delta, file.get("delta")?, 0.01);
    let grid = resolve_grid(
        GridFlags {
            start: args.alpha_start,
            stop: args.alpha_stop,
            step: args.alpha_step,
        },
        &file,
    )?
    .ok_or_else(|| {
        CliError::Config("sweep needs --alpha-start/--alpha-stop/--alpha-step".into())
    })?;

    let cfg = SweepConfig {
        network: spec.clone(),
        delta,
        alphas: grid,
        realizations: pick(args.realizations, file.get("realizations")?, 50),
        seed_count: pick(args.seed_count, file.get("seed-count")?, 1),
        base_seed: pick(args.rng_seed, file.get("rng-seed")?, 0),
        paired: args.paired || file.get("paired")?.unwrap_or(false),
        workers: pick(args.workers, file.get("workers")?, 0),
    };
    let records = run_sweep(&cfg)?;

    let out = args.out.clone().or(file.get("out")?);
    match &out {
        Some(path) => {
            loadshare::csv::write_csv(&records, path)?;
            eprintln!("wrote {} records to {}", records.len(), path.display());
        }
        None => print!("{}", loadshare::csv::emit_csv(&records)),
    }

    let svg = args.svg.clone().or(file.get("svg")?);
    if let Some(svg_path) = svg {
        // Threshold overlay is best effort; a sweep without one is still a sweep.
        let overlay = reference_stats_for(&cfg.network, cfg.base_seed)
            .and_then(|stats| {
                find_alpha_c(
                    &stats,
                    delta,
                    &UniformCdf::default(),
                    &ScanOptions::default(),
                )
                .map_err(CliError::from)
            })
            .map(|report| report.alpha_c)
            .ok();
        loadshare::plot::write_svg(
            &records,
            overlay,
            &format!("G vs alpha ({})", describe(&spec)),
            &svg_path,
        )?;
        eprintln!("wrote plot to {}", svg_path.display());
    }
    Ok(())
}

fn reference_stats_for(spec: &NetworkSpec, seed: u64) -> Result<DegreeStats, CliError> {
    Ok(loadshare::reference_stats(spec, seed)?)
}

fn print_threshold_report(report: &ThresholdReport, stats: &DegreeStats, delta: f64) {
    println!(
        "mean degree: {:.4} (k_max {})",
        stats.mean_degree(),
        stats.k_max()
    );
    println!("cascade bound (k-1)*delta: {:.6}", report.cascade_bound);
    if let Ok(excess) = cascade_bound_excess(stats, delta) {
        println!("cascade bound, excess-degree weighting: {:.6}", excess);
    }
    println!("alpha_c: {:.6}", report.alpha_c);
    let (last_alpha, last_b) = *report.branching_trace.last().unwrap();
    println!(
        "branching factor {:.6} at alpha_c = {:.6} ({} probes, step {:.6})",
        last_b,
        last_alpha,
        report.branching_trace.len(),
        report.step
    );
    if report.marginal {
        println!(
            "note: marginal case: excess-degree mean {:.6} <= 1, the graph has no \
             supercritical regime",
            report.excess_degree_mean
        );
    }
}

fn cmd_threshold(args: &ThresholdArgs) -> Result<(), CliError> {
    let file = load_config(&args.config)?;
    let spec = resolve_network(&args.net, &file)?;
    let delta = pick(args.delta, file.get("delta")?, 0.01);
    let base_seed = pick(args.rng_seed, file.get("rng-seed")?, 0);
    let g_star = pick(args.g_star, file.get("g-star")?, 0.1);

    let stats = reference_stats_for(&spec, base_seed)?;
    let report = find_alpha_c(
        &stats,
        delta,
        &UniformCdf::default(),
        &ScanOptions::default(),
    )?;

    println!("network: {}", describe(&spec));
    print_threshold_report(&report, &stats, delta);

    let grid = resolve_grid(
        GridFlags {
            start: args.alpha_start,
            stop: args.alpha_stop,
            step: args.alpha_step,
        },
        &file,
    )?;
    if let Some(alphas) = grid {
        let cfg = SweepConfig {
            network: spec.clone(),
            delta,
            alphas,
            realizations: pick(args.realizations, file.get("realizations")?, 50),
            seed_count: pick(args.seed_count, file.get("seed-count")?, 1),
            base_seed,
            paired: args.paired || file.get("paired")?.unwrap_or(false),
            workers: pick(args.workers, file.get("workers")?, 0),
        };
        let records = run_sweep(&cfg)?;
        if let Some(path) = args.out.clone().or(file.get("out")?) {
            loadshare::csv::write_csv(&records, &path)?;
            eprintln!("wrote {} records to {}", records.len(), path.display());
        }
        if let Some(svg_path) = args.svg.clone().or(file.get("svg")?) {
            loadshare::plot::write_svg(
                &records,
                Some(report.alpha_c),
                &format!("G vs alpha ({})", describe(&spec)),
                &svg_path,
            )?;
            eprintln!("wrote plot to {}", svg_path.display());
        }
        let est = estimate_transition(&records, g_star, 0.5)?;
        println!(
            "simulated onset alpha_sim: {:.6} (median G sustained above {g_star})",
            est.alpha_sim
        );
        println!(
            "gap |alpha_sim - alpha_c|: {:.6}",
            (est.alpha_sim - report.alpha_c).abs()
        );
    }
    Ok(())
}

fn cmd_absorbing(args: &AbsorbingArgs) -> Result<(), CliError> {
    let file = load_config(&args.config)?;
    let spec = resolve_network(&args.net, &file)?;
    let delta = pick(args.delta, file.get("delta")?, 0.01);
    let alpha = require(args.alpha.or(file.get("alpha")?), "--alpha")?;
    let trials = pick(args.realizations, file.get("realizations")?, 50);
    let rng_seed = pick(args.rng_seed, file.get("rng-seed")?, 0);

    let net = build_network(&spec, rng_seed)?;
    let stats = degree_stats(&net);
    let solution = solve_sigma(
        &stats,
        alpha,
        delta,
        &UniformCdf::default(),
        &SolverOptions::default(),
    )?;
    let empirical = loadshare::empirical_absorbing_fraction(&net, alpha, delta, trials, rng_seed)?;

    println!("network: {}", describe(&spec));
    println!(
        "alpha: {alpha}  delta: {delta}  trials: {trials}  sigma_a: {:.6} \
         (converged: {}, residual {:.2e})",
        solution.sigma_a, solution.converged, solution.residual
    );
    println!(
        "{:>4} {:>8} {:>10} {:>12} {:>12}",
        "k", "nodes", "p_k", "a_k", "empirical"
    );
    let n = net.node_count() as f64;
    let mut csv = String::from("k,nodes,p_k,a_k_theory,a_k_empirical\n");
    for (k, frac) in empirical.iter().enumerate() {
        let Some(frac) = frac else { continue };
        let nodes = (stats.p_k()[k] * n).round() as usize;
        println!(
            "{k:>4} {nodes:>8} {:>10.5} {:>12.6} {:>12.6}",
            stats.p_k()[k],
            solution.a_k[k],
            frac
        );
        csv.push_str(&format!(
            "{k},{nodes},{},{},{}\n",
            stats.p_k()[k],
            solution.a_k[k],
            frac
        ));
    }
    if let Some(path) = args.out.clone().or(file.get("out")?) {
        std::fs::write(&path, csv).map_err(|e| CliError::Io(e.to_string()))?;
        eprintln!("wrote table to {}", path.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    // Die quietly on a closed pipe (`loadshare sweep | head`) instead of
    // panicking; Rust masks SIGPIPE by default.
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::Cascade(args) => cmd_cascade(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Threshold(args) => cmd_threshold(args),
        Command::Absorbing(args) => cmd_absorbing(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
