//! End-to-end tests against the compiled binary.

use std::path::Path;
use std::process::{Command, Output};

fn loadshare(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_loadshare"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

/// Number following `prefix` on its line of `text`.
fn extract(text: &str, prefix: &str) -> f64 {
    text.lines()
        .find_map(|line| line.strip_prefix(prefix))
        .unwrap_or_else(|| panic!("no line starts with `{prefix}` in: {text}"))
        .split_whitespace()
        .next()
        .unwrap()
        .parse()
        .unwrap()
}

#[test]
fn gen_writes_loadable_edge_list() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("net.txt");
    let out = loadshare(&[
        "gen",
        "--net",
        "ba",
        "--n",
        "200",
        "--m",
        "3",
        "--rng-seed",
        "11",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{out:?}");
    assert!(stdout(&out).contains("200 nodes"));
    let net = loadshare::load_edge_list(&path).unwrap();
    assert_eq!(net.node_count(), 200);
    assert_eq!(net.edge_count(), loadshare::ba_edge_count(200, 3));
}

#[test]
fn cascade_prints_outcome_and_is_deterministic() {
    let run = || {
        let out = loadshare(&[
            "cascade",
            "--net",
            "er",
            "--n",
            "300",
            "--k-avg",
            "6",
            "--alpha",
            "0.05",
            "--rng-seed",
            "4",
        ]);
        assert_eq!(code(&out), 0);
        stdout(&out)
    };
    let first = run();
    assert!(first.contains("giant component fraction G:"), "{first}");
    assert!(first.contains("rounds:"), "{first}");
    assert_eq!(first, run());
}

#[test]
fn sweep_csv_is_byte_identical_across_workers_and_repeats() {
    let args_base = [
        "sweep",
        "--net",
        "er",
        "--n",
        "150",
        "--k-avg",
        "6",
        "--alpha-start",
        "0.02",
        "--alpha-stop",
        "0.06",
        "--alpha-step",
        "0.02",
        "--realizations",
        "4",
        "--rng-seed",
        "123",
    ];
    let run = |workers: &str| {
        let mut args = args_base.to_vec();
        args.extend(["--workers", workers]);
        let out = loadshare(&args);
        assert_eq!(code(&out), 0, "{out:?}");
        stdout(&out)
    };
    let baseline = run("1");
    assert!(baseline.starts_with("network_kind,"));
    assert_eq!(baseline.lines().count(), 1 + 3 * 4);
    assert_eq!(run("1"), baseline);
    assert_eq!(run("4"), baseline);
    assert_eq!(run("0"), baseline);
}

#[test]
fn sweep_writes_csv_and_svg_files() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("records.csv");
    let svg = dir.path().join("plot.svg");
    let out = loadshare(&[
        "sweep",
        "--net",
        "er",
        "--n",
        "200",
        "--k-avg",
        "8",
        "--alpha-start",
        "0.02",
        "--alpha-stop",
        "0.1",
        "--alpha-step",
        "0.04",
        "--realizations",
        "3",
        "--rng-seed",
        "5",
        "--out",
        csv.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{out:?}");
    let records = loadshare::csv::read_csv(&csv).unwrap();
    assert_eq!(records.len(), 9);
    let svg_text = std::fs::read_to_string(&svg).unwrap();
    assert!(svg_text.starts_with("<svg"));
    assert_eq!(svg_text.matches("<circle").count(), 9);
}

#[test]
fn threshold_reports_alpha_c_within_bound() {
    let out = loadshare(&[
        "threshold",
        "--net",
        "er",
        "--n",
        "1500",
        "--k-avg",
        "10",
        "--rng-seed",
        "2",
    ]);
    assert_eq!(code(&out), 0, "{out:?}");
    let text = stdout(&out);
    let alpha_c = extract(&text, "alpha_c: ");
    let bound = extract(&text, "cascade bound (k-1)*delta: ");
    assert!(alpha_c > 0.0 && alpha_c <= bound, "{text}");
}

#[test]
fn threshold_with_grid_reports_simulated_onset() {
    let out = loadshare(&[
        "threshold",
        "--net",
        "er",
        "--n",
        "800",
        "--k-avg",
        "8",
        "--rng-seed",
        "6",
        "--alpha-start",
        "0.03",
        "--alpha-stop",
        "0.1",
        "--alpha-step",
        "0.005",
        "--realizations",
        "10",
        "--seed-count",
        "5",
    ]);
    assert_eq!(code(&out), 0, "{out:?}");
    let text = stdout(&out);
    assert!(text.contains("simulated onset alpha_sim:"), "{text}");
    assert!(text.contains("gap |alpha_sim - alpha_c|:"), "{text}");
}

#[test]
fn config_file_supplies_values_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    std::fs::write(
        &cfg,
        "net = er\nn = 150\nk-avg = 6\nalpha-start = 0.02\nalpha-stop = 0.06\n\
         alpha-step = 0.02\nrealizations = 4\nrng-seed = 123\n",
    )
    .unwrap();

    // Same parameters as flags: identical bytes.
    let from_config = loadshare(&["sweep", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&from_config), 0, "{from_config:?}");
    let from_flags = loadshare(&[
        "sweep",
        "--net",
        "er",
        "--n",
        "150",
        "--k-avg",
        "6",
        "--alpha-start",
        "0.02",
        "--alpha-stop",
        "0.06",
        "--alpha-step",
        "0.02",
        "--realizations",
        "4",
        "--rng-seed",
        "123",
    ]);
    assert_eq!(stdout(&from_config), stdout(&from_flags));

    // A flag overrides the file value.
    let overridden = loadshare(&[
        "sweep",
        "--config",
        cfg.to_str().unwrap(),
        "--realizations",
        "2",
    ]);
    assert_eq!(code(&overridden), 0);
    assert_eq!(stdout(&overridden).lines().count(), 1 + 3 * 2);
}

#[test]
fn exit_code_2_on_config_errors() {
    // Missing required network parameters.
    assert_eq!(code(&loadshare(&["sweep", "--net", "er"])), 2);
    // Unknown key in config file.
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.conf");
    std::fs::write(&cfg, "bogus = 1\n").unwrap();
    assert_eq!(
        code(&loadshare(&[
            "threshold",
            "--config",
            cfg.to_str().unwrap()
        ])),
        2
    );
    // Partial alpha grid.
    assert_eq!(
        code(&loadshare(&[
            "sweep",
            "--net",
            "er",
            "--n",
            "100",
            "--k-avg",
            "4",
            "--alpha-start",
            "0.01",
        ])),
        2
    );
    // gen cannot take --net file.
    assert_eq!(
        code(&loadshare(&[
            "gen", "--net", "file", "x.txt", "--out", "y.txt"
        ])),
        2
    );
    // Malformed graph file content is a config error too.
    let graph = dir.path().join("bad_graph.txt");
    std::fs::write(&graph, "0 0\n").unwrap();
    assert_eq!(
        code(&loadshare(&[
            "cascade",
            "--net",
            "file",
            graph.to_str().unwrap(),
            "--alpha",
            "0.05",
        ])),
        2
    );
}

#[test]
fn exit_code_3_when_no_transition_in_range() {
    // Tolerances far below threshold: G stays at zero, no crossing.
    let out = loadshare(&[
        "threshold",
        "--net",
        "er",
        "--n",
        "500",
        "--k-avg",
        "8",
        "--alpha-start",
        "0.002",
        "--alpha-stop",
        "0.006",
        "--alpha-step",
        "0.002",
        "--realizations",
        "4",
    ]);
    assert_eq!(code(&out), 3, "{out:?}");
}

#[test]
fn exit_code_4_on_io_errors() {
    let out = loadshare(&[
        "sweep",
        "--net",
        "er",
        "--n",
        "80",
        "--k-avg",
        "4",
        "--alpha-start",
        "0.01",
        "--alpha-stop",
        "0.02",
        "--alpha-step",
        "0.01",
        "--out",
        "/nonexistent/dir/out.csv",
    ]);
    assert_eq!(code(&out), 4, "{out:?}");
    // Missing input graph file.
    let out = loadshare(&[
        "cascade",
        "--net",
        "file",
        "/nonexistent/graph.txt",
        "--alpha",
        "0.1",
    ]);
    assert_eq!(code(&out), 4, "{out:?}");
}

#[test]
fn absorbing_prints_table_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("absorbing.csv");
    let out = loadshare(&[
        "absorbing",
        "--net",
        "er",
        "--n",
        "300",
        "--k-avg",
        "6",
        "--alpha",
        "0.04",
        "--realizations",
        "5",
        "--rng-seed",
        "3",
        "--out",
        table.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{out:?}");
    let text = stdout(&out);
    assert!(text.contains("sigma_a:"), "{text}");
    assert!(text.contains("empirical"), "{text}");
    let csv = std::fs::read_to_string(&table).unwrap();
    assert!(csv.starts_with("k,nodes,p_k,a_k_theory,a_k_empirical"));
    assert!(csv.lines().count() > 3);
}

#[test]
fn paired_flag_gives_monotone_failed_fractions() {
    let out = loadshare(&[
        "sweep",
        "--net",
        "er",
        "--n",
        "250",
        "--k-avg",
        "6",
        "--alpha-start",
        "0.01",
        "--alpha-stop",
        "0.07",
        "--alpha-step",
        "0.01",
        "--realizations",
        "3",
        "--rng-seed",
        "77",
        "--paired",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let records = loadshare::csv::parse_csv(&text).unwrap();
    for r in 0..3 {
        let fractions: Vec<f64> = records
            .iter()
            .filter(|rec| rec.realization == r)
            .map(|rec| rec.failed_fraction)
            .collect();
        assert!(fractions.windows(2).all(|w| w[1] <= w[0] + 1e-15));
    }
}

#[test]
fn file_networks_flow_through_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ring.txt");
    // A 2-regular ring of 60 nodes, written by hand without a header.
    let mut text = String::new();
    for i in 0u32..60 {
        text.push_str(&format!("{} {}\n", i, (i + 1) % 60));
    }
    std::fs::write(&path, text).unwrap();
    let out = loadshare(&[
        "sweep",
        "--net",
        "file",
        path.to_str().unwrap(),
        "--alpha-start",
        "0.05",
        "--alpha-stop",
        "0.1",
        "--alpha-step",
        "0.05",
        "--realizations",
        "2",
    ]);
    assert_eq!(code(&out), 0, "{out:?}");
    let records = loadshare::csv::parse_csv(&stdout(&out)).unwrap();
    assert_eq!(records.len(), 4);
    assert!(records
        .iter()
        .all(|r| r.network_kind == "file" && r.n == 60));
    assert!(records.iter().all(|r| (r.mean_degree - 2.0).abs() < 1e-12));
}

#[test]
fn threshold_flags_marginal_two_regular_ring() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ring.txt");
    let mut text = String::new();
    for i in 0u32..40 {
        text.push_str(&format!("{} {}\n", i, (i + 1) % 40));
    }
    std::fs::write(&path, text).unwrap();
    let out = loadshare(&["threshold", "--net", "file", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{out:?}");
    let stdout_text = stdout(&out);
    // Excess-degree mean of a 2-regular graph is exactly 1: marginal.
    assert!(stdout_text.contains("marginal"), "{stdout_text}");
    let alpha_c = extract(&stdout_text, "alpha_c: ");
    assert!((alpha_c - 0.01).abs() < 1e-12, "{stdout_text}");
}

#[test]
fn help_lists_subcommands() {
    let out = loadshare(&["--help"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    for sub in ["gen", "cascade", "sweep", "threshold", "absorbing"] {
        assert!(text.contains(sub), "missing {sub} in help: {text}");
    }
    assert!(Path::new(env!("CARGO_BIN_EXE_loadshare")).exists());
}
