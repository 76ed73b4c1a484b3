use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use loadshare::{gen_ba, gen_er, run_cascade, CascadeConfig, LoadProfile, Network, SeedSpec};

fn bench_generators(c: &mut Criterion) {
    let mut group = c.benchmark_group("generate");
    group.bench_function("er_n5000_k10", |b| {
        b.iter(|| gen_er(black_box(5000), black_box(10.0), black_box(42)).unwrap())
    });
    group.bench_function("ba_n5000_m5", |b| {
        b.iter(|| gen_ba(black_box(5000), black_box(5), black_box(42)).unwrap())
    });
    group.finish();
}

fn cascade_input(alpha: f64) -> (Network, LoadProfile, CascadeConfig) {
    let net = gen_er(5000, 10.0, 7).unwrap();
    let loads = LoadProfile::uniform(5000, 0.0, 1.0, alpha, 8).unwrap();
    let cfg = CascadeConfig {
        delta: 0.01,
        seeds: SeedSpec::RandomCount(10),
        rng_seed: 9,
    };
    (net, loads, cfg)
}

fn bench_cascade(c: &mut Criterion) {
    let mut group = c.benchmark_group("cascade_er_n5000_k10");
    // Below threshold the cascade shreds the graph; above it dies quickly.
    for alpha in [0.05, 0.2] {
        let (net, loads, cfg) = cascade_input(alpha);
        group.bench_with_input(BenchmarkId::from_parameter(alpha), &alpha, |b, _| {
            b.iter(|| run_cascade(black_box(&net), black_box(&loads), black_box(&cfg)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_generators, bench_cascade);
criterion_main!(benches);
