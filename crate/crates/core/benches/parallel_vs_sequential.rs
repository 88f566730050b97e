use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use bmgate::engine::{run_simulation_with, AttackStrategy, SimConfig};
use bmgate::fixtures::shifted_gaussians;
use bmgate::multiphoton::verify_bound_with;
use bmgate::security::{default_threshold_grid, threshold_scan};
use bmgate::Execution;

const MODES: [Execution; 2] = [Execution::Sequential, Execution::Parallel];

fn simulation(c: &mut Criterion) {
    let resp = shifted_gaussians();
    let strategy = AttackStrategy::OptimalState { t_ns: 0.2 };
    let cfg = SimConfig::new(200_000, 11);
    let mut group = c.benchmark_group("simulate_200k_gates");
    group.sample_size(10);
    for exec in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{exec:?}")), &exec, |b, &exec| {
            b.iter(|| run_simulation_with(&resp, &strategy, cfg, exec).unwrap())
        });
    }
    group.finish();
}

fn threshold(c: &mut Criterion) {
    let resp = shifted_gaussians();
    let grid = default_threshold_grid();
    let mut group = c.benchmark_group("threshold_scan");
    for exec in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{exec:?}")), &exec, |b, &exec| {
            b.iter(|| threshold_scan(&resp, 0.0568, &grid, 0.0, exec).unwrap())
        });
    }
    group.finish();
}

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_bound_n60");
    group.sample_size(10);
    for exec in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{exec:?}")), &exec, |b, &exec| {
            b.iter(|| verify_bound_with(0.1, 0.3, 60, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, simulation, threshold, enumeration);
criterion_main!(benches);
