use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use vhfnet::build_plan;
use vhfnet::routing::{build_routes, simulate};
use vhfnet_bench::{config_for, plan_for, requests};

const CASES: [(usize, f64); 2] = [(1000, 5.0), (10_000, 2.0)];

fn bench_build_plan(c: &mut Criterion) {
    let mut g = c.benchmark_group("build_plan");
    for (users, cap) in CASES {
        let config = config_for(users, cap);
        g.bench_with_input(BenchmarkId::from_parameter(users), &config, |b, config| {
            b.iter(|| build_plan(black_box(config)).unwrap())
        });
    }
    g.finish();
}

fn bench_routes(c: &mut Criterion) {
    let mut g = c.benchmark_group("build_routes");
    for (users, cap) in CASES {
        let plan = plan_for(users, cap);
        g.bench_with_input(BenchmarkId::from_parameter(users), &plan, |b, plan| {
            b.iter(|| build_routes(black_box(plan)))
        });
    }
    g.finish();
}

fn bench_simulate(c: &mut Criterion) {
    let mut g = c.benchmark_group("simulate_1000_calls");
    g.sample_size(20);
    for (users, cap) in CASES {
        let plan = plan_for(users, cap);
        let table = build_routes(&plan);
        let reqs = requests(&plan, 1000);
        g.bench_with_input(BenchmarkId::from_parameter(users), &reqs, |b, reqs| {
            b.iter(|| simulate(&plan, &table, black_box(reqs)))
        });
    }
    g.finish();
}

criterion_group!(benches, bench_build_plan, bench_routes, bench_simulate);
criterion_main!(benches);
