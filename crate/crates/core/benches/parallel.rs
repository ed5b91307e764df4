use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lcalab_core::analysis::tightness_experiment;
use lcalab_core::engine::{lca_assignment, GreedyMatching, GreedyMis, Method};
use lcalab_core::graph::{generate, GeneratorSpec, LineGraph};
use lcalab_core::ordering::{default_k, default_levels, RankingFunction};
use lcalab_core::par::Execution;
use lcalab_core::vicinity::{vicinity_stats, DEFAULT_BUDGET};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn all_inquiries(c: &mut Criterion) {
    let g = generate(&GeneratorSpec::Gnp {
        n: 1 << 12,
        d: 3.0,
        rng_seed: 1,
    })
    .unwrap();
    let n = g.num_vertices();
    let rf = RankingFunction::sample(n, default_levels(3.0), default_k(3.0, n, 1.0), b"bench").unwrap();
    let line = LineGraph::new(&g);
    let m = g.num_edges();
    let erf = RankingFunction::sample(m, default_levels(3.0), default_k(3.0, m, 1.0), b"bench").unwrap();

    let mut group = c.benchmark_group("lca_assignment");
    group.sample_size(10);
    for (name, exec) in MODES {
        for method in [Method::One, Method::Two] {
            group.bench_with_input(BenchmarkId::new(format!("mis/{method:?}"), name), &exec, |b, &exec| {
                b.iter(|| lca_assignment(&g, &rf, &GreedyMis, method, DEFAULT_BUDGET, exec).unwrap())
            });
        }
        group.bench_with_input(BenchmarkId::new("matching/One", name), &exec, |b, &exec| {
            b.iter(|| lca_assignment(&line, &erf, &GreedyMatching, Method::One, DEFAULT_BUDGET, exec).unwrap())
        });
    }
    group.finish();
}

fn statistics(c: &mut Criterion) {
    let g = generate(&GeneratorSpec::Gnp {
        n: 1 << 14,
        d: 3.0,
        rng_seed: 2,
    })
    .unwrap();
    let n = g.num_vertices();
    let mut group = c.benchmark_group("vicinity_stats");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| {
                vicinity_stats(&g, 3.0, default_levels(3.0), default_k(3.0, n, 1.0), 200, 16, 3, DEFAULT_BUDGET, exec)
                    .unwrap()
            })
        });
    }
    group.finish();
}

fn tightness(c: &mut Criterion) {
    let mut group = c.benchmark_group("tightness");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| tightness_experiment(4, 4, 2_000, 4, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, all_inquiries, statistics, tightness);
criterion_main!(benches);
