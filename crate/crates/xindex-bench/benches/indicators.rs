use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use xindex_bench::bench_graph;
use xindex_core::evaluation::{rank_authors, Indicator};
use xindex_core::indicators::{compute_all, h_index, InfluenceIndex};
use xindex_core::synthgen::{generate, GenParams};

fn bench_h_index(c: &mut Criterion) {
    let counts: Vec<u64> = (0..10_000u64).map(|i| (i * 7919) % 500).collect();
    c.bench_function("h_index/10k_counts", |b| {
        b.iter(|| h_index(std::hint::black_box(&counts)))
    });
}

fn bench_generate(c: &mut Criterion) {
    let params = GenParams {
        n_papers: 10_000,
        n_authors: 1_000,
        authors_per_paper: (1, 5),
        citations_per_paper: (0, 10),
        preferential_exponent: 1.0,
        elite_fraction: 0.05,
        seed: 7,
    };
    c.bench_function("synthgen/10k_papers", |b| {
        b.iter(|| generate(std::hint::black_box(&params)).unwrap())
    });
}

fn bench_influence_index(c: &mut Criterion) {
    let graph = bench_graph(10_000);
    c.bench_function("influence_index/10k_papers", |b| {
        b.iter(|| InfluenceIndex::new(std::hint::black_box(&graph)))
    });
}

fn bench_compute_all(c: &mut Criterion) {
    let mut group = c.benchmark_group("compute_all");
    group.sample_size(10);
    for n in [2_000usize, 10_000, 50_000] {
        let graph = bench_graph(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &graph, |b, g| {
            b.iter(|| compute_all(g))
        });
    }
    group.finish();
}

fn bench_rank(c: &mut Criterion) {
    let graph = bench_graph(20_000);
    let scores = compute_all(&graph);
    c.bench_function("rank_authors/x/2k_authors", |b| {
        b.iter(|| rank_authors(std::hint::black_box(&scores), Indicator::X))
    });
}

criterion_group!(
    benches,
    bench_h_index,
    bench_generate,
    bench_influence_index,
    bench_compute_all,
    bench_rank
);
criterion_main!(benches);
