use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use zconn_core::catalog::Catalog;
use zconn_core::reduction::SearchBudget;
use zconn_core::{classify, enumerate_census, CensusConstraints, Oracle};

fn census(c: &mut Criterion) {
    let mut group = c.benchmark_group("census");
    group.sample_size(10);
    for n in [6, 7, 8] {
        group.bench_with_input(BenchmarkId::new("enumerate", n), &n, |b, &n| {
            b.iter(|| enumerate_census(black_box(n), CensusConstraints::CLASSIFIABLE).unwrap())
        });
    }
    group.finish();
}

fn classification(c: &mut Criterion) {
    let oracle = Oracle::default();
    let catalog = Catalog::load_verified(&oracle).unwrap();
    let mut group = c.benchmark_group("classify");
    group.sample_size(10);
    for n in [6, 7, 8] {
        let graphs = enumerate_census(n, CensusConstraints::CLASSIFIABLE).unwrap();
        group.bench_with_input(BenchmarkId::new("order", n), &graphs, |b, graphs| {
            b.iter(|| {
                for g in graphs {
                    classify(&g.graph, &catalog, &oracle, SearchBudget::default()).unwrap();
                }
            })
        });
    }
    group.finish();
}

criterion_group!(benches, census, classification);
criterion_main!(benches);
