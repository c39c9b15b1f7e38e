use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use promethee::generate::generate;
use promethee::reference::naive_flows;
use promethee::sbp::sbp_flows;
use promethee::{with_threads, OrientedMatrix};

fn instance(n: usize, q: usize) -> OrientedMatrix {
    OrientedMatrix::new(&generate(n, q, 1).unwrap()).unwrap()
}

fn engines(c: &mut Criterion) {
    let mut group = c.benchmark_group("engines");
    group.sample_size(10);
    for exp in [8, 10, 12] {
        let m = instance(1 << exp, 1);
        group.bench_with_input(BenchmarkId::new("naive", 1 << exp), &m, |b, m| {
            b.iter(|| naive_flows(black_box(m)))
        });
        group.bench_with_input(BenchmarkId::new("sbp", 1 << exp), &m, |b, m| {
            b.iter(|| sbp_flows(black_box(m)))
        });
    }
    group.finish();
}

fn threading(c: &mut Criterion) {
    let mut group = c.benchmark_group("sbp_threads");
    group.sample_size(10);
    for exp in [14, 17] {
        let m = instance(1 << exp, 4);
        group.bench_with_input(BenchmarkId::new("sequential", 1 << exp), &m, |b, m| {
            b.iter(|| with_threads(Some(1), || sbp_flows(black_box(m))))
        });
        group.bench_with_input(BenchmarkId::new("parallel", 1 << exp), &m, |b, m| {
            b.iter(|| with_threads(None, || sbp_flows(black_box(m))))
        });
    }
    group.finish();
}

criterion_group!(benches, engines, threading);
criterion_main!(benches);
