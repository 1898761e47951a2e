use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use tricount::io::{read_binary, read_edge_list, write_binary, write_edge_list};
use tricount::oracle::sequential_forward_count;
use tricount::{count_partitioned, count_triangles, preprocess, PartitionPlan, ReadMode};
use tricount_bench::{rmat, worker_counts};

fn bench_preprocess(c: &mut Criterion) {
    let mut group = c.benchmark_group("preprocess");
    for scale in [12, 14] {
        let g = rmat(scale, 1);
        group.throughput(Throughput::Elements(g.num_entries() as u64));
        group.bench_with_input(BenchmarkId::from_parameter(scale), &g, |b, g| {
            b.iter(|| preprocess(black_box(g)))
        });
    }
    group.finish();
}

fn bench_count(c: &mut Criterion) {
    let g = preprocess(&rmat(14, 1));
    let mut group = c.benchmark_group("count");
    group.throughput(Throughput::Elements(g.num_edges() as u64));
    for workers in worker_counts() {
        group.bench_with_input(BenchmarkId::new("workers", workers), &workers, |b, &w| {
            b.iter(|| count_triangles(black_box(&g), w))
        });
    }
    for pools in [2, 4] {
        let plan = PartitionPlan::contiguous(g.num_edges(), pools).unwrap();
        group.bench_with_input(BenchmarkId::new("pools", pools), &plan, |b, plan| {
            b.iter(|| count_partitioned(black_box(&g), plan, 1).unwrap())
        });
    }
    group.finish();
}

fn bench_baseline(c: &mut Criterion) {
    let g = rmat(12, 1);
    c.bench_function("sequential_forward/12", |b| {
        b.iter(|| sequential_forward_count(black_box(&g)))
    });
}

fn bench_io(c: &mut Criterion) {
    let g = rmat(14, 2);
    let mut text = Vec::new();
    write_edge_list(&g, &mut text).unwrap();
    let mut binary = Vec::new();
    write_binary(&g, &mut binary).unwrap();

    let mut group = c.benchmark_group("load");
    group.throughput(Throughput::Elements(g.num_entries() as u64));
    group.bench_function("text", |b| {
        b.iter(|| read_edge_list(black_box(text.as_slice()), ReadMode::Symmetrize).unwrap())
    });
    group.bench_function("binary", |b| {
        b.iter(|| read_binary(black_box(binary.as_slice())).unwrap())
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_preprocess,
    bench_count,
    bench_baseline,
    bench_io
);
criterion_main!(benches);
