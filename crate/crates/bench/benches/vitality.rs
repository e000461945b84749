use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};

use flowvit_bench::{grid_instance, sparse_instance};
use flowvit_core::general::all_arc_vitalities;
use flowvit_core::maxflow::max_flow_value;
use flowvit_core::{Method, VitalityIndex};

fn planar(c: &mut Criterion) {
    let mut group = c.benchmark_group("planar_all_arcs");
    group.sample_size(20);
    for (rows, cols) in [(50, 50), (100, 100), (100, 200)] {
        let (net, emb) = grid_instance(rows, cols);
        group.throughput(Throughput::Elements(net.arc_count() as u64));
        group.bench_function(format!("{rows}x{cols}"), |b| {
            b.iter(|| {
                let index = VitalityIndex::new(&net, &emb).unwrap();
                black_box(index.all_arcs())
            })
        });
    }
    group.finish();
}

fn general(c: &mut Criterion) {
    let mut group = c.benchmark_group("general_all_arcs");
    group.sample_size(10);
    for n in [20, 40, 80] {
        let net = sparse_instance(n);
        for method in [Method::Naive, Method::Lemma1, Method::Ancestor] {
            group.bench_with_input(BenchmarkId::new(format!("{method:?}"), n), &net, |b, net| {
                b.iter(|| all_arc_vitalities(net, method).unwrap())
            });
        }
    }
    group.finish();
}

fn maxflow(c: &mut Criterion) {
    let mut group = c.benchmark_group("push_relabel");
    for n in [100, 1000, 5000] {
        let net = sparse_instance(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &net, |b, net| {
            b.iter(|| max_flow_value(net))
        });
    }
    group.finish();
}

criterion_group!(benches, planar, general, maxflow);
criterion_main!(benches);
