//! Throughput of the batch entry points against sequential reference
//! loops built from the public per-item functions.
//!
//! With the default `parallel` feature the batch functions fan out on the
//! rayon pool, so the comparison shows the parallel speedup; built with
//! `--no-default-features` both sides are sequential and should track each
//! other.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use hodge_core::{
    enumerate_diamonds, polarized_leq, realize_diamond, relation_digraph, verify_domain,
    HodgeNumbers,
};
use hodge_core::witness::{check_pmhs, diamond_of};

fn bench_relation_digraph(c: &mut Criterion) {
    let h = HodgeNumbers::from_row(&[3, 6, 3]);
    let mut group = c.benchmark_group("relation-digraph-3-6-3");
    group.sample_size(10);
    group.bench_function("batch", |b| {
        b.iter(|| relation_digraph(black_box(&h), 64).unwrap())
    });
    group.bench_function("sequential-loop", |b| {
        let nodes = enumerate_diamonds(&h).unwrap();
        b.iter(|| {
            let mut edges = 0usize;
            for (i, f1) in nodes.iter().enumerate() {
                for (j, f2) in nodes.iter().enumerate() {
                    if i != j && polarized_leq(f1, f2, &h).unwrap().holds {
                        edges += 1;
                    }
                }
            }
            black_box(edges)
        })
    });
    group.finish();
}

fn bench_verify_domain(c: &mut Criterion) {
    let h = HodgeNumbers::from_row(&[2, 4, 2]);
    let mut group = c.benchmark_group("verify-domain-2-4-2");
    group.sample_size(10);
    group.bench_function("batch", |b| {
        b.iter(|| verify_domain(black_box(&h)).unwrap())
    });
    group.bench_function("sequential-loop", |b| {
        let diamonds = enumerate_diamonds(&h).unwrap();
        b.iter(|| {
            let mut passed = 0usize;
            for f in &diamonds {
                let w = realize_diamond(&h, f).unwrap();
                if check_pmhs(&w).passed() && diamond_of(&w).unwrap() == *f {
                    passed += 1;
                }
            }
            black_box(passed)
        })
    });
    group.finish();
}

fn bench_enumeration(c: &mut Criterion) {
    let h = HodgeNumbers::from_row(&[3, 6, 3]);
    c.bench_function("enumerate-3-6-3", |b| {
        b.iter(|| enumerate_diamonds(black_box(&h)).unwrap().len())
    });
}

criterion_group!(
    benches,
    bench_relation_digraph,
    bench_verify_domain,
    bench_enumeration
);
criterion_main!(benches);
