use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ucs_bench::random_generators;
use ucs_core::constructions::{beta, block_upset_family, renaud_family, BlockUpsetParams};
use ucs_core::{canonical_masks, close_under_union, phi_search, SearchConfig};

fn closure(c: &mut Criterion) {
    let mut group = c.benchmark_group("closure");
    for m in [12u32, 16, 20] {
        let gens = random_generators(m, 12, 1);
        group.bench_with_input(BenchmarkId::from_parameter(m), &gens, |b, gens| {
            b.iter(|| close_under_union(black_box(gens), m).unwrap())
        });
    }
    group.finish();
}

fn union_closed_check(c: &mut Criterion) {
    let f = block_upset_family(&BlockUpsetParams::new(3, 5).unwrap()).unwrap();
    c.bench_function("is_union_closed/C_3_5", |b| b.iter(|| black_box(&f).is_union_closed()));
}

fn renaud(c: &mut Criterion) {
    let mut group = c.benchmark_group("renaud");
    for n in [56u64, 1000, 10_000] {
        group.bench_with_input(BenchmarkId::new("materialize", n), &n, |b, &n| b.iter(|| renaud_family(n).unwrap()));
    }
    group.bench_function("beta_1..=4096", |b| {
        b.iter(|| (2..=4096u64).map(|n| beta(n).unwrap().0).sum::<u64>())
    });
    group.finish();
}

fn canonical(c: &mut Criterion) {
    let f = close_under_union(&random_generators(8, 6, 3), 8).unwrap();
    c.bench_function("canonical_masks/random_8", |b| b.iter(|| canonical_masks(black_box(f.sets()))));
}

fn search(c: &mut Criterion) {
    let mut group = c.benchmark_group("phi_search");
    group.sample_size(10);
    for n in [7usize, 9, 10] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| phi_search(&SearchConfig::new(n)).unwrap().phi)
        });
    }
    group.finish();
}

criterion_group!(benches, closure, union_closed_check, renaud, canonical, search);
criterion_main!(benches);
