//! Default (rayon when the `parallel` feature is on) against the forced
//! sequential path, on the three hot loops: grading checks, classification
//! and counting by realization.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use divgrad::classify::{classify, CaseTag};
use divgrad::group::{Group, Subgroup};
use divgrad::par;
use divgrad::realize::{canonical_representative, count_by_realization};
use divgrad::scalar::Kind;

fn bench_check_grading(c: &mut Criterion) {
    let a = canonical_representative(CaseTag::C3b, 2, None).unwrap();
    let mut g = c.benchmark_group("check_grading 3b m=2");
    g.sample_size(10);
    g.bench_function("default", |b| b.iter(|| black_box(a.check_grading().is_ok())));
    g.bench_function("sequential", |b| b.iter(|| par::sequential(|| black_box(a.check_grading().is_ok()))));
    g.finish();
}

fn bench_classify(c: &mut Criterion) {
    let a = canonical_representative(CaseTag::C2d, 2, None).unwrap();
    let mut g = c.benchmark_group("classify 2d m=2");
    g.sample_size(10);
    g.bench_function("default", |b| b.iter(|| black_box(classify(&a).unwrap())));
    g.bench_function("sequential", |b| b.iter(|| par::sequential(|| black_box(classify(&a).unwrap()))));
    g.finish();
}

fn bench_count(c: &mut Criterion) {
    let t = Subgroup::full(Group::elementary(2));
    let mut g = c.benchmark_group("count_by_realization R dim 1 on Z2^2");
    g.sample_size(10);
    g.bench_function("default", |b| b.iter(|| black_box(count_by_realization(Kind::R, 1, &t).unwrap())));
    g.bench_function("sequential", |b| {
        b.iter(|| par::sequential(|| black_box(count_by_realization(Kind::R, 1, &t).unwrap())))
    });
    g.finish();
}

criterion_group!(benches, bench_check_grading, bench_classify, bench_count);
criterion_main!(benches);
