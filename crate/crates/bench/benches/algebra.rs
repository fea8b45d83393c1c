use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use lralg::catalog::{catalog_verify, counterexample_g13};
use lralg::constraints::{buchberger_certify, generate_lr_system, structural_reduce, Limits};
use lralg::constructions::{filiform_lr, free3_lr, FiliformSpec};
use lralg::{int, verify_axioms, Matrix};

fn bench_axioms(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_axioms");
    for n in [2usize, 3] {
        let a = free3_lr(n).unwrap();
        group.bench_with_input(BenchmarkId::new("free3", a.dim()), &a, |b, a| {
            b.iter(|| verify_axioms(a.lie(), a.product_tensor()))
        });
    }
    for n in [6usize, 9] {
        let row: Vec<_> = (0..n - 4).map(|i| int(i as i64 + 1)).collect();
        let a = filiform_lr(&FiliformSpec::from_top_row(n, &row).unwrap()).unwrap();
        group.bench_with_input(BenchmarkId::new("filiform", n), &a, |b, a| {
            b.iter(|| verify_axioms(a.lie(), a.product_tensor()))
        });
    }
    group.finish();
}

fn bench_catalog(c: &mut Criterion) {
    c.bench_function("catalog_verify/n3", |b| {
        b.iter(|| catalog_verify(Some("n3/")))
    });
}

fn bench_series(c: &mut Criterion) {
    let g = counterexample_g13();
    c.bench_function("series/g13", |b| {
        b.iter(|| {
            (
                g.lower_central_series().dims(),
                g.upper_central_series().dims(),
            )
        })
    });
}

fn bench_constraints(c: &mut Criterion) {
    let g = counterexample_g13();
    let mut group = c.benchmark_group("constraints");
    group.sample_size(10);
    group.bench_function("generate/g13", |b| {
        b.iter(|| generate_lr_system(black_box(&g)))
    });
    let s = generate_lr_system(&g);
    group.bench_function("reduce/g13", |b| b.iter(|| structural_reduce(&s, &g)));
    let r = structural_reduce(&s, &g);
    group.bench_function("certify/g13", |b| {
        b.iter(|| buchberger_certify(&r, &Limits::default()))
    });
    group.finish();
}

fn bench_linalg(c: &mut Criterion) {
    let m = Matrix::from_fn(24, 24, |i, j| int(((i * 7 + j * 3) % 11) as i64 - 5));
    c.bench_function("matrix/rank24", |b| b.iter(|| black_box(&m).rank()));
    c.bench_function("matrix/det24", |b| b.iter(|| black_box(&m).determinant()));
}

criterion_group!(
    benches,
    bench_axioms,
    bench_catalog,
    bench_series,
    bench_constraints,
    bench_linalg
);
criterion_main!(benches);
