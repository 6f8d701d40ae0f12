//! Compares the rayon-backed hot loops against the sequential fallback.
//!
//! Each group runs the same workload twice: `default` uses whatever thread
//! pool the `parallel` feature provides (the sequential code path when the
//! feature is disabled), `serial` pins the pool to a single thread via
//! [`par::run_with_threads`]. On a single-core host the two lanes are
//! expected to tie; the suite exists to measure the gap on real hardware and
//! to verify the fallback does not regress.

use criterion::{criterion_group, criterion_main, Criterion};
use hypercl_core::linalg::rat;
use hypercl_core::{par, symplectic, totaro, RatMatrix};

/// Deterministic dense matrix with small mixed-sign rational entries.
fn test_matrix(rows: usize, cols: usize) -> RatMatrix {
    let mut m = RatMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            let num = ((i * 31 + j * 17 + 3) % 13) as i64 - 6;
            let den = ((i * 7 + j * 5) % 4) as i64 + 1;
            m.set(i, j, rat(num, den));
        }
    }
    m
}

fn bench_row_reduction(c: &mut Criterion) {
    let m = test_matrix(48, 96);
    let mut group = c.benchmark_group("row-reduction");
    group.sample_size(20);
    group.bench_function("default", |b| b.iter(|| m.rank()));
    group.bench_function("serial", |b| {
        b.iter(|| par::run_with_threads(1, || m.rank()))
    });
    group.finish();
}

fn bench_spectral_differential(c: &mut Criterion) {
    let mut group = c.benchmark_group("spectral-differential");
    group.sample_size(20);
    group.bench_function("default", |b| {
        b.iter(|| totaro::d2_matrix(2, 4, 1, 1).rank())
    });
    group.bench_function("serial", |b| {
        b.iter(|| par::run_with_threads(1, || totaro::d2_matrix(2, 4, 1, 1).rank()))
    });
    group.finish();
}

fn bench_invariant_solve(c: &mut Criterion) {
    let mut group = c.benchmark_group("invariant-solve");
    group.sample_size(20);
    group.bench_function("default", |b| {
        b.iter(|| {
            symplectic::invariants_h2_cn(2, 3)
                .expect("solver runs")
                .dimension
        })
    });
    group.bench_function("serial", |b| {
        b.iter(|| {
            par::run_with_threads(1, || {
                symplectic::invariants_h2_cn(2, 3)
                    .expect("solver runs")
                    .dimension
            })
        })
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_row_reduction,
    bench_spectral_differential,
    bench_invariant_solve
);
criterion_main!(benches);
