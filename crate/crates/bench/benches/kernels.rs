//! Microbenchmarks for the arithmetic kernels under everything else:
//! Laurent multiplication, exact division, and q-binomial table fills.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use std::hint::black_box;

use qschmidt_bench::{dense_poly, mid_qbinom};
use qschmidt_core::QBinomTable;

fn laurent_mul(c: &mut Criterion) {
    let a = dense_poly(-40, 200);
    let b = dense_poly(-15, 150);
    c.bench_function("laurent_mul_200x150", |bench| bench.iter(|| black_box(&a) * black_box(&b)));
}

fn laurent_exact_div(c: &mut Criterion) {
    let a = dense_poly(-40, 200);
    let b = mid_qbinom();
    let product = &a * &b;
    c.bench_function("laurent_exact_div_product_by_factor", |bench| {
        bench.iter(|| black_box(&product).exact_div(black_box(&b)).unwrap())
    });
}

fn qbinom_fill(c: &mut Criterion) {
    c.bench_function("qbinom_fill_n24", |bench| {
        bench.iter_batched(
            QBinomTable::new,
            |mut qb| {
                for k in 0..=24 {
                    black_box(qb.qbinom(24, k));
                }
                qb
            },
            BatchSize::SmallInput,
        )
    });
}

criterion_group!(kernels, laurent_mul, laurent_exact_div, qbinom_fill);
criterion_main!(kernels);
