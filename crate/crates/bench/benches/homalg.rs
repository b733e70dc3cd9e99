use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use motfilt_bench::dense_matrix;
use motfilt_core::homalg::{lemma_multadd_check, smith_normal_form, ZComplex};
use motfilt_core::motfilt::verify_cinf_for_ring;
use motfilt_core::NumberRing;

fn snf(c: &mut Criterion) {
    let mut group = c.benchmark_group("smith_normal_form");
    for n in [4, 8, 16, 24] {
        let m = dense_matrix(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| {
            b.iter(|| smith_normal_form(black_box(m)))
        });
    }
    group.finish();
}

fn lemma(c: &mut Criterion) {
    let complex = ZComplex::two_term(0, dense_matrix(6));
    c.bench_function("lemma_multadd_check/6x6/j=1..8", |b| {
        b.iter(|| {
            for j in 1..=8 {
                black_box(lemma_multadd_check(&complex, j).unwrap());
            }
        })
    });
}

fn cinf(c: &mut Criterion) {
    let r = NumberRing::from_coeffs(&[1, 1, 1, 1, 1], "Q(zeta_5)").unwrap();
    c.bench_function("verify_cinf_for_ring/Q(zeta_5)/n=8", |b| {
        b.iter(|| verify_cinf_for_ring(black_box(&r), 8).unwrap())
    });
}

criterion_group!(benches, snf, lemma, cinf);
criterion_main!(benches);
