use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use motfilt_core::zeta::{count_weierstrass_points, special_value, CurveZeta};

fn point_counting(c: &mut Criterion) {
    let mut group = c.benchmark_group("count_weierstrass_points");
    for p in [101u64, 1009, 10007] {
        group.bench_with_input(BenchmarkId::from_parameter(p), &p, |b, &p| {
            b.iter(|| count_weierstrass_points(black_box(p), 2, 3).unwrap())
        });
    }
    group.finish();
}

fn special_values(c: &mut Criterion) {
    let z = CurveZeta::from_a_coeffs(7, &[1, 3]).unwrap();
    c.bench_function("special_value/genus2/n=-3..5", |b| {
        b.iter(|| {
            for n in -3..=5 {
                black_box(special_value(&z, n));
            }
        })
    });
    let v = special_value(&z, 1).value();
    c.bench_function("render/50_digits", |b| b.iter(|| black_box(&v).render(50)));
}

criterion_group!(benches, point_counting, special_values);
criterion_main!(benches);
