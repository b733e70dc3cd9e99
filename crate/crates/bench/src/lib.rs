//! Criterion benchmarks for `motfilt-core`; see `benches/`.

use motfilt_core::IntMatrix;
use num_bigint::BigInt;

/// Deterministic dense `n x n` matrix with entries in `[-5, 5]`.
pub fn dense_matrix(n: usize) -> IntMatrix {
    let entries = (0..n * n)
        .map(|k| BigInt::from(((k / n) * 7 + (k % n) * 13 + (k * k) % 5) as i64 % 11 - 5))
        .collect();
    IntMatrix::from_vec(n, n, entries).expect("n * n entries")
}
