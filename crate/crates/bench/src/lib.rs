//! Fixtures shared by the benchmarks.

use conical::random::{random_conical, rng, GradingParams};
use conical::{ConicalRing, GradedPolyRing, IntegerMatrix};

pub fn blowup() -> GradedPolyRing {
    GradedPolyRing::from_free_columns(2, &[vec![1, 0], vec![1, 0], vec![1, 1], vec![0, 1]], None).unwrap()
}

/// A square matrix with entries in `[-9, 9]`, deterministic in `seed`.
pub fn dense_matrix(n: usize, seed: u64) -> IntegerMatrix {
    let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    ((state >> 33) % 19) as i64 - 9
                })
                .collect()
        })
        .collect();
    IntegerMatrix::from_i64(&rows)
}

pub fn random_rings(count: usize, seed: u64, params: GradingParams) -> Vec<ConicalRing> {
    let mut r = rng(seed);
    (0..count).map(|_| random_conical(&mut r, params)).collect()
}
