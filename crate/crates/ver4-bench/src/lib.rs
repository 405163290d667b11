//! Shared helpers for the benchmark targets.

use ver4_core::f2::{BitMatrix, F2Vec};

/// A deterministic pseudo-random bit matrix for the linear-algebra benches.
pub fn random_matrix(rows: usize, cols: usize, seed: u64) -> BitMatrix {
    let mut state = seed | 1;
    BitMatrix::from_fn(rows, cols, |_, _| {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (state >> 33) & 1 == 1
    })
}

pub fn random_vector(len: usize, seed: u64) -> F2Vec {
    let mut state = seed | 1;
    F2Vec::from_bits(
        &(0..len)
            .map(|_| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (state >> 33) & 1 == 1
            })
            .collect::<Vec<_>>(),
    )
}
