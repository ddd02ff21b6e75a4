//! Shared inputs for the criterion benchmarks.

use steiner_ecc::harness::bench_corpus;
use steiner_ecc::Tree;

/// Sizes timed for the quadratic algorithm.
pub const FAST_SIZES: [usize; 4] = [500, 1000, 2000, 4000];

/// Sizes timed for the brute-force oracles.
pub const ORACLE_SIZES: [usize; 3] = [50, 100, 200];

pub const SEED: u64 = 2024;

/// One seeded random tree per size, identical to the first trial of the
/// timing harness with the same seed.
pub fn trees(sizes: &[usize]) -> Vec<(usize, Tree)> {
    bench_corpus(sizes, 1, SEED)
        .into_iter()
        .map(|(n, _, t)| (n, t))
        .collect()
}
