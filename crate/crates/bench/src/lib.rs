//! Shared inputs for the benchmarks.

/// Levels with varied factorization shapes: primes, prime powers, highly
/// composite and squarefree.
pub const SAMPLE_LEVELS: [u64; 8] = [11, 4096, 13860, 30030, 99991, 131072, 720720, 999983];
