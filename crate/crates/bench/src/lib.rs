//! Fixed inputs shared by the benchmarks.

use hilbert_core::{build_b, random, SkewMatrix};

/// `B(x, c)` for the seeded random instance of size `r`.
pub fn instance(seed: u64, r: usize) -> SkewMatrix {
    let (x, c) = random::random_instance(seed, r);
    build_b(&x, &c).expect("valid instance")
}
