//! Seeded random instances. Every generator draws from a `ChaCha8Rng`
//! seeded with `seed_from_u64`, so instances are identical across
//! platforms and runs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::matrices::{NodeVector, WeightVector};

/// Smallest separation between consecutive random nodes.
pub const MIN_NODE_GAP: f64 = 1e-3;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `r` sorted uniform samples on `[0, r]`, redrawn until consecutive
/// nodes are at least `MIN_NODE_GAP` apart.
pub fn random_nodes<G: Rng>(rng: &mut G, r: usize) -> NodeVector {
    let hi = r.max(1) as f64;
    loop {
        let mut xs: Vec<f64> = (0..r).map(|_| rng.random_range(0.0..hi)).collect();
        xs.sort_by(f64::total_cmp);
        if xs.windows(2).all(|p| p[1] - p[0] >= MIN_NODE_GAP) {
            return NodeVector::new(xs).expect("separated nodes are strictly increasing");
        }
    }
}

/// Weights uniform on `[−2, −0.1] ∪ [0.1, 2]`.
pub fn random_weights<G: Rng>(rng: &mut G, r: usize) -> WeightVector {
    let cs = (0..r)
        .map(|_| {
            let m = rng.random_range(0.1..=2.0);
            if rng.random_bool(0.5) {
                m
            } else {
                -m
            }
        })
        .collect();
    WeightVector::new(cs).expect("finite weights")
}

/// Nodes and weights of one instance.
pub fn random_instance(seed: u64, r: usize) -> (NodeVector, WeightVector) {
    let mut g = rng(seed);
    let x = random_nodes(&mut g, r);
    let c = random_weights(&mut g, r);
    (x, c)
}

/// Size drawn uniformly from `lo..=hi` for `seed`, independent of the
/// instance stream.
pub fn random_size(seed: u64, lo: usize, hi: usize) -> usize {
    rng(seed ^ 0x9e37_79b9_7f4a_7c15).random_range(lo..=hi)
}

/// Even size drawn uniformly from the even numbers in `lo..=hi`.
pub fn random_even_size(seed: u64, lo: usize, hi: usize) -> usize {
    let k = random_size(seed, lo.div_ceil(2), hi / 2);
    2 * k
}

/// Dominance pair with the same nodes: `c_small = s ⊙ c`, `s_i ∈ [0.3, 1]`.
pub fn shrink_pair(seed: u64, r: usize) -> (NodeVector, WeightVector, WeightVector) {
    let mut g = rng(seed);
    let x = random_nodes(&mut g, r);
    let c = random_weights(&mut g, r);
    let small = c.values().iter().map(|ci| ci * g.random_range(0.3..=1.0)).collect();
    (x, WeightVector::new(small).expect("finite weights"), c)
}

/// Dominance pair with the same weights: nodes `t·x₀` against `x₀`,
/// `t ∈ [1.05, 3]`.
pub fn spread_pair(seed: u64, r: usize) -> (NodeVector, NodeVector, WeightVector) {
    let mut g = rng(seed);
    let x0 = random_nodes(&mut g, r);
    let c = random_weights(&mut g, r);
    let t = g.random_range(1.05..=3.0);
    (x0.scaled(t).expect("positive scale"), x0, c)
}

/// Farey fractions `a/q` in `[0, 1)` with `q ≤ order`, sorted.
pub fn farey_nodes(order: u64) -> NodeVector {
    let mut xs: Vec<(u64, u64)> = Vec::new();
    for q in 1..=order {
        for a in 0..q {
            if gcd(a, q) == 1 {
                xs.push((a, q));
            }
        }
    }
    xs.sort_by(|l, r| (l.0 * r.1).cmp(&(r.0 * l.1)));
    NodeVector::new(xs.iter().map(|&(a, q)| a as f64 / q as f64).collect())
        .expect("distinct reduced fractions")
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
