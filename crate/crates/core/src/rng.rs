//! Seedable, portable randomness.
//!
//! Every stochastic operation in this crate takes an explicit 64-bit seed and
//! draws from its own ChaCha8 stream, so identical inputs reproduce identical
//! results across runs and platforms. Floats and bounded integers are built
//! from raw `next_u64` output rather than distribution adapters, which pins
//! the exact bit-level behaviour to this crate instead of a dependency.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The one generator used everywhere.
pub type SimRng = ChaCha8Rng;

/// Stream for the given seed.
pub fn rng_from_seed(seed: u64) -> SimRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// splitmix64 finalizer; a bijection on `u64`.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Work-item seed derivation: `base ^ mix(mix(a) + b)`.
///
/// Used by the sweep runner with `a` = alpha index (offset by one; zero is
/// reserved for paired runs) and `b` = realization index, and by other
/// multi-trial operations that need independent per-trial streams.
pub fn derive_seed(base: u64, a: u64, b: u64) -> u64 {
    base ^ mix(mix(a).wrapping_add(b))
}

/// Uniform in `[0, 1)` with 53 random bits.
pub fn uniform_f64(rng: &mut SimRng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Uniform in `(0, 1]`; safe to feed to `ln`.
pub fn uniform_f64_open(rng: &mut SimRng) -> f64 {
    ((rng.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Unbiased uniform index in `[0, bound)` (Lemire widening-multiply rejection).
pub fn gen_index(rng: &mut SimRng, bound: usize) -> usize {
    assert!(bound > 0, "gen_index bound must be positive");
    let b = bound as u64;
    let threshold = b.wrapping_neg() % b;
    loop {
        let m = (rng.next_u64() as u128) * (b as u128);
        if (m as u64) >= threshold {
            return (m >> 64) as usize;
        }
    }
}

/// `k` distinct indices from `[0, n)` via partial Fisher-Yates, in draw order.
pub fn sample_distinct(rng: &mut SimRng, n: usize, k: usize) -> Vec<usize> {
    assert!(k <= n, "cannot sample {k} distinct values from {n}");
    let mut pool: Vec<usize> = (0..n).collect();
    for i in 0..k {
        let j = i + gen_index(rng, n - i);
        pool.swap(i, j);
    }
    pool.truncate(k);
    pool
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_seeds_differ_across_lanes() {
        let base = 42;
        let a = derive_seed(base, 1, 0);
        let b = derive_seed(base, 1, 1);
        let c = derive_seed(base, 2, 0);
        assert_ne!(a, b);
        assert_ne!(a, c);
        assert_ne!(b, c);
        // Stable across calls.
        assert_eq!(a, derive_seed(base, 1, 0));
    }

    #[test]
    fn uniform_in_range() {
        let mut rng = rng_from_seed(7);
        for _ in 0..10_000 {
            let u = uniform_f64(&mut rng);
            assert!((0.0..1.0).contains(&u));
            let v = uniform_f64_open(&mut rng);
            assert!(v > 0.0 && v <= 1.0);
        }
    }

    #[test]
    fn gen_index_in_bounds() {
        let mut rng = rng_from_seed(3);
        for bound in [1usize, 2, 3, 17, 5000] {
            for _ in 0..1000 {
                assert!(gen_index(&mut rng, bound) < bound);
            }
        }
    }

    #[test]
    fn sample_distinct_is_distinct() {
        let mut rng = rng_from_seed(11);
        for _ in 0..100 {
            let s = sample_distinct(&mut rng, 20, 7);
            assert_eq!(s.len(), 7);
            let mut sorted = s.clone();
            sorted.sort_unstable();
            sorted.dedup();
            assert_eq!(sorted.len(), 7);
        }
        // k == n is a full permutation.
        let all = sample_distinct(&mut rng, 5, 5);
        let mut sorted = all.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![0, 1, 2, 3, 4]);
    }
}
