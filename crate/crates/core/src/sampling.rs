//! Seed-deterministic tuple sampling.
//!
//! The stream is ChaCha8 (`rand_chacha::ChaCha8Rng::seed_from_u64(seed)`), a
//! counter-based generator. A tuple is drawn coordinate by coordinate with
//! `gen_range(lo..2^n)`, where `lo` is 1 when zero coordinates are excluded
//! and 0 otherwise. Tuples are produced sequentially before any parallel
//! evaluation, so results never depend on the worker count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::Elem;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn sample_tuples(n: u32, arity: usize, nonzero: bool, count: usize, seed: u64) -> Vec<Vec<Elem>> {
    let mut r = rng(seed);
    let lo: Elem = if nonzero { 1 } else { 0 };
    let hi: Elem = 1 << n;
    (0..count)
        .map(|_| (0..arity).map(|_| r.gen_range(lo..hi)).collect())
        .collect()
}

/// Random lookup table with values in GF(2^n).
pub fn random_lut(n: u32, seed: u64) -> Vec<Elem> {
    let mut r = rng(seed);
    (0..1u32 << n).map(|_| r.gen_range(0..1u32 << n)).collect()
}

/// Random permutation of GF(2^n) (Fisher-Yates).
pub fn random_permutation(n: u32, seed: u64) -> Vec<Elem> {
    use rand::seq::SliceRandom;
    let mut r = rng(seed);
    let mut v: Vec<Elem> = (0..1u32 << n).collect();
    v.shuffle(&mut r);
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_in_range() {
        let a = sample_tuples(6, 4, true, 100, 7);
        let b = sample_tuples(6, 4, true, 100, 7);
        assert_eq!(a, b);
        assert!(a.iter().flatten().all(|&v| (1..64).contains(&v)));
        assert_ne!(a, sample_tuples(6, 4, true, 100, 8));
        let mut p = random_permutation(5, 3);
        p.sort_unstable();
        assert_eq!(p, (0..32).collect::<Vec<_>>());
    }
}
