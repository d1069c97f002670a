//! Seeded workloads shared by the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ucs_core::SetMask;

/// `count` random non-empty sets over `[m]`, reproducible from `seed`.
pub fn random_generators(m: u32, count: usize, seed: u64) -> Vec<SetMask> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let full = SetMask::full(m).bits();
    (0..count)
        .map(|_| loop {
            let bits = rng.gen::<u64>() & full;
            if bits != 0 {
                break SetMask::from_bits(bits);
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_reproducible_and_in_range() {
        let a = random_generators(10, 20, 7);
        assert_eq!(a, random_generators(10, 20, 7));
        assert!(a.iter().all(|s| !s.is_empty() && s.fits(10)));
    }
}
