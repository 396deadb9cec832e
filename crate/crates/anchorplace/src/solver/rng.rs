//! Deterministic per-person random source.
//!
//! Each person gets an independent stream derived from the master seed and
//! their id, so results do not depend on how persons are scheduled across
//! threads.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Stream-cipher RNG with a reproducible seed.
#[derive(Debug, Clone)]
pub struct SeededRng(ChaCha8Rng);

impl SeededRng {
    /// Derives the person's stream from `hash(master_seed, person_id)`
    /// (FNV-1a over the seed bytes followed by the id bytes — any stable
    /// mixing would do, but std hashers are randomized per process).
    pub fn for_person(master_seed: u64, person_id: &str) -> Self {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for byte in master_seed
            .to_le_bytes()
            .iter()
            .chain(person_id.as_bytes().iter())
        {
            h ^= u64::from(*byte);
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
        Self::from_seed_value(h)
    }

    pub fn from_seed_value(seed: u64) -> Self {
        Self(ChaCha8Rng::seed_from_u64(seed))
    }
}

impl RngCore for SeededRng {
    fn next_u32(&mut self) -> u32 {
        self.0.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.0.fill_bytes(dest)
    }
}
