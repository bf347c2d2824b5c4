//! Seeded randomness shared by the matrix and graph samplers.
//!
//! Every random object in this crate is drawn from [`ChaCha8Rng`] seeded with
//! `seed_from_u64`. Random bits are consumed least-significant first from
//! successive `next_u64` outputs, so a given seed yields the same matrix or
//! graph on every platform and build.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Name recorded in reports next to every seed.
pub const GENERATOR_NAME: &str = "chacha8/rand_chacha-0.3/seed_from_u64";

/// Seed for the deterministic generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RngSeed(pub u64);

impl RngSeed {
    pub fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }

    /// Seed for trial `trial` of the sweep point `n` under this master seed.
    ///
    /// `mix(master, n, trial) = s(s(s(master) ^ n) ^ trial)` where `s` is the
    /// SplitMix64 finalizer. Any single trial can be re-run from its triple.
    pub fn derive(self, n: u64, trial: u64) -> RngSeed {
        RngSeed(splitmix64(splitmix64(splitmix64(self.0) ^ n) ^ trial))
    }
}

impl From<u64> for RngSeed {
    fn from(v: u64) -> Self {
        RngSeed(v)
    }
}

impl std::fmt::Display for RngSeed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// SplitMix64 output function (Steele, Lea, Flood).
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Fair coin flips pulled 64 at a time from the underlying generator.
pub(crate) struct BitStream<R> {
    rng: R,
    word: u64,
    left: u32,
}

impl<R: RngCore> BitStream<R> {
    pub(crate) fn new(rng: R) -> Self {
        BitStream { rng, word: 0, left: 0 }
    }

    pub(crate) fn next_bit(&mut self) -> bool {
        if self.left == 0 {
            self.word = self.rng.next_u64();
            self.left = 64;
        }
        let bit = self.word & 1 == 1;
        self.word >>= 1;
        self.left -= 1;
        bit
    }
}
