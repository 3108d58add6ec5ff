//! Seeded random streams. Every randomized query owns one stream; child
//! streams are derived by drawing a fresh seed from the parent.

use rand::{Rng as _, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::{Fp, MODULUS};

/// A deterministic random stream: identical seeds yield identical streams.
#[derive(Clone, Debug)]
pub struct Rng {
    seed: u64,
    inner: ChaCha8Rng,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng {
            seed,
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// The seed this stream was created from.
    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Derives an independent child stream.
    pub fn fork(&mut self) -> Rng {
        Rng::new(self.inner.next_u64())
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform integer in `[lo, hi)`.
    pub fn below(&mut self, lo: usize, hi: usize) -> usize {
        self.inner.gen_range(lo..hi)
    }

    pub fn coin(&mut self, p: f64) -> bool {
        self.inner.gen_bool(p)
    }

    /// Uniform element of F_p.
    pub fn scalar(&mut self) -> Fp {
        Fp::new(self.inner.gen_range(0..MODULUS))
    }

    /// Uniform element of `[1, p - 1]`.
    pub fn nonzero_scalar(&mut self) -> Fp {
        Fp::new(self.inner.gen_range(1..MODULUS))
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        use rand::seq::SliceRandom;
        items.shuffle(&mut self.inner);
    }
}

/// Mixes a parent seed with an item index so that catalog items receive
/// independent streams regardless of scheduling order.
pub fn derive_seed(parent: u64, index: u64) -> u64 {
    parent ^ index
}
