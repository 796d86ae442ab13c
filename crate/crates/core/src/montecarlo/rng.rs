//! Deterministic random streams keyed by `(seed, grid_index, trial)`.
//!
//! Each stream is a ChaCha8 keystream: the 256-bit key is derived from the
//! seed and grid index, the 64-bit stream id is the trial index. Streams are
//! independent of the order in which they are created or consumed, so trials
//! can be scheduled on any number of threads.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Random stream for one trial of one grid point.
#[derive(Debug, Clone)]
pub struct TrialStream {
    inner: ChaCha8Rng,
}

impl TrialStream {
    pub fn new(seed: u64, grid_index: u64, trial: u64) -> Self {
        let mut key = [0u8; 32];
        let mut word = mix64(seed.wrapping_add(GOLDEN));
        word = mix64(word ^ grid_index.wrapping_mul(GOLDEN).wrapping_add(1));
        for chunk in key.chunks_exact_mut(8) {
            chunk.copy_from_slice(&word.to_le_bytes());
            word = mix64(word.wrapping_add(GOLDEN));
        }
        let mut inner = ChaCha8Rng::from_seed(key);
        inner.set_stream(trial);
        Self { inner }
    }
}

impl RngCore for TrialStream {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.inner.fill_bytes(dst)
    }
}

/// Uniform draw on `[0, 1)` with 53 random bits.
pub fn uniform01<R: RngCore + ?Sized>(rng: &mut R) -> f64 {
    const SCALE: f64 = 1.0 / (1u64 << 53) as f64;
    (rng.next_u64() >> 11) as f64 * SCALE
}
