//! Keyed random streams for reproducible parallel sampling.
//!
//! A stream is identified by `(master_seed, stream_index)`. The seed keys a
//! ChaCha8 generator and the index selects one of its 2⁶⁴ independent
//! streams. Child streams (one per work chunk) are derived from the parent's
//! identity, never from its position, so a chunk's numbers do not depend on
//! which thread runs it or in what order.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Recorded in every report so a run can be replayed with the same generator.
pub const GENERATOR_ID: &str =
    "rand_chacha 0.9 ChaCha8Rng; key = seed_from_u64(master_seed), stream = stream_index; chunk streams keyed by splitmix64(master_seed ^ splitmix64(stream_index))";

const TWO_POW_MINUS_53: f64 = 1.0 / 9_007_199_254_740_992.0;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[derive(Debug, Clone)]
pub struct RngStream {
    master_seed: u64,
    stream_index: u64,
    inner: ChaCha8Rng,
}

impl RngStream {
    pub fn new(master_seed: u64, stream_index: u64) -> RngStream {
        let mut inner = ChaCha8Rng::seed_from_u64(master_seed);
        inner.set_stream(stream_index);
        RngStream {
            master_seed,
            stream_index,
            inner,
        }
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    pub fn stream_index(&self) -> u64 {
        self.stream_index
    }

    /// A child stream determined by this stream's identity and `child`.
    pub fn split(&self, child: u64) -> RngStream {
        let key = splitmix64(self.master_seed ^ splitmix64(self.stream_index));
        RngStream::new(key, child)
    }

    /// Uniform draw from the open interval `(0, 1)`.
    ///
    /// Never returns 0 or 1, so `u < p` is always true for `p = 1` and always
    /// false for any `p` below `2⁻⁵⁴`.
    pub fn open_unit(&mut self) -> f64 {
        ((self.inner.next_u64() >> 11) as f64 + 0.5) * TWO_POW_MINUS_53
    }

    pub fn coin(&mut self) -> bool {
        self.inner.next_u64() >> 63 == 1
    }
}

impl RngCore for RngStream {
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
