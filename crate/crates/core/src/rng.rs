//! Seed expansion. A run-level seed feeds one ChaCha8 generator per
//! component; components draw from disjoint streams of the same key so adding
//! draws in one never shifts another.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[repr(u64)]
pub enum Stream {
    Builder = 1,
    Additive = 2,
    Generator = 3,
}

/// `ChaCha8Rng::seed_from_u64(seed)` switched to stream `stream as u64`.
pub fn stream_rng(seed: u64, stream: Stream) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream as u64);
    rng
}
