//! Splittable seeded streams.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Independent stream `stream` of the master `seed`.
pub fn stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Stream id for chunk `chunk` of experiment `tag`.
pub fn stream_id(tag: u32, chunk: u64) -> u64 {
    ((tag as u64) << 40) ^ chunk
}
