//! Random streams.
//!
//! Every random draw comes from ChaCha8 keyed by the master seed (expanded
//! with `SeedableRng::seed_from_u64`). The 64-bit ChaCha stream id selects
//! the substream: trial `i` of a scenario reads stream `i`, and a layout that
//! is shared by all trials reads [`LAYOUT_STREAM`]. Any single trial can
//! therefore be replayed in isolation, and results do not depend on how
//! trials are scheduled across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

/// Stream reserved for a layout drawn once per scenario.
pub const LAYOUT_STREAM: u64 = u64::MAX;

/// Stream used by standalone layout generation.
pub const DEFAULT_STREAM: u64 = 0;

pub fn substream(master_seed: u64, stream: u64) -> StreamRng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(stream);
    rng
}
