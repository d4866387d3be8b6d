//! Deterministic random sources.
//!
//! Every random draw in the crate comes from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded through
//! `SeedableRng::seed_from_u64`. The algorithm and its seed expansion are fixed and
//! platform-independent, so a seed reproduces the same stream on every machine. Independent
//! sub-streams are derived with [`split`], which selects a ChaCha stream id without touching the
//! key.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type DeterministicRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> DeterministicRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Sub-stream `stream` of the generator keyed by `seed`. Distinct stream ids never overlap.
pub fn split(seed: u64, stream: u64) -> DeterministicRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
