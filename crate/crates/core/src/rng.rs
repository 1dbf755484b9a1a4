//! Deterministic derivation of independent random streams from one master seed.
//!
//! Every stochastic decision in a run draws from a stream keyed by the master
//! seed plus a small tuple of coordinates (stream tag, generation, individual).
//! Streams never depend on evaluation order, so parallel evaluation and
//! checkpoint resumption reproduce a run bit for bit.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Stream tags; keep these stable, checkpoints depend on them.
pub(crate) const STREAM_INIT: u64 = 1;
pub(crate) const STREAM_NETWORK: u64 = 2;
pub(crate) const STREAM_ENVIRONMENT: u64 = 3;
pub(crate) const STREAM_REPRODUCTION: u64 = 4;
pub(crate) const STREAM_RUN: u64 = 5;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Mixes `coords` into `master` to produce a child seed.
pub fn derive_seed(master: u64, coords: &[u64]) -> u64 {
    coords
        .iter()
        .fold(splitmix64(master), |acc, &c| splitmix64(acc ^ splitmix64(c)))
}

pub fn stream(master: u64, coords: &[u64]) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(master, coords))
}

/// Uniform draw in `[0, 1)`. Always consumes exactly one 64-bit word.
#[inline]
pub(crate) fn unit<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.random::<f64>()
}

/// Maps a unit draw onto an index in `0..len`.
#[inline]
pub(crate) fn index_from_unit(u: f64, len: usize) -> usize {
    debug_assert!(len > 0);
    ((u * len as f64) as usize).min(len - 1)
}
