//! Seed handling.
//!
//! Two kinds of randomness are used:
//!
//! - Sequential streams (latent positions, subset draws) come from
//!   [`ChaCha8Rng`] seeded with a 64-bit seed.
//! - Edge draws are counter-based: the uniform variate for pair `(i, j)` is a
//!   pure function of `(seed, i * n + j)`, so a graph does not depend on the
//!   order in which its edges are generated.
//!
//! Mixing uses the SplitMix64 finalizer throughout.

pub use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

/// SplitMix64 output function.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Combines a seed with a stream index.
#[inline]
pub fn split(seed: u64, index: u64) -> u64 {
    mix64(mix64(seed) ^ index.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA))
}

/// Uniform variate in `[0, 1)` for position `counter` of the stream `seed`,
/// with 53 bits of precision.
#[inline]
pub fn counter_uniform(seed: u64, counter: u64) -> f64 {
    (split(seed, counter) >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Seed for one replicate of an experiment.
///
/// FNV-1a over the experiment name, then SplitMix64 steps over
/// `(master, n, replicate)`. Adding new `n` values or replicates never
/// changes the seeds of existing ones.
pub fn derive_seed(master: u64, experiment: &str, n: u64, replicate: u64) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in experiment.as_bytes() {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    let s = split(master, h);
    let s = split(s, n);
    split(s, replicate)
}

pub fn stream(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
