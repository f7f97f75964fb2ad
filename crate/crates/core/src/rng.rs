//! Seed derivation and counter-based randomness.
//!
//! Every random decision in the crate flows from one `u64` seed. Streams are
//! derived with [`derive_seed`]; edge coin flips use [`pair_uniform`], a
//! stateless function of `(seed, i, j)`, so the outcome of a pair never
//! depends on the order in which pairs are visited.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The generator used for every seeded stream in the crate.
pub type StreamRng = ChaCha8Rng;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer.
#[inline]
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derive an independent child seed from `seed` and a `(domain, index)` tag.
#[inline]
pub fn derive_seed(seed: u64, domain: u64, index: u64) -> u64 {
    splitmix64(splitmix64(seed ^ splitmix64(domain)) ^ splitmix64(index.wrapping_mul(GOLDEN)))
}

pub fn stream(seed: u64, domain: u64, index: u64) -> StreamRng {
    StreamRng::seed_from_u64(derive_seed(seed, domain, index))
}

/// Map 64 random bits to `[0, 1)` with 53 bits of precision.
#[inline]
pub fn unit_f64(bits: u64) -> f64 {
    (bits >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Uniform in `[0, 1)` keyed by `(seed, min(i,j), max(i,j))`.
#[inline]
pub fn pair_uniform(seed: u64, i: u64, j: u64) -> f64 {
    let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
    let h = splitmix64(seed ^ 0xA076_1D64_78BD_642F);
    let h = splitmix64(h ^ lo.wrapping_mul(0xE703_7ED1_A0B4_28DB));
    let h = splitmix64(h ^ hi.wrapping_mul(0x8EBC_6AF0_9C88_C6E3));
    unit_f64(h)
}

// Stream domains. Kept in one place so two subsystems never share a stream.
pub(crate) const DOMAIN_SLOT: u64 = 1;
pub(crate) const DOMAIN_EDGE: u64 = 2;
pub(crate) const DOMAIN_BLOCKED: u64 = 3;
pub(crate) const DOMAIN_CUT_RESTART: u64 = 4;
pub(crate) const DOMAIN_ALIGN_RESTART: u64 = 5;
pub(crate) const DOMAIN_SNAPSHOT: u64 = 6;
pub(crate) const DOMAIN_REPETITION: u64 = 7;
pub(crate) const DOMAIN_KRYLOV: u64 = 8;
