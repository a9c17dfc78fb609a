//! Deterministic seed derivation.
//!
//! Every random stream in the crate is derived from a master seed through
//! `derive_seed(master, label, index)`. Separate concerns (plant noise, PSO,
//! CBO restarts, calibration episodes) use distinct labels, so changing the
//! settings of one concern never perturbs the random stream of another.
//! The rule is: hash the label with FNV-1a, then mix `master`, the label
//! hash and `index` through two rounds of SplitMix64.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h = FNV_OFFSET;
    for &b in bytes {
        h ^= u64::from(b);
        h = h.wrapping_mul(FNV_PRIME);
    }
    h
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derives a child seed from `(master, label, index)`.
pub fn derive_seed(master: u64, label: &str, index: u64) -> u64 {
    splitmix64(splitmix64(master ^ fnv1a(label.as_bytes())).wrapping_add(index))
}

/// A ChaCha stream for the derived seed.
pub fn stream(master: u64, label: &str, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(master, label, index))
}
