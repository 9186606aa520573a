//! Stable seed derivation and content hashing.
//!
//! Sweeps derive one seed per (algorithm, sweep value, trial) so trials are
//! independent of execution order. `std::hash` is deliberately avoided: these
//! values land in result files and must not change across Rust releases.

/// Weyl increment used by splitmix64.
const GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

/// splitmix64 finalizer; bijective on u64.
pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(GAMMA);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Folds `parts` into `base`, one splitmix64 round per part.
pub fn derive_seed(base: u64, parts: &[u64]) -> u64 {
    let mut h = splitmix64(base);
    for &p in parts {
        h = splitmix64(h ^ p);
    }
    h
}

/// FNV-1a over raw bytes; used for algorithm tags and config hashes.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x1000_0000_01b3);
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derive_is_deterministic_and_part_sensitive() {
        let a = derive_seed(42, &[1, 2, 3]);
        let b = derive_seed(42, &[1, 2, 3]);
        assert_eq!(a, b);
        assert_ne!(a, derive_seed(42, &[1, 3, 2]));
        assert_ne!(a, derive_seed(43, &[1, 2, 3]));
    }

    #[test]
    fn fnv_distinguishes_algorithm_names() {
        assert_ne!(fnv1a64(b"mega"), fnv1a64(b"random_search"));
        assert_ne!(fnv1a64(b"mega"), fnv1a64(b"classic_ga"));
        // Reference vector for the empty string, to pin the constants.
        assert_eq!(fnv1a64(b""), 0xcbf2_9ce4_8422_2325);
    }
}
