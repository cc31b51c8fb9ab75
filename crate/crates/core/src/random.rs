//! Seeded random instances with small integer entries.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactalg::{rat, RatMatrix};

/// Entries are drawn uniformly from this closed integer range.
pub const ENTRY_RANGE: (i64, i64) = (-2, 2);

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn int_matrix<R: Rng>(rng: &mut R, n: usize) -> RatMatrix {
    let data = (0..n * n).map(|_| rat(rng.gen_range(ENTRY_RANGE.0..=ENTRY_RANGE.1))).collect();
    RatMatrix::from_vec(n, n, data).expect("square shape")
}

pub fn int_diagonal<R: Rng>(rng: &mut R, n: usize) -> RatMatrix {
    let d: Vec<_> = (0..n).map(|_| rat(rng.gen_range(ENTRY_RANGE.0..=ENTRY_RANGE.1))).collect();
    RatMatrix::diag(&d)
}

/// Derives the seed of the `attempt`-th retry of `seed`.
pub fn retry_seed(seed: u64, attempt: u32) -> u64 {
    if attempt == 0 {
        seed
    } else {
        seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(u64::from(attempt))
    }
}
