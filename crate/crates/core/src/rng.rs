//! Seeded randomness. Every random choice in the crate goes through ChaCha8
//! seeded from a `u64`, so reports are reproducible from their seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactalg::Q;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform integer in [-k, k] as a rational.
pub fn small_int(rng: &mut ChaCha8Rng, k: i64) -> Q {
    Q::from_integer(rng.random_range(-k..=k).into())
}

/// A rational a/b with |a| ≤ k and 1 ≤ b ≤ k.
pub fn small_rational(rng: &mut ChaCha8Rng, k: i64) -> Q {
    let a: i64 = rng.random_range(-k..=k);
    let b: i64 = rng.random_range(1..=k);
    Q::new(a.into(), b.into())
}
