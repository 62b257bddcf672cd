//! Seeded generators for the sample classes used by verification suites.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::lattice::ChernClass;
use crate::series::{rat, Rational};
use crate::transform::CurveClass;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A rational with numerator in `[−bound, bound]` and denominator in `1..=den`.
pub fn small_rational<R: Rng>(rng: &mut R, bound: i64, den: i64) -> Rational {
    rat(rng.gen_range(-bound..=bound), rng.gen_range(1..=den))
}

/// A class with small rational coordinates; `xi2` is left zero unless
/// `with_xi2` is set.
pub fn random_class<R: Rng>(rng: &mut R, with_xi2: bool) -> ChernClass {
    let xi2 = if with_xi2 { small_rational(rng, 6, 3) } else { rat(0, 1) };
    ChernClass::new(
        small_rational(rng, 6, 4),
        small_rational(rng, 6, 4),
        small_rational(rng, 6, 4),
        xi2,
        small_rational(rng, 6, 4),
    )
}

pub fn random_classes(count: usize, seed: u64, with_xi2: bool) -> Vec<ChernClass> {
    let mut r = rng(seed);
    (0..count).map(|_| random_class(&mut r, with_xi2)).collect()
}

pub fn random_curve_classes(count: usize, seed: u64) -> Vec<CurveClass> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| CurveClass::new(r.gen_range(-50..=50), r.gen_range(-50..=50)))
        .collect()
}
