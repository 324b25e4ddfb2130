//! Seeded randomness. Every random quantity in the crate comes from a
//! xoshiro256++ generator (a 64-bit-output linear shift-register generator)
//! whose state is expanded from an explicit `u64` seed with SplitMix64.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_distr::StandardNormal;
use rand_xoshiro::Xoshiro256PlusPlus;

pub type SeededRng = Xoshiro256PlusPlus;

pub fn seeded(seed: u64) -> SeededRng {
    Xoshiro256PlusPlus::seed_from_u64(seed)
}

/// Standard complex Gaussian: real and imaginary parts `N(0, 1/2)`.
pub fn complex_gaussian(rng: &mut SeededRng) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Derives an independent stream seed, e.g. per trial.
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    // SplitMix64 finaliser
    let mut z = seed ^ stream.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn random_matrix(rows: usize, cols: usize, seed: u64) -> super::ComplexMatrix {
    let mut rng = seeded(seed);
    let data: Vec<Complex64> = (0..rows * cols).map(|_| complex_gaussian(&mut rng)).collect();
    super::ComplexMatrix::from_dense(rows, cols, &data).expect("sizes agree")
}
