//! Seeded random instances for property tests and the verify suite.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::geometry::{is_essential, Arrangement, Hyperplane};
use crate::rational::{rat, ratio, Rat};

/// A rational in [−bound, bound] with denominator at most 97.
pub fn random_rational(rng: &mut ChaCha8Rng, bound: i64) -> Rat {
    let den = rng.gen_range(1..=97);
    let num = rng.gen_range(-bound * den..=bound * den);
    ratio(num, den)
}

/// An essential arrangement of `n` hyperplanes in ℝ^dim with small integer
/// coefficients. Requires n ≥ dim.
pub fn random_arrangement(rng: &mut ChaCha8Rng, dim: usize, n: usize) -> Arrangement {
    assert!(n >= dim && dim > 0, "need n >= dim > 0");
    loop {
        let hyperplanes: Vec<Hyperplane> = (0..n)
            .filter_map(|_| {
                let a: Vec<Rat> = (0..dim).map(|_| rat(rng.gen_range(-3..=3))).collect();
                Hyperplane::new(a, rat(rng.gen_range(-6..=6))).ok()
            })
            .collect();
        if hyperplanes.len() != n {
            continue;
        }
        if let Ok(arr) = Arrangement::new(dim, hyperplanes) {
            if is_essential(&arr) {
                return arr;
            }
        }
    }
}

/// Weights with real parts in [−re, re] and imaginary parts in [−im, im].
pub fn random_complex_weights(rng: &mut ChaCha8Rng, n: usize, re: f64, im: f64) -> Vec<Complex64> {
    (0..n)
        .map(|_| Complex64::new(rng.gen_range(-re..=re), rng.gen_range(-im..=im)))
        .collect()
}

/// Complex weights in the closed unit disk.
pub fn random_unit_disk_weights(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|_| {
            Complex64::from_polar(
                rng.gen_range(0.0..=1.0f64).sqrt(),
                rng.gen_range(0.0..std::f64::consts::TAU),
            )
        })
        .collect()
}

/// Rationals with |λ_i| < 1/m, denominators up to 1000.
pub fn random_small_rationals(rng: &mut ChaCha8Rng, n: usize, m: i64) -> Vec<Rat> {
    (0..n)
        .map(|_| {
            let den = rng.gen_range(m + 1..=1000);
            ratio(rng.gen_range(-den / m + 1..den / m), den)
        })
        .collect()
}
