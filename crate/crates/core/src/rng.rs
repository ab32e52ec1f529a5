//! Seeded random sampling helpers.
//!
//! Every randomized scan in the crate takes an explicit `u64` seed and draws
//! from a ChaCha8 stream, so results are reproducible across runs and
//! platforms.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The crate-standard seeded generator.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform point in the cube `[-r, r]^dim`.
pub fn cube_point(rng: &mut ChaCha8Rng, dim: usize, r: f64) -> Vec<f64> {
    (0..dim).map(|_| rng.random_range(-r..=r)).collect()
}

/// Uniform point in the Euclidean ball of radius `r` (rejection sampling).
pub fn ball_point(rng: &mut ChaCha8Rng, dim: usize, r: f64) -> Vec<f64> {
    loop {
        let p = cube_point(rng, dim, 1.0);
        let n2: f64 = p.iter().map(|x| x * x).sum();
        if n2 <= 1.0 {
            return p.into_iter().map(|x| x * r).collect();
        }
    }
}

/// Uniform point on the unit sphere in `ℝ^dim`.
pub fn sphere_point(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    loop {
        let p = cube_point(rng, dim, 1.0);
        let n: f64 = p.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-3 && n <= 1.0 {
            return p.into_iter().map(|x| x / n).collect();
        }
    }
}
