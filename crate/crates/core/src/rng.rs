//! Seeded randomness for instance generation.
//!
//! The generator is SplitMix64 (`rand_xoshiro::SplitMix64`), whose state is
//! the seed itself and whose step is
//!
//! ```text
//! x  ← x + 0x9E3779B97F4A7C15          (wrapping)
//! z  ← (x ⊕ (x ≫ 30)) · 0xBF58476D1CE4E5B9
//! z  ← (z ⊕ (z ≫ 27)) · 0x94D049BB133111EB
//! out = z ⊕ (z ≫ 31)
//! ```
//!
//! Derived quantities, in the order they consume outputs:
//!
//! * `uniform()`: `(out ≫ 11) · 2⁻⁵³`, in `[0, 1)`;
//! * `gaussian()`: Box–Muller on two uniforms `u₁, u₂`:
//!   `√(−2 ln(1 − u₁)) · cos(2π u₂)`;
//! * `instance_seed(seed, d, i)`: the first output of a generator seeded
//!   with `seed ⊕ (d ≪ 32) ⊕ i`.

use rand_core::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

#[derive(Debug, Clone)]
pub struct InstanceRng(SplitMix64);

impl InstanceRng {
    pub fn new(seed: u64) -> Self {
        InstanceRng(SplitMix64::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn gaussian(&mut self) -> f64 {
        let u1 = self.uniform();
        let u2 = self.uniform();
        (-2.0 * (1.0 - u1).ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }

    /// Uniform on the unit sphere in ℝ^d.
    pub fn unit_vector(&mut self, d: usize) -> Vec<f64> {
        loop {
            let g: Vec<f64> = (0..d).map(|_| self.gaussian()).collect();
            let n = g.iter().map(|x| x * x).sum::<f64>().sqrt();
            if n > 1e-12 {
                return g.into_iter().map(|x| x / n).collect();
            }
        }
    }
}

/// Per-instance seed, independent of how many instances run before it.
pub fn instance_seed(seed: u64, d: usize, index: usize) -> u64 {
    InstanceRng::new(seed ^ ((d as u64) << 32) ^ index as u64).next_u64()
}
