//! Test functions: the seeded bump suite and fixed reference cases.

use pwkit_core::grid::{make_bump, GridSpec, SampledFunction};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// A smooth bump `exp(1 - rho^2 / (rho^2 - |x - c|^2))`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BumpSpec {
    pub center: Vec<f64>,
    pub radius: f64,
}

impl BumpSpec {
    pub fn new(center: &[f64], radius: f64) -> Self {
        Self { center: center.to_vec(), radius }
    }

    /// Radius of the smallest origin-centered ball containing the support.
    pub fn support(&self) -> f64 {
        self.center.iter().map(|c| c * c).sum::<f64>().sqrt() + self.radius
    }

    pub fn sample(&self, grid: GridSpec) -> pwkit_core::Result<SampledFunction> {
        make_bump(&self.center, self.radius, 1.0, grid)
    }
}

/// `count` planar bumps with radius in `[0.5, 0.8] L` and support inside `|x| <= 0.9 L`.
pub fn seeded_suite(seed: u64, count: usize, half_width: f64) -> Vec<BumpSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let radius = rng.gen_range(0.5..0.8) * half_width;
            let reach = 0.9 * half_width - radius;
            let dist = reach * rng.gen_range(0.0f64..1.0).sqrt();
            let angle = rng.gen_range(0.0..std::f64::consts::TAU);
            BumpSpec::new(&[dist * angle.cos(), dist * angle.sin()], radius)
        })
        .collect()
}

/// Bumps with support radius 0.3, 0.6 and 0.9 (times `L`), centered and shifted.
pub fn support_cases(half_width: f64) -> Vec<BumpSpec> {
    let l = half_width;
    let shifted = |c: [f64; 2], total: f64| {
        let d = (c[0] * c[0] + c[1] * c[1]).sqrt();
        BumpSpec::new(&[c[0] * l, c[1] * l], (total - d) * l)
    };
    vec![
        BumpSpec::new(&[0.0, 0.0], 0.3 * l),
        BumpSpec::new(&[0.0, 0.0], 0.6 * l),
        BumpSpec::new(&[0.0, 0.0], 0.9 * l),
        shifted([0.1, 0.0], 0.3),
        shifted([0.15, 0.15], 0.6),
        shifted([0.18, -0.24], 0.9),
        shifted([0.3, 0.0], 0.9),
    ]
}

/// Two bumps in three dimensions.
pub fn spatial_cases(half_width: f64) -> Vec<BumpSpec> {
    let l = half_width;
    vec![BumpSpec::new(&[0.0, 0.0, 0.0], 0.5 * l), BumpSpec::new(&[0.1 * l, -0.15 * l, 0.2 * l], 0.45 * l)]
}

/// Cap angles of the sphere checks.
pub const CAP_ANGLES: [f64; 4] = [0.3, 0.5, 0.8, 1.2];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_is_reproducible_and_inside_the_box() {
        let a = seeded_suite(7, 5, 1.0);
        assert_eq!(a, seeded_suite(7, 5, 1.0));
        assert_ne!(a, seeded_suite(8, 5, 1.0));
        for b in &a {
            assert!(b.support() <= 0.9 + 1e-12);
            assert!(b.radius >= 0.5);
        }
        for b in support_cases(1.0) {
            let r = b.support();
            assert!([0.3, 0.6, 0.9].iter().any(|t| (r - t).abs() < 1e-12), "{r}");
        }
    }
}
