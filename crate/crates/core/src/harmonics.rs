//! Real orthonormal harmonics on the circle and on the 2-sphere.
//!
//! Both bases are orthonormal for the normalized (probability) measure, so
//! the constant harmonic is exactly 1. On the circle the basis is
//! `1, sqrt(2) cos(l t), sqrt(2) sin(l t)`; on the sphere it is the real
//! spherical harmonics `Y_lm` stored at index `l*l + l + m`.

use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)] // float methods are inherent once std is linked
use num_traits::Float;
use num_complex::Complex64;

use crate::grid::DirectionSet;

/// Number of basis functions with degree `<= band`.
pub fn basis_len(n: usize, band: usize) -> usize {
    if n == 2 {
        2 * band + 1
    } else {
        (band + 1) * (band + 1)
    }
}

/// Harmonic degree of the basis function at `index`.
pub fn degree_of(n: usize, index: usize) -> usize {
    if n == 2 {
        index.div_ceil(2)
    } else {
        let mut l = 0;
        while (l + 1) * (l + 1) <= index {
            l += 1;
        }
        l
    }
}

/// Evaluates every basis function of degree `<= band` at the unit vector `w`.
pub fn eval_basis(n: usize, band: usize, w: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; basis_len(n, band)];
    eval_basis_into(n, band, w, &mut out);
    out
}

pub fn eval_basis_into(n: usize, band: usize, w: &[f64], out: &mut [f64]) {
    let sqrt2 = core::f64::consts::SQRT_2;
    if n == 2 {
        out[0] = 1.0;
        // (x + i y)^l = cos(l t) + i sin(l t)
        let (x, y) = (w[0], w[1]);
        let (mut c, mut s) = (1.0, 0.0);
        for l in 1..=band {
            let nc = c * x - s * y;
            let ns = c * y + s * x;
            c = nc;
            s = ns;
            out[2 * l - 1] = sqrt2 * c;
            out[2 * l] = sqrt2 * s;
        }
        return;
    }
    let (x, y, z) = (w[0], w[1], w[2]);
    // Associated Legendre functions with the sin^m factor removed; the
    // azimuthal factor is carried by Re/Im of (x + i y)^m instead.
    let mut pmm = 1.0;
    let (mut cm, mut sm) = (1.0, 0.0);
    for m in 0..=band {
        if m >= 1 {
            let f = if m == 1 { 3.0f64.sqrt() } else { ((2 * m + 1) as f64 / (2 * m) as f64).sqrt() };
            pmm *= f;
            let nc = cm * x - sm * y;
            let ns = cm * y + sm * x;
            cm = nc;
            sm = ns;
        }
        let mut put = |l: usize, p: f64| {
            let base = l * l + l;
            if m == 0 {
                out[base] = p;
            } else {
                out[base + m] = p * cm;
                out[base - m] = p * sm;
            }
        };
        put(m, pmm);
        if m == band {
            break;
        }
        let mut p_prev = pmm;
        let mut p = (2.0 * m as f64 + 3.0).sqrt() * z * pmm;
        put(m + 1, p);
        for l in m + 2..=band {
            let (lf, mf) = (l as f64, m as f64);
            let denom = lf * lf - mf * mf;
            let a = ((4.0 * lf * lf - 1.0) / denom).sqrt();
            let b = ((2.0 * lf + 1.0) * (lf - 1.0 - mf) * (lf - 1.0 + mf) / ((2.0 * lf - 3.0) * denom)).sqrt();
            let next = a * z * p - b * p_prev;
            p_prev = p;
            p = next;
            put(l, p);
        }
    }
}

/// Coefficients of a function on the sphere of directions in the orthonormal basis.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicExpansion {
    pub n: usize,
    pub band_limit: usize,
    pub coeffs: Vec<Complex64>,
}

impl HarmonicExpansion {
    /// Projects samples at the nodes of `dirs` onto harmonics of degree `<= dirs.band_limit()`.
    pub fn project(dirs: &DirectionSet, values: &[Complex64]) -> Self {
        let n = dirs.dim();
        let band = dirs.band_limit();
        let len = basis_len(n, band);
        let mut coeffs = vec![Complex64::new(0.0, 0.0); len];
        let mut basis = vec![0.0; len];
        for (j, v) in values.iter().enumerate() {
            eval_basis_into(n, band, dirs.point(j), &mut basis);
            let w = dirs.weight(j);
            for (c, y) in coeffs.iter_mut().zip(&basis) {
                *c += v * (w * y);
            }
        }
        Self { n, band_limit: band, coeffs }
    }

    pub fn project_real(dirs: &DirectionSet, values: &[f64]) -> Self {
        let v: Vec<Complex64> = values.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::project(dirs, &v)
    }

    /// Evaluates the expansion at the unit vector `w`.
    pub fn eval(&self, w: &[f64]) -> Complex64 {
        let basis = eval_basis(self.n, self.band_limit, w);
        self.coeffs.iter().zip(&basis).map(|(c, y)| c * y).sum()
    }

    pub fn synthesize(&self, dirs: &DirectionSet) -> Vec<Complex64> {
        (0..dirs.len()).map(|j| self.eval(dirs.point(j))).collect()
    }

    /// Squared coefficient norm in each degree `0..=band_limit`.
    pub fn degree_energy(&self) -> Vec<f64> {
        let mut e = vec![0.0; self.band_limit + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            e[degree_of(self.n, i)] += c.norm_sqr();
        }
        e
    }

    pub fn energy(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// |coefficient energy - quadrature energy of the synthesized function|.
    pub fn parseval_defect(&self, dirs: &DirectionSet) -> f64 {
        let vals = self.synthesize(dirs);
        let quad: f64 = vals.iter().enumerate().map(|(j, v)| dirs.weight(j) * v.norm_sqr()).sum();
        (quad - self.energy()).abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_basis_is_orthonormal() {
        let band = 8;
        let dirs = DirectionSet::sphere(band).unwrap();
        let len = basis_len(3, band);
        let mut gram = vec![0.0; len * len];
        for j in 0..dirs.len() {
            let y = eval_basis(3, band, dirs.point(j));
            for a in 0..len {
                for b in 0..len {
                    gram[a * len + b] += dirs.weight(j) * y[a] * y[b];
                }
            }
        }
        for a in 0..len {
            for b in 0..len {
                let want = if a == b { 1.0 } else { 0.0 };
                assert!((gram[a * len + b] - want).abs() < 1e-12, "({a},{b}) {}", gram[a * len + b]);
            }
        }
    }

    #[test]
    fn low_degree_sphere_harmonics_match_closed_forms() {
        let w = [0.36, 0.48, 0.8];
        let y = eval_basis(3, 2, &w);
        let s3 = 3.0f64.sqrt();
        assert!((y[2] - s3 * w[2]).abs() < 1e-14);
        assert!((y[3] - s3 * w[0]).abs() < 1e-14);
        assert!((y[1] - s3 * w[1]).abs() < 1e-14);
        // Y_20 = sqrt(5) (3 z^2 - 1) / 2
        assert!((y[6] - 5.0f64.sqrt() * (3.0 * w[2] * w[2] - 1.0) / 2.0).abs() < 1e-14);
    }

    #[test]
    fn degree_indexing() {
        assert_eq!(degree_of(2, 0), 0);
        assert_eq!(degree_of(2, 1), 1);
        assert_eq!(degree_of(2, 2), 1);
        assert_eq!(degree_of(2, 3), 2);
        assert_eq!(degree_of(3, 0), 0);
        assert_eq!(degree_of(3, 3), 1);
        assert_eq!(degree_of(3, 4), 2);
        assert_eq!(degree_of(3, 15), 3);
    }
}
