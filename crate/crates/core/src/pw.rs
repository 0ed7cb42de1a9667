//! Holomorphic continuation of sinogram spectra, Paley-Wiener seminorms,
//! exponential type estimation and the moment homogeneity certificate.

use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;
#[allow(unused_imports)] // float methods are inherent once std is linked
use num_traits::Float;

use crate::grid::{DirectionSet, SampledFunction};
use crate::harmonics::HarmonicExpansion;
use crate::math::least_squares;
use crate::radon::{moment, radon_transform, OffsetGrid, Sinogram};
use crate::slice::direct_fourier;
use crate::{Error, Result};

/// Highest moment order accepted by the Taylor coefficient and homogeneity checks.
pub const MAX_MOMENT_ORDER: u32 = 8;

/// Regular mesh on the rectangle `[-a, a] x i[-b, b]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexGrid {
    pub a: f64,
    pub b: f64,
    pub na: usize,
    pub nb: usize,
}

impl ComplexGrid {
    pub fn new(a: f64, b: f64, na: usize, nb: usize) -> Result<Self> {
        if !(a > 0.0 && b > 0.0) || na < 2 || nb < 2 {
            return Err(Error::InvalidGrid("complex mesh needs a, b > 0 and at least two points per side"));
        }
        Ok(Self { a, b, na, nb })
    }

    pub fn with_b(&self, b: f64) -> Self {
        Self { b, ..*self }
    }

    pub fn points(&self) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.na * self.nb);
        for i in 0..self.na {
            let x = -self.a + 2.0 * self.a * i as f64 / (self.na - 1) as f64;
            for k in 0..self.nb {
                let y = -self.b + 2.0 * self.b * k as f64 / (self.nb - 1) as f64;
                out.push(Complex64::new(x, y));
            }
        }
        out
    }
}

/// A point of the complexified sphere `z_1^2 + ... + z_n^2 = 1`.
///
/// For `n = 2` it is `(cos z, sin z)`; for `n = 3` it is
/// `(sin z cos phi, sin z sin phi, cos z)` with both angles complex.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexSpherePoint {
    n: usize,
    coords: [Complex64; 3],
}

impl ComplexSpherePoint {
    pub fn circle(zeta: Complex64) -> Self {
        Self { n: 2, coords: [zeta.cos(), zeta.sin(), Complex64::new(0.0, 0.0)] }
    }

    pub fn sphere(zeta: Complex64, azimuth: Complex64) -> Self {
        let s = zeta.sin();
        Self { n: 3, coords: [s * azimuth.cos(), s * azimuth.sin(), zeta.cos()] }
    }

    /// The real unit vector `w` viewed as a complex point.
    pub fn real(w: &[f64]) -> Self {
        let mut coords = [Complex64::new(0.0, 0.0); 3];
        for (c, x) in coords.iter_mut().zip(w) {
            *c = Complex64::new(*x, 0.0);
        }
        Self { n: w.len(), coords }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.coords[..self.n]
    }

    /// `|z_1^2 + ... + z_n^2 - 1|`.
    pub fn quadric_defect(&self) -> f64 {
        let s: Complex64 = self.coords().iter().map(|c| c * c).sum();
        (s - 1.0).norm()
    }
}

/// `int s(p, w_j) exp(-2 pi i p z) dp` at complex `z`.
pub fn complex_slice_eval(s: &Sinogram, z: Complex64, j: usize) -> Complex64 {
    s.fourier_at(j, z)
}

/// Finite-mesh proxy for `sup_z (1 + |z|^2)^N e^{-r |Im z|} |H(z)|`, maximized over all directions.
pub fn pw_seminorm(s: &Sinogram, order: u32, r: f64, mesh: &ComplexGrid) -> f64 {
    let mut best: f64 = 0.0;
    for z in mesh.points() {
        let weight = (1.0 + z.norm_sqr()).powi(order as i32) * (-r * z.im.abs()).exp();
        for j in 0..s.directions().len() {
            best = best.max(weight * complex_slice_eval(s, z, j).norm());
        }
    }
    best
}

/// Estimates the exponential type of `y -> H(i y)`, i.e. the support radius.
///
/// For each direction, `log|H(i y)|` is fitted on `y in [b/2, b]` by
/// `c_1 t + c_2 sqrt(t) + c_3 ln t + c_4` with `t = 2 pi y`; `c_1` estimates
/// the extent of the support in that direction, and the largest value over
/// directions is returned. The lower-order terms absorb the sub-exponential
/// behaviour near the boundary of the support, which a bare slope fit
/// misattributes to the rate. `b` is `4 / r` with `r` the numerical extent
/// of the samples, capped so that `e^{2 pi p b}` stays resolved by the
/// offset step.
pub fn support_radius_estimate(s: &Sinogram) -> Result<f64> {
    if s.is_zero() {
        return Err(Error::ZeroInput);
    }
    let step = s.offsets().step;
    let hint = s.numerical_extent(1e-12).max(step);
    let b = (4.0 / hint).min(1.0 / (2.0 * PI * step));
    let samples = 33;
    let ys: Vec<f64> = (0..samples).map(|k| 0.5 * b + 0.5 * b * k as f64 / (samples - 1) as f64).collect();
    let mut design = Vec::with_capacity(samples * 4);
    for y in &ys {
        let t = 2.0 * PI * y;
        design.extend_from_slice(&[t, t.sqrt(), t.ln(), 1.0]);
    }
    let mut best = f64::NEG_INFINITY;
    for j in 0..s.directions().len() {
        let logs: Option<Vec<f64>> = ys
            .iter()
            .map(|y| {
                let v = complex_slice_eval(s, Complex64::new(0.0, *y), j).norm();
                (v > 0.0).then(|| v.ln())
            })
            .collect();
        let Some(logs) = logs else { continue };
        if let Some(c) = least_squares(&design, 4, &logs) {
            best = best.max(c[0]);
        }
    }
    if best.is_finite() {
        Ok(best)
    } else {
        Err(Error::ZeroInput)
    }
}

/// Harmonic expansion of `w -> (-2 pi i)^k int s(p, w) p^k dp`.
pub fn taylor_coefficient(s: &Sinogram, k: u32) -> Result<HarmonicExpansion> {
    if k > MAX_MOMENT_ORDER {
        return Err(Error::Precondition("moment order above 8"));
    }
    let factor = Complex64::new(0.0, -2.0 * PI).powu(k);
    let m: Vec<Complex64> = moment(s, k).into_iter().map(|v| factor * v).collect();
    Ok(HarmonicExpansion::project(s.directions(), &m))
}

/// Largest relative weight, over `k <= k_max`, of the `k`-th Taylor
/// coefficient in harmonic degrees other than `k, k - 2, ...`.
///
/// The weight is the coefficient norm in the forbidden degrees divided by the
/// norm of the expansion of the absolute moment `int |s(p, w)| |p|^k dp`,
/// which stays positive even when the moment itself vanishes identically.
pub fn homogeneity_defect(s: &Sinogram, k_max: u32) -> Result<f64> {
    if k_max > MAX_MOMENT_ORDER {
        return Err(Error::Precondition("moment order above 8"));
    }
    if s.is_zero() {
        return Ok(0.0);
    }
    let dirs = s.directions();
    let mut worst: f64 = 0.0;
    for k in 0..=k_max {
        let coeff = taylor_coefficient(s, k)?;
        let energy = coeff.degree_energy();
        let forbidden: f64 = energy
            .iter()
            .enumerate()
            .filter(|(l, _)| *l as u32 > k || (k - *l as u32) % 2 == 1)
            .map(|(_, e)| e)
            .sum();
        let scale = (2.0 * PI).powi(k as i32);
        let absolute: Vec<f64> = (0..dirs.len())
            .map(|j| {
                let col = s.column(j);
                (0..col.len()).map(|i| col[i].abs() * s.offsets().value(i).abs().powi(k as i32) * s.offsets().weight(i)).sum::<f64>()
                    * scale
            })
            .collect();
        let total = HarmonicExpansion::project_real(dirs, &absolute).energy();
        if total > 0.0 {
            worst = worst.max((forbidden / total).sqrt());
        }
    }
    Ok(worst)
}

/// `int f(x) exp(-2 pi i (z w~) . x) dx` for a point `w~` of the complexified sphere.
pub fn complexified_sphere_eval(f: &SampledFunction, z: Complex64, pt: &ComplexSpherePoint) -> Complex64 {
    let xi: Vec<Complex64> = pt.coords().iter().map(|c| z * c).collect();
    direct_fourier(&f.nonzero_nodes(), &xi)
}

/// Mesh used by the extension consistency check: `a = 4 / r`, `b = 1 / (2 pi r)`, 9 x 9 points.
pub fn extension_mesh(extent: f64) -> ComplexGrid {
    ComplexGrid { a: 4.0 / extent, b: 1.0 / (2.0 * PI * extent), na: 9, nb: 9 }
}

/// `max |H_Rf(z, w) - F f(z w)|` over `mesh` and `dirs`: the continuation of the
/// slice spectrum against the direct continuation of the n-dimensional transform.
pub fn extension_consistency_defect(f: &SampledFunction, dirs: &DirectionSet, mesh: Option<ComplexGrid>) -> Result<f64> {
    if f.is_zero() {
        return Ok(0.0);
    }
    let s = radon_transform(f, OffsetGrid::for_grid(f.grid()), dirs)?;
    let mesh = mesh.unwrap_or_else(|| extension_mesh(f.effective_support()));
    let cloud = f.nonzero_nodes();
    let mut d: f64 = 0.0;
    for z in mesh.points() {
        for j in 0..dirs.len() {
            let pt = ComplexSpherePoint::real(dirs.point(j));
            let xi: Vec<Complex64> = pt.coords().iter().map(|c| z * c).collect();
            d = d.max((complex_slice_eval(&s, z, j) - direct_fourier(&cloud, &xi)).norm());
        }
    }
    Ok(d)
}

/// `max_{r, w} (1 + r^2)^k |d^l/dr^l H(r, w)|` over real radii up to the Nyquist radius.
pub fn schwartz_seminorm(s: &Sinogram, k: u32, l: u32) -> f64 {
    let offsets = s.offsets();
    let nyquist = 0.5 / offsets.step;
    let count = 257;
    let mut best: f64 = 0.0;
    let range = s.active_offsets();
    for m in 0..count {
        let r = -nyquist + 2.0 * nyquist * m as f64 / (count - 1) as f64;
        let weight = (1.0 + r * r).powi(k as i32);
        for j in 0..s.directions().len() {
            let col = s.column(j);
            let mut acc = Complex64::new(0.0, 0.0);
            for i in range.clone() {
                let p = offsets.value(i);
                let (sn, cs) = (-2.0 * PI * p * r).sin_cos();
                let deriv = Complex64::new(0.0, -2.0 * PI * p).powu(l);
                acc += deriv * Complex64::new(cs, sn) * (col[i] * offsets.weight(i));
            }
            best = best.max(weight * acc.norm());
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{integrate, make_bump, GridSpec};
    use crate::harmonics::degree_of;
    use crate::slice::radial_fourier;
    use proptest::prelude::*;

    fn sino(c: [f64; 2], r: f64, m: usize, q: usize) -> (SampledFunction, Sinogram) {
        let g = GridSpec::new(2, m, 1.5).unwrap();
        let f = make_bump(&c, r, 1.0, g).unwrap();
        let s = radon_transform(&f, OffsetGrid::for_grid(&g), &DirectionSet::circle(q).unwrap()).unwrap();
        (f, s)
    }

    #[test]
    fn real_argument_matches_radial_transform() {
        let (_, s) = sino([0.1, 0.2], 0.4, 129, 16);
        let ft = radial_fourier(&s, &[1.7]).unwrap();
        for j in 0..16 {
            assert!((complex_slice_eval(&s, Complex64::new(1.7, 0.0), j) - ft.get(0, j)).norm() < 1e-10);
        }
    }

    #[test]
    fn continuation_is_even() {
        let (_, s) = sino([0.3, -0.1], 0.4, 129, 16);
        let anti = s.directions().antipodes().unwrap().to_vec();
        for z in [Complex64::new(1.0, 0.5), Complex64::new(-2.0, 3.0)] {
            for j in 0..16 {
                let a = complex_slice_eval(&s, z, j);
                let b = complex_slice_eval(&s, -z, anti[j]);
                assert!((a - b).norm() < 1e-10 * (1.0 + a.norm()));
            }
        }
    }

    #[test]
    fn hyperbolic_sphere_points() {
        let beta = 0.7;
        let p = ComplexSpherePoint::circle(Complex64::new(0.0, beta));
        assert!((p.coords()[0] - Complex64::new(beta.cosh(), 0.0)).norm() < 1e-14);
        assert!((p.coords()[1] - Complex64::new(0.0, beta.sinh())).norm() < 1e-14);
        assert!(p.quadric_defect() < 1e-12);
        let q = ComplexSpherePoint::sphere(Complex64::new(0.4, -1.1), Complex64::new(2.0, 0.3));
        assert!(q.quadric_defect() < 1e-12);
    }

    #[test]
    fn support_estimate_of_centered_bump() {
        let (_, s) = sino([0.0, 0.0], 0.3, 257, 64);
        let r = support_radius_estimate(&s).unwrap();
        assert!((0.285..=0.315).contains(&r), "{r}");
        let r2 = support_radius_estimate(&s.scaled(-4.5)).unwrap();
        assert!((r - r2).abs() < 1e-6);
        assert!(matches!(support_radius_estimate(&s.scaled(0.0)), Err(Error::ZeroInput)));
    }

    #[test]
    fn taylor_coefficients() {
        let (f, s) = sino([0.2, -0.1], 0.4, 257, 32);
        let mass = integrate(&f);
        let t0 = taylor_coefficient(&s, 0).unwrap();
        assert!((t0.coeffs[0].re - mass).abs() < 1e-6);
        assert!(t0.coeffs[1..].iter().all(|c| c.norm() < 1e-8));
        // degree one only, synthesizing -2 pi i M (v . w)
        let t1 = taylor_coefficient(&s, 1).unwrap();
        for (i, c) in t1.coeffs.iter().enumerate() {
            if degree_of(2, i) != 1 {
                assert!(c.norm() < 1e-8);
            }
        }
        let w = [0.6, 0.8];
        let want = Complex64::new(0.0, -2.0 * PI * mass * (0.2 * w[0] - 0.1 * w[1]));
        assert!((t1.eval(&w) - want).norm() < 1e-6);
        let (_, radial) = sino([0.0, 0.0], 0.5, 257, 32);
        let t2 = taylor_coefficient(&radial, 2).unwrap();
        let e = t2.degree_energy();
        assert!(e[1..].iter().sum::<f64>().sqrt() < 1e-8 * e[0].sqrt());
        assert!(taylor_coefficient(&s, 9).is_err());
    }

    #[test]
    fn constructed_violation_is_detected() {
        let (_, s) = sino([0.0, 0.0], 0.5, 65, 32);
        let bad = Sinogram::from_fn(*s.offsets(), s.directions().clone(), None, |p, w| {
            let g = if p.abs() < 0.5 { (1.0 - 0.25 / (0.25 - p * p)).exp() } else { 0.0 };
            // sqrt(2) cos(3 t), a degree-3 harmonic
            let c3 = 4.0 * w[0].powi(3) - 3.0 * w[0];
            g * core::f64::consts::SQRT_2 * c3
        })
        .unwrap();
        assert!(homogeneity_defect(&bad, 0).unwrap() > 0.5);
        assert_eq!(homogeneity_defect(&s.scaled(0.0), 6).unwrap(), 0.0);
    }

    #[test]
    fn schwartz_seminorms_are_finite() {
        let (_, s) = sino([0.1, 0.0], 0.6, 129, 16);
        for k in 0..=4 {
            for l in 0..=4 {
                assert!(schwartz_seminorm(&s, k, l).is_finite());
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(6))]
        #[test]
        fn homogeneity_holds_for_transforms(cx in -0.3f64..0.3, cy in -0.3f64..0.3, r in 0.5f64..0.8) {
            let (_, s) = sino([cx, cy], r, 257, 32);
            prop_assert!(homogeneity_defect(&s, 6).unwrap() < 1e-6);
        }

        #[test]
        fn support_estimate_is_scale_invariant(c in 0.1f64..10.0) {
            let (_, s) = sino([0.1, 0.1], 0.4, 129, 16);
            let a = support_radius_estimate(&s).unwrap();
            let b = support_radius_estimate(&s.scaled(c)).unwrap();
            prop_assert!((a - b).abs() < 1e-6);
        }
    }
}
