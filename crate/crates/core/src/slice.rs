//! Fourier analysis of sinograms: the radial Fourier transform, the
//! vector-valued Fourier transform of the Euclidean motion group, Plancherel,
//! pointwise inversion, and marginal projections.
//!
//! The forward convention is `F f(xi) = int f(x) exp(-2 pi i x.xi) dx`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;
#[allow(unused_imports)] // float methods are inherent once std is linked
use num_traits::Float;

use crate::grid::{l2_norm_sq, DirectionSet, GridSpec, NodeCloud, SampledFunction};
use crate::math::{gregory_weights, simpson_weights, sphere_area};
use crate::radon::{evenness_defect, radon_transform, OffsetGrid, Sinogram, EVENNESS_TOLERANCE};
use crate::{Error, Result};

/// Relative spectral energy beyond the truncation radius.
pub const TAIL_TOLERANCE: f64 = 1e-12;

/// Radial samples per unit of `1 / r`, with `r` the extent of the sinogram.
pub const RADIAL_DENSITY: f64 = 160.0;

/// Radii used by the Fourier-slice comparison: `0, 0.75, ..., 12`.
pub fn slice_test_radii() -> Vec<f64> {
    (0..=16).map(|i| 0.75 * i as f64).collect()
}

/// `F f(r w)` sampled on radii times directions.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorFT {
    radii: Vec<f64>,
    directions: DirectionSet,
    values: Vec<Complex64>,
}

impl VectorFT {
    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn directions(&self) -> &DirectionSet {
        &self.directions
    }

    /// Value at radius `i` and direction `j`.
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.values[i * self.directions.len() + j]
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }
}

/// `int s(p, w_j) exp(-2 pi i p r) dp` on the given radii, without the evenness check.
pub fn radial_fourier_unchecked(s: &Sinogram, radii: &[f64]) -> VectorFT {
    let q = s.directions().len();
    let offsets = s.offsets();
    let range = s.active_offsets();
    let mut values = vec![Complex64::new(0.0, 0.0); radii.len() * q];
    let mut phases = Vec::with_capacity(range.len());
    for (i, &r) in radii.iter().enumerate() {
        phases.clear();
        for k in range.clone() {
            let (sn, cs) = (-2.0 * PI * offsets.value(k) * r).sin_cos();
            phases.push(Complex64::new(cs, sn) * offsets.weight(k));
        }
        for j in 0..q {
            let col = &s.column(j)[range.clone()];
            let mut acc = Complex64::new(0.0, 0.0);
            for (v, ph) in col.iter().zip(&phases) {
                acc += ph * *v;
            }
            values[i * q + j] = acc;
        }
    }
    VectorFT { radii: radii.to_vec(), directions: s.directions().clone(), values }
}

/// Fourier transform of an even sinogram in its offset variable.
pub fn radial_fourier(s: &Sinogram, radii: &[f64]) -> Result<VectorFT> {
    let d = evenness_defect(s)?;
    if d > EVENNESS_TOLERANCE {
        return Err(Error::NotEven(d));
    }
    Ok(radial_fourier_unchecked(s, radii))
}

/// Direct quadrature of `int f(x) exp(-2 pi i x.xi) dx` for complex `xi`.
pub fn direct_fourier(cloud: &NodeCloud, xi: &[Complex64]) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    let real = xi.iter().all(|z| z.im == 0.0);
    for (x, v) in cloud.xs.iter().zip(&cloud.values) {
        if real {
            let dot: f64 = (0..cloud.dim).map(|a| x[a] * xi[a].re).sum();
            let (sn, cs) = (-2.0 * PI * dot).sin_cos();
            acc += Complex64::new(cs, sn) * *v;
        } else {
            let dot: Complex64 = (0..cloud.dim).map(|a| xi[a] * x[a]).sum();
            acc += (Complex64::new(0.0, -2.0 * PI) * dot).exp() * *v;
        }
    }
    acc * cloud.cell
}

/// `max |F f(r w) - (radial FT of Rf)(r, w)|` over the test radii and all directions.
///
/// The left side is a direct n-dimensional quadrature; the right side goes
/// through the spline-based Radon transform and a 1-D quadrature in `p`.
pub fn fourier_slice_defect(f: &SampledFunction, dirs: &DirectionSet) -> Result<f64> {
    if f.is_zero() {
        return Ok(0.0);
    }
    let s = radon_transform(f, OffsetGrid::for_grid(f.grid()), dirs)?;
    let radii = slice_test_radii();
    let ft = radial_fourier(&s, &radii)?;
    let cloud = f.nonzero_nodes();
    let mut d: f64 = 0.0;
    for (i, &r) in radii.iter().enumerate() {
        for j in 0..dirs.len() {
            let w = dirs.point3(j);
            let xi = [Complex64::new(r * w[0], 0.0), Complex64::new(r * w[1], 0.0), Complex64::new(r * w[2], 0.0)];
            d = d.max((direct_fourier(&cloud, &xi[..dirs.dim()]) - ft.get(i, j)).norm());
        }
    }
    Ok(d)
}

/// The vector-valued transform on a radial grid truncated by the spectral tail rule.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub ft: VectorFT,
    /// Radial quadrature weights (Simpson, including `dr`).
    pub weights: Vec<f64>,
    pub radii: Vec<f64>,
    pub dr: f64,
    /// Truncation radius.
    pub r_max: f64,
    /// Energy beyond `r_max` relative to the total up to the Nyquist radius.
    pub tail: f64,
}

/// Computes `F f(r w_j)` from an even sinogram for `0 <= r <= r_max`.
///
/// The radial step is `1 / (RADIAL_DENSITY r)` with `r` the numerical extent of the
/// sinogram; the integrand of the Plancherel formula is tabulated up to the
/// Nyquist radius `1 / (2 dp)` and `r_max` is the smallest radius whose
/// tail carries less than [`TAIL_TOLERANCE`] of the energy.
pub fn truncated_spectrum(s: &Sinogram) -> Result<Spectrum> {
    let d = evenness_defect(s)?;
    if d > EVENNESS_TOLERANCE {
        return Err(Error::NotEven(d));
    }
    let step = s.offsets().step;
    let extent = s.numerical_extent(1e-12).max(4.0 * step);
    let dr = 1.0 / (RADIAL_DENSITY * extent);
    let nyquist = 0.5 / step;
    let mut intervals = (nyquist / dr).floor() as usize;
    intervals -= intervals % 2;
    let intervals = intervals.max(2);
    let radii: Vec<f64> = (0..=intervals).map(|i| i as f64 * dr).collect();
    let ft = radial_fourier_unchecked(s, &radii);
    let density = energy_density(&ft);
    let total: f64 = radial_weights(radii.len()).iter().zip(&density).map(|(w, g)| w * g * dr).sum();
    // tail[i] = energy carried by radii beyond index i
    let mut tail = vec![0.0; radii.len()];
    let mut acc = 0.0;
    for i in (0..radii.len()).rev() {
        tail[i] = acc;
        acc += density[i] * dr;
    }
    let mut cut = radii.len() - 1;
    if total > 0.0 {
        for i in (2..radii.len()).step_by(2) {
            if tail[i] < TAIL_TOLERANCE * total {
                cut = i;
                break;
            }
        }
    }
    let keep = cut + 1;
    let weights: Vec<f64> = radial_weights(keep).into_iter().map(|w| w * dr).collect();
    let q = ft.directions.len();
    let ft = VectorFT { radii: radii[..keep].to_vec(), directions: ft.directions, values: ft.values[..keep * q].to_vec() };
    let tail_rel = if total > 0.0 { tail[cut] / total } else { 0.0 };
    Ok(Spectrum { radii: ft.radii.clone(), ft, weights, dr, r_max: radii[cut], tail: tail_rel })
}

// Gregory end corrections keep the radial rule well below the mesh error;
// Simpson's rule floors near 1e-9 at desk density.
fn radial_weights(len: usize) -> Vec<f64> {
    const ORDER: usize = 8;
    if len > 2 * ORDER {
        gregory_weights(len, ORDER)
    } else {
        simpson_weights(len)
    }
}

// sigma_n r^{n-1} sum_j w_j |F(r, w_j)|^2 at every radius.
fn energy_density(ft: &VectorFT) -> Vec<f64> {
    let dirs = &ft.directions;
    let n = dirs.dim();
    let sigma = sphere_area(n);
    ft.radii
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let e: f64 = (0..dirs.len()).map(|j| dirs.weight(j) * ft.get(i, j).norm_sqr()).sum();
            sigma * r.powi(n as i32 - 1) * e
        })
        .collect()
}

/// Outcome of the Plancherel comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlancherelReport {
    /// `|‖f‖² - spectral energy| / ‖f‖²`.
    pub defect: f64,
    pub norm_sq: f64,
    pub spectral: f64,
    pub r_max: f64,
    pub tail: f64,
    pub radii: usize,
}

pub fn plancherel(f: &SampledFunction, dirs: &DirectionSet) -> Result<PlancherelReport> {
    let norm_sq = l2_norm_sq(f);
    if norm_sq == 0.0 {
        return Err(Error::ZeroFunction);
    }
    let s = radon_transform(f, OffsetGrid::for_grid(f.grid()), dirs)?;
    let sp = truncated_spectrum(&s)?;
    let density = energy_density(&sp.ft);
    let spectral: f64 = sp.weights.iter().zip(&density).map(|(w, g)| w * g).sum();
    Ok(PlancherelReport {
        defect: (norm_sq - spectral).abs() / norm_sq,
        norm_sq,
        spectral,
        r_max: sp.r_max,
        tail: sp.tail,
        radii: sp.radii.len(),
    })
}

pub fn plancherel_defect(f: &SampledFunction, dirs: &DirectionSet) -> Result<f64> {
    Ok(plancherel(f, dirs)?.defect)
}

/// Largest number of circle directions an inversion plan will use.
pub const MAX_INVERSION_DIRECTIONS: usize = 2048;
/// Largest sphere band limit an inversion plan will use.
pub const MAX_INVERSION_BAND: usize = 24;

/// Spectrum of `f` on a direction set fine enough for pointwise inversion anywhere in the box.
#[derive(Debug, Clone)]
pub struct InversionPlan {
    directions: DirectionSet,
    dr: f64,
    r_max: f64,
    // per direction: w_j sigma_n r_i^{n-1} W_i F f(r_i w_j), W_i the radial weights
    columns: Vec<Vec<Complex64>>,
}

impl InversionPlan {
    /// Chooses the angular resolution from a preliminary spectrum: phases
    /// `2 pi r x.w` must be resolved for `r <= r_max` and `|x|` up to the box
    /// corner plus the support radius.
    pub fn new(f: &SampledFunction) -> Result<Self> {
        let grid = f.grid();
        let n = grid.dim();
        let offsets = OffsetGrid::for_grid(grid);
        let coarse = if n == 2 { DirectionSet::circle(64)? } else { DirectionSet::sphere(16)? };
        let pre = truncated_spectrum(&radon_transform(f, offsets, &coarse)?)?;
        let reach = grid.half_width() * (n as f64).sqrt() + f.effective_support();
        let need = (2.0 * PI * pre.r_max * reach).ceil() as usize + 16;
        let dirs = if n == 2 {
            let q = need.clamp(64, MAX_INVERSION_DIRECTIONS);
            DirectionSet::circle(q + q % 2)?
        } else {
            DirectionSet::sphere((need / 2).clamp(16, MAX_INVERSION_BAND))?
        };
        Self::from_spectrum(truncated_spectrum(&radon_transform(f, offsets, &dirs)?)?)
    }

    /// Uses the directions and radii of an already computed spectrum.
    pub fn from_spectrum(sp: Spectrum) -> Result<Self> {
        let dirs = sp.ft.directions.clone();
        let n = dirs.dim();
        let sigma = sphere_area(n);
        let radial: Vec<f64> = sp.radii.iter().zip(&sp.weights).map(|(r, w)| sigma * w * r.powi(n as i32 - 1)).collect();
        let columns = (0..dirs.len())
            .map(|j| radial.iter().enumerate().map(|(i, rw)| sp.ft.get(i, j) * (rw * dirs.weight(j))).collect())
            .collect();
        Ok(Self { directions: dirs, dr: sp.dr, r_max: sp.r_max, columns })
    }

    pub fn directions(&self) -> usize {
        self.directions.len()
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    /// `int_0^r_max sum_j w_j F f(r w_j) e^{2 pi i r x.w_j} sigma_n r^{n-1} dr`.
    pub fn eval(&self, x: &[f64]) -> Complex64 {
        let n = self.directions.dim();
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, col) in self.columns.iter().enumerate() {
            let w = self.directions.point(j);
            let t: f64 = (0..n).map(|a| w[a] * x[a]).sum();
            let (sn, cs) = (2.0 * PI * self.dr * t).sin_cos();
            let step = Complex64::new(cs, sn);
            let mut phase = Complex64::new(1.0, 0.0);
            for v in col {
                acc += v * phase;
                phase *= step;
            }
        }
        acc
    }
}

/// Inversion of the motion-group Fourier transform at the point `x`.
pub fn pointwise_inversion(f: &SampledFunction, x: &[f64]) -> Result<Complex64> {
    Ok(InversionPlan::new(f)?.eval(x))
}

/// Integrates a function on `R^k` over the last `k - n` coordinates.
pub fn marginal_projection(f: &SampledFunction, n: usize) -> Result<SampledFunction> {
    let g = f.grid();
    let k = g.dim();
    if !(k == 3 && n == 2) {
        return Err(Error::UnsupportedPair { from: k, to: n });
    }
    let target = GridSpec::new(2, g.points(), g.half_width())?;
    let m = g.points();
    let h = g.spacing();
    let vals = f.values();
    let mut out = vec![0.0; target.len()];
    for (a, o) in out.iter_mut().enumerate() {
        let row = &vals[a * m..(a + 1) * m];
        let inner: f64 = row[1..m - 1].iter().sum::<f64>() + 0.5 * (row[0] + row[m - 1]);
        *o = inner * h;
    }
    // nodes outside the projected support can only carry rounding-free zeros
    SampledFunction::new(target, out, f.support())
}

/// `max |R_2(C f)(p, w) - R_3 f(p, (w, 0))|` over offsets and `q` equatorial directions.
pub fn projection_compatibility_defect(f: &SampledFunction, q: usize) -> Result<f64> {
    let proj = marginal_projection(f, 2)?;
    let offsets = OffsetGrid::for_grid(proj.grid());
    let s2 = radon_transform(&proj, offsets, &DirectionSet::circle(q)?)?;
    let s3 = radon_transform(f, offsets, &DirectionSet::equatorial(q)?)?;
    Ok(s2.values().iter().zip(s3.values()).fold(0.0, |m, (a, b)| m.max((a - b).abs())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::make_bump;
    use crate::radon::moment;

    fn grid(m: usize) -> GridSpec {
        GridSpec::new(2, m, 1.5).unwrap()
    }

    #[test]
    fn zero_radius_row_is_the_mass() {
        let g = grid(129);
        let f = make_bump(&[0.2, 0.1], 0.5, 1.0, g).unwrap();
        let d = DirectionSet::circle(16).unwrap();
        let s = radon_transform(&f, OffsetGrid::for_grid(&g), &d).unwrap();
        let ft = radial_fourier(&s, &[0.0, 1.0]).unwrap();
        let m0 = moment(&s, 0);
        for j in 0..d.len() {
            assert!((ft.get(0, j).re - m0[j]).abs() < 1e-14);
            assert_eq!(ft.get(0, j).im, 0.0);
        }
    }

    #[test]
    fn centered_bump_spectrum_is_real_and_radial() {
        let g = grid(513);
        let f = make_bump(&[0.0, 0.0], 0.6, 1.0, g).unwrap();
        let d = DirectionSet::circle(16).unwrap();
        let s = radon_transform(&f, OffsetGrid::for_grid(&g), &d).unwrap();
        let ft = radial_fourier(&s, &[0.5, 1.5, 3.0]).unwrap();
        for i in 0..3 {
            for j in 0..d.len() {
                assert!(ft.get(i, j).im.abs() < 1e-8);
                assert!((ft.get(i, j) - ft.get(i, 0)).norm() < 1e-8, "{:?} {:?}", ft.get(i, j), ft.get(i, 0));
            }
        }
    }

    #[test]
    fn negative_radius_matches_antipode() {
        let g = grid(129);
        let f = make_bump(&[0.3, -0.2], 0.4, 1.0, g).unwrap();
        let d = DirectionSet::circle(16).unwrap();
        let s = radon_transform(&f, OffsetGrid::for_grid(&g), &d).unwrap();
        let pos = radial_fourier(&s, &[2.5]).unwrap();
        let neg = radial_fourier(&s, &[-2.5]).unwrap();
        let anti = d.antipodes().unwrap();
        for j in 0..d.len() {
            assert!((neg.get(0, j) - pos.get(0, anti[j])).norm() < 1e-8);
        }
    }

    #[test]
    fn zero_function_cases() {
        let g = grid(65);
        let d = DirectionSet::circle(16).unwrap();
        let z = SampledFunction::zeros(g);
        assert_eq!(fourier_slice_defect(&z, &d).unwrap(), 0.0);
        assert!(matches!(plancherel_defect(&z, &d), Err(Error::ZeroFunction)));
        let s = radon_transform(&z, OffsetGrid::for_grid(&g), &d).unwrap();
        assert!(radial_fourier(&s, &[0.0, 1.0]).unwrap().values().iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn plancherel_is_scale_invariant() {
        let g = grid(129);
        let f = make_bump(&[0.1, 0.0], 0.6, 1.0, g).unwrap();
        let d = DirectionSet::circle(32).unwrap();
        let a = plancherel_defect(&f, &d).unwrap();
        let b = plancherel_defect(&f.scaled(3.0), &d).unwrap();
        assert!((a - b).abs() < 1e-9, "{a} {b}");
    }

    #[test]
    fn marginal_projection_rejects_other_pairs() {
        let g = grid(65);
        let f = SampledFunction::zeros(g);
        assert!(matches!(marginal_projection(&f, 1), Err(Error::UnsupportedPair { from: 2, to: 1 })));
    }

    #[test]
    fn marginal_of_product_bump() {
        let g3 = GridSpec::new(3, 65, 1.0).unwrap();
        let b = |x: f64, y: f64| {
            let d2 = x * x + y * y;
            if d2 < 0.25 { (1.0 - 0.25 / (0.25 - d2)).exp() } else { 0.0 }
        };
        // phi integrates to 1 exactly under the trapezoid rule on the grid
        let h = g3.spacing();
        let raw = |z: f64| if z.abs() < 0.4 { (1.0 - 0.16 / (0.16 - z * z)).exp() } else { 0.0 };
        let mass: f64 = (0..65).map(|i| raw(g3.coord(i))).sum::<f64>() * h;
        let f = SampledFunction::from_fn(g3, Some(0.9), |x| b(x[0], x[1]) * raw(x[2]) / mass).unwrap();
        let p = marginal_projection(&f, 2).unwrap();
        for k in 0..p.grid().len() {
            let x = p.grid().node(k);
            assert!((p.values()[k] - b(x[0], x[1])).abs() < 1e-12);
        }
    }
}
