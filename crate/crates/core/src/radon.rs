//! The Radon transform on `R^n` for `n = 2, 3`.
//!
//! `Rf(p, w)` integrates `f` over the hyperplane `{x : x.w = p}`. The sampled
//! function is first turned into a cubic spline interpolant, which is then
//! integrated along the line (n = 2) or over the plane (n = 3) with step `h`.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;
#[allow(unused_imports)] // float methods are inherent once std is linked
use num_traits::Float;

use crate::grid::{DirectionSet, GridSpec, SampledFunction};
use crate::harmonics::HarmonicExpansion;
use crate::spline::SplineField;
use crate::{Error, Result};

/// Tolerance on the evenness defect below which a sinogram is admissible for inversion.
pub const EVENNESS_TOLERANCE: f64 = 1e-6;

/// Equispaced offsets `p_i = (i - half) * step`, `i = 0..2 half + 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OffsetGrid {
    pub step: f64,
    pub half: usize,
}

impl OffsetGrid {
    pub fn new(step: f64, half: usize) -> Result<Self> {
        if !(step > 0.0 && step.is_finite()) {
            return Err(Error::InvalidGrid("offset step must be positive"));
        }
        Ok(Self { step, half })
    }

    /// Offsets with the grid step covering `[-L sqrt(n), L sqrt(n)]`.
    pub fn for_grid(grid: &GridSpec) -> Self {
        let h = grid.spacing();
        let reach = grid.half_width() * (grid.dim() as f64).sqrt();
        Self { step: h, half: (reach / h + 1e-9).floor() as usize }
    }

    pub fn len(&self) -> usize {
        2 * self.half + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn value(&self, i: usize) -> f64 {
        (i as isize - self.half as isize) as f64 * self.step
    }

    /// Trapezoid weight of offset `i`.
    pub fn weight(&self, i: usize) -> f64 {
        if i == 0 || i == self.len() - 1 {
            0.5 * self.step
        } else {
            self.step
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.half as f64 * self.step
    }
}

/// Samples of a function on `R x S^{n-1}`, stored direction by direction.
#[derive(Debug, Clone, PartialEq)]
pub struct Sinogram {
    offsets: OffsetGrid,
    directions: DirectionSet,
    values: Vec<f64>,
    support: Option<f64>,
}

impl Sinogram {
    /// `values[j * P + i]` is the sample at offset `i` and direction `j`.
    pub fn new(offsets: OffsetGrid, directions: DirectionSet, values: Vec<f64>, support: Option<f64>) -> Result<Self> {
        if values.len() != offsets.len() * directions.len() {
            return Err(Error::ShapeMismatch("sinogram size differs from P x Q"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidSamples("non-finite sinogram value"));
        }
        Ok(Self { offsets, directions, values, support })
    }

    /// Builds a sinogram from a function of `(p, direction)`.
    pub fn from_fn(
        offsets: OffsetGrid,
        directions: DirectionSet,
        support: Option<f64>,
        f: impl Fn(f64, &[f64]) -> f64,
    ) -> Result<Self> {
        let mut values = Vec::with_capacity(offsets.len() * directions.len());
        for j in 0..directions.len() {
            for i in 0..offsets.len() {
                values.push(f(offsets.value(i), directions.point(j)));
            }
        }
        Self::new(offsets, directions, values, support)
    }

    pub fn offsets(&self) -> &OffsetGrid {
        &self.offsets
    }

    pub fn directions(&self) -> &DirectionSet {
        &self.directions
    }

    pub fn dim(&self) -> usize {
        self.directions.dim()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn support(&self) -> Option<f64> {
        self.support
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[j * self.offsets.len() + i]
    }

    pub fn column(&self, j: usize) -> &[f64] {
        let p = self.offsets.len();
        &self.values[j * p..(j + 1) * p]
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self { values: self.values.iter().map(|v| c * v).collect(), ..self.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| *v == 0.0)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Smallest index range of offsets outside of which every sample is zero.
    pub fn active_offsets(&self) -> core::ops::Range<usize> {
        let p = self.offsets.len();
        let mut lo = p;
        let mut hi = 0;
        for j in 0..self.directions.len() {
            let col = self.column(j);
            if let Some(a) = col.iter().position(|v| *v != 0.0) {
                lo = lo.min(a);
                hi = hi.max(col.iter().rposition(|v| *v != 0.0).unwrap() + 1);
            }
        }
        if lo >= hi {
            0..0
        } else {
            lo..hi
        }
    }

    /// Largest `|p|` at which some direction still has `|s| > rel * max|s|`.
    pub fn numerical_extent(&self, rel: f64) -> f64 {
        let thr = rel * self.max_abs();
        let p = self.offsets.len();
        let mut r: f64 = 0.0;
        for (k, v) in self.values.iter().enumerate() {
            if v.abs() > thr {
                r = r.max(self.offsets.value(k % p).abs());
            }
        }
        r
    }

    /// `int s(p, w_j) exp(-2 pi i p z) dp` for complex `z`.
    pub fn fourier_at(&self, j: usize, z: Complex64) -> Complex64 {
        let col = self.column(j);
        let range = self.active_offsets();
        if range.is_empty() {
            return Complex64::new(0.0, 0.0);
        }
        let w = Complex64::new(0.0, -2.0 * core::f64::consts::PI) * z;
        let step = (w * self.offsets.step).exp();
        let mut phase = (w * self.offsets.value(range.start)).exp();
        let mut acc = Complex64::new(0.0, 0.0);
        for i in range {
            acc += phase * (col[i] * self.offsets.weight(i));
            phase *= step;
        }
        acc
    }
}

/// Precomputed interpolant and hyperplane frames for repeated column evaluation.
///
/// Columns are independent, so callers may evaluate disjoint blocks of
/// directions concurrently and assemble them with [`RadonPlan::assemble`].
pub struct RadonPlan<'a> {
    field: SplineField,
    grid: GridSpec,
    offsets: OffsetGrid,
    directions: &'a DirectionSet,
    reach: f64,
    support: Option<f64>,
}

impl<'a> RadonPlan<'a> {
    pub fn new(f: &SampledFunction, offsets: OffsetGrid, directions: &'a DirectionSet) -> Result<Self> {
        let grid = *f.grid();
        if grid.dim() != directions.dim() {
            return Err(Error::UnsupportedDimension(directions.dim()));
        }
        let field = SplineField::new(grid.dim(), grid.points(), f.values());
        let reach = if f.is_zero() { -1.0 } else { f.effective_support() };
        Ok(Self { field, grid, offsets, directions, reach, support: f.support() })
    }

    /// Radon samples for direction `j` at every offset.
    pub fn column(&self, j: usize) -> Vec<f64> {
        let mut out = vec![0.0; self.offsets.len()];
        if self.reach < 0.0 {
            return out;
        }
        let (w, sign) = canonical(self.directions.point3(j), self.grid.dim());
        let h = self.grid.spacing();
        let limit = self.reach + h;
        // spline coefficients ring a few cells past the last nonzero sample
        let nt = (limit / h).ceil() as isize + 10;
        for (i, o) in out.iter_mut().enumerate() {
            let p = self.offsets.value(i);
            if p.abs() > limit {
                continue;
            }
            *o = self.hyperplane_integral(sign * p, &w, nt, h);
        }
        out
    }

    fn hyperplane_integral(&self, p: f64, w: &[f64; 3], nt: isize, h: f64) -> f64 {
        let g = &self.grid;
        if g.dim() == 2 {
            let u = [-w[1], w[0]];
            let (bx, by) = (g.to_index(p * w[0]), g.to_index(p * w[1]));
            let mut acc = 0.0;
            for k in -nt..=nt {
                let t = k as f64;
                acc += self.field.eval2(bx + t * u[0], by + t * u[1]);
            }
            return acc * h;
        }
        let (u, v) = plane_frame(w);
        let base = [g.to_index(p * w[0]), g.to_index(p * w[1]), g.to_index(p * w[2])];
        let r2 = ((nt as f64) * h).powi(2) - p * p;
        if r2 <= 0.0 {
            return 0.0;
        }
        let rad = r2.sqrt() / h;
        let kmax = rad.ceil() as isize;
        let mut acc = 0.0;
        for a in -kmax..=kmax {
            let s = a as f64;
            for b in -kmax..=kmax {
                let t = b as f64;
                if s * s + t * t > rad * rad + 1.0 {
                    continue;
                }
                acc += self.field.eval3(
                    base[0] + s * u[0] + t * v[0],
                    base[1] + s * u[1] + t * v[1],
                    base[2] + s * u[2] + t * v[2],
                );
            }
        }
        acc * h * h
    }

    /// Assembles columns (in direction order) into a sinogram.
    pub fn assemble(&self, columns: Vec<Vec<f64>>) -> Result<Sinogram> {
        let values = columns.into_iter().flatten().collect();
        Sinogram::new(self.offsets, self.directions.clone(), values, self.support)
    }
}

// Representative of {w, -w} whose first nonzero component is positive, and
// the sign relating it to w. Using it makes (p, w) and (-p, -w) share one
// code path, so the transform is exactly even.
fn canonical(w: [f64; 3], n: usize) -> ([f64; 3], f64) {
    let lead = w[..n].iter().copied().find(|c| *c != 0.0).unwrap_or(1.0);
    if lead > 0.0 {
        (w, 1.0)
    } else {
        ([-w[0], -w[1], -w[2]], -1.0)
    }
}

// Orthonormal basis (u, v) of the plane orthogonal to the unit vector w.
fn plane_frame(w: &[f64; 3]) -> ([f64; 3], [f64; 3]) {
    let axis = (0..3).min_by(|&a, &b| w[a].abs().total_cmp(&w[b].abs())).unwrap();
    let mut e = [0.0; 3];
    e[axis] = 1.0;
    let u = cross(w, &e);
    let nu = (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]).sqrt();
    let u = [u[0] / nu, u[1] / nu, u[2] / nu];
    let v = cross(w, &u);
    (u, v)
}

fn cross(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// Samples `Rf(p_i, w_j)` on the given offsets and directions.
pub fn radon_transform(f: &SampledFunction, offsets: OffsetGrid, directions: &DirectionSet) -> Result<Sinogram> {
    let plan = RadonPlan::new(f, offsets, directions)?;
    let columns = (0..directions.len()).map(|j| plan.column(j)).collect();
    plan.assemble(columns)
}

/// `max |s(p, w) - s(-p, -w)|` over the sample grid.
pub fn evenness_defect(s: &Sinogram) -> Result<f64> {
    let anti = s.directions.antipodes()?;
    let p = s.offsets.len();
    let mut d: f64 = 0.0;
    for (j, &a) in anti.iter().enumerate() {
        let (c, ca) = (s.column(j), s.column(a));
        for i in 0..p {
            d = d.max((c[i] - ca[p - 1 - i]).abs());
        }
    }
    Ok(d)
}

/// `w_j -> int s(p, w_j) p^k dp` for every direction.
pub fn moment(s: &Sinogram, k: u32) -> Vec<f64> {
    let range = s.active_offsets();
    (0..s.directions.len())
        .map(|j| {
            let col = s.column(j);
            range.clone().map(|i| col[i] * s.offsets.value(i).powi(k as i32) * s.offsets.weight(i)).sum()
        })
        .collect()
}

/// Harmonic expansion of the `k`-th moment.
pub fn moment_expansion(s: &Sinogram, k: u32) -> HarmonicExpansion {
    HarmonicExpansion::project_real(&s.directions, &moment(s, k))
}

/// Reconstructs `f` on `grid` from its Radon samples.
///
/// The sinogram is Fourier transformed in `p`, giving `F f(r w_j)` on a polar
/// grid, and the inverse transform
/// `f(x) = sigma_n sum_j w_j int_0^rmax F f(r w_j) e^{2 pi i r x.w_j} r^{n-1} dr`
/// is evaluated through one tabulated radial integral per direction.
pub fn inverse_radon(s: &Sinogram, grid: GridSpec) -> Result<SampledFunction> {
    if grid.dim() != s.dim() {
        return Err(Error::ShapeMismatch("target grid dimension differs from the sinogram"));
    }
    let even = evenness_defect(s)?;
    if even > EVENNESS_TOLERANCE {
        return Err(Error::NotEven(even));
    }
    if s.is_zero() {
        return Ok(SampledFunction::zeros(grid));
    }
    let spectrum = crate::slice::truncated_spectrum(s)?;
    let n = s.dim();
    let sigma = crate::math::sphere_area(n);
    let dirs = s.directions();
    let reach = grid.half_width() * (n as f64).sqrt();
    let dt = grid.spacing() / 4.0;
    let tn = (reach / dt).ceil() as usize + 4;
    let tlen = 2 * tn + 1;
    let radial_w: Vec<f64> = spectrum
        .radii
        .iter()
        .zip(&spectrum.weights)
        .map(|(r, w)| w * r.powi(n as i32 - 1) * sigma)
        .collect();
    let mut profiles = Vec::with_capacity(dirs.len());
    for j in 0..dirs.len() {
        let weighted: Vec<Complex64> = radial_w.iter().enumerate().map(|(i, rw)| spectrum.ft.get(i, j) * *rw).collect();
        let mut g = vec![0.0; tlen];
        for (k, gk) in g.iter_mut().enumerate() {
            let t = (k as f64 - tn as f64) * dt;
            let (sn, cs) = (2.0 * core::f64::consts::PI * spectrum.dr * t).sin_cos();
            let step = Complex64::new(cs, sn);
            let mut phase = Complex64::new(1.0, 0.0);
            let mut acc = 0.0;
            for v in &weighted {
                acc += v.re * phase.re - v.im * phase.im;
                phase *= step;
            }
            *gk = acc;
        }
        profiles.push(SplineField::new(1, tlen, &g));
    }
    let support = s.support();
    let mut values = vec![0.0; grid.len()];
    for (k, val) in values.iter_mut().enumerate() {
        let x = grid.node(k);
        if let Some(r) = support {
            if crate::grid::norm(&x) > r {
                continue;
            }
        }
        let mut acc = 0.0;
        for j in 0..dirs.len() {
            let w = dirs.point3(j);
            let t = x[0] * w[0] + x[1] * w[1] + x[2] * w[2];
            acc += dirs.weight(j) * profiles[j].eval1(t / dt + tn as f64);
        }
        *val = acc;
    }
    SampledFunction::new(grid, values, support)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{integrate, make_bump};
    use proptest::prelude::*;

    fn setup(m: usize) -> (GridSpec, OffsetGrid, DirectionSet) {
        let g = GridSpec::new(2, m, 1.5).unwrap();
        (g, OffsetGrid::for_grid(&g), DirectionSet::circle(32).unwrap())
    }

    #[test]
    fn zero_function_gives_zero_sinogram() {
        let (g, o, d) = setup(65);
        let s = radon_transform(&SampledFunction::zeros(g), o, &d).unwrap();
        assert!(s.is_zero());
    }

    #[test]
    fn disk_chords() {
        // A steep radial profile approximating the unit disk indicator.
        let (g, o, d) = setup(257);
        let profile = |r2: f64| if r2 >= 1.0 { 0.0 } else { (1.0 - r2.powi(20)).powi(3) };
        let f = SampledFunction::from_fn(g, Some(1.0), |x| profile(x[0] * x[0] + x[1] * x[1])).unwrap();
        let s = radon_transform(&f, o, &d).unwrap();
        for i in 0..o.len() {
            let p = o.value(i);
            if p.abs() >= 1.0 {
                continue;
            }
            // line integral of the profile itself by a fine midpoint rule
            let half = (1.0 - p * p).sqrt();
            let k = 20000;
            let exact: f64 = (0..k)
                .map(|m| {
                    let t = -half + (m as f64 + 0.5) * 2.0 * half / k as f64;
                    profile(p * p + t * t)
                })
                .sum::<f64>()
                * 2.0
                * half
                / k as f64;
            for j in [0, 3, 11] {
                assert!((s.get(i, j) - exact).abs() < 2e-3, "p={p}: {} vs {exact}", s.get(i, j));
            }
            // chord length, up to the smoothing of the indicator
            let smoothing = (exact - 2.0 * half).abs();
            assert!((s.get(i, 3) - 2.0 * half).abs() <= smoothing + 2e-3);
        }
    }

    #[test]
    fn odd_sinogram_evenness_defect() {
        let (_, o, d) = setup(65);
        let s = Sinogram::from_fn(o, d, None, |p, _| p).unwrap();
        let want = 2.0 * o.max_abs();
        assert!((evenness_defect(&s).unwrap() - want).abs() < 1e-12);
    }

    #[test]
    fn evenness_needs_antipodes() {
        let (_, o, _) = setup(65);
        let s = Sinogram::from_fn(o, DirectionSet::circle(7).unwrap(), None, |p, _| p).unwrap();
        assert!(matches!(evenness_defect(&s), Err(Error::DirectionsNotAntipodal)));
    }

    #[test]
    fn zeroth_moment_is_the_mass() {
        let (g, o, d) = setup(129);
        let f = make_bump(&[0.2, -0.1], 0.5, 1.0, g).unwrap();
        let s = radon_transform(&f, o, &d).unwrap();
        let mass = integrate(&f);
        for m in moment(&s, 0) {
            assert!((m - mass).abs() < 1e-6, "{m} vs {mass}");
        }
        assert!(evenness_defect(&s).unwrap() < 1e-8);
    }

    #[test]
    fn vanishes_beyond_support() {
        let (g, o, d) = setup(129);
        let f = make_bump(&[0.3, 0.2], 0.4, 1.0, g).unwrap();
        let r = f.support().unwrap();
        let s = radon_transform(&f, o, &d).unwrap();
        for j in 0..d.len() {
            for i in 0..o.len() {
                if o.value(i).abs() > r + g.spacing() {
                    assert!(s.get(i, j).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn three_dimensional_moment() {
        let g = GridSpec::new(3, 49, 1.0).unwrap();
        let f = make_bump(&[0.1, 0.0, -0.1], 0.5, 1.0, g).unwrap();
        let d = DirectionSet::sphere(3).unwrap();
        let s = radon_transform(&f, OffsetGrid::for_grid(&g), &d).unwrap();
        let mass = integrate(&f);
        for m in moment(&s, 0) {
            assert!((m - mass).abs() < 1e-5 * mass, "{m} vs {mass}");
        }
        assert!(evenness_defect(&s).unwrap() < 1e-12);
    }

    #[test]
    fn zero_sinogram_inverts_to_zero() {
        let (g, o, d) = setup(65);
        let s = Sinogram::from_fn(o, d, Some(0.0), |_, _| 0.0).unwrap();
        assert!(inverse_radon(&s, g).unwrap().is_zero());
    }

    #[test]
    fn inversion_rejects_odd_input() {
        let (g, o, d) = setup(65);
        let s = Sinogram::from_fn(o, d, None, |p, _| p).unwrap();
        assert!(matches!(inverse_radon(&s, g), Err(Error::NotEven(_))));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(8))]
        #[test]
        fn transform_is_exactly_even(cx in -0.4f64..0.4, cy in -0.4f64..0.4, r in 0.2f64..0.6) {
            let (g, o, d) = setup(65);
            let f = make_bump(&[cx, cy], r, 1.0, g).unwrap();
            let s = radon_transform(&f, o, &d).unwrap();
            prop_assert!(evenness_defect(&s).unwrap() < 1e-8);
        }

        #[test]
        fn transform_is_linear(a in -2.0f64..2.0, b in -2.0f64..2.0) {
            let (g, o, d) = setup(65);
            // a common declared support keeps the hyperplane cutoffs identical
            let common = |b: SampledFunction| SampledFunction::new(g, b.values().to_vec(), Some(0.75)).unwrap();
            let f = common(make_bump(&[0.1, 0.2], 0.5, 1.0, g).unwrap());
            let h = common(make_bump(&[-0.3, 0.0], 0.4, 1.0, g).unwrap());
            let lhs = radon_transform(&f.scaled(a).add(&h.scaled(b)).unwrap(), o, &d).unwrap();
            let sf = radon_transform(&f, o, &d).unwrap();
            let sh = radon_transform(&h, o, &d).unwrap();
            let scale = 1.0 + lhs.max_abs();
            for k in 0..lhs.values().len() {
                let rhs = a * sf.values()[k] + b * sh.values()[k];
                prop_assert!((lhs.values()[k] - rhs).abs() < 1e-6 * scale);
            }
        }
    }
}
