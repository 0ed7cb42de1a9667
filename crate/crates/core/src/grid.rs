//! Regular grids, sampled test functions and direction quadratures.

use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)] // float methods are inherent once std is linked
use num_traits::Float;
use core::f64::consts::PI;

use crate::harmonics::{basis_len, eval_basis_into};
use crate::math::gauss_legendre;
use crate::{Error, Result};

/// Cubic grid `[-L, L]^n` with `M` nodes per axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    n: usize,
    points: usize,
    half_width: f64,
}

impl GridSpec {
    pub fn new(n: usize, points: usize, half_width: f64) -> Result<Self> {
        if !(2..=3).contains(&n) {
            return Err(Error::UnsupportedDimension(n));
        }
        if points < 33 || points % 2 == 0 {
            return Err(Error::InvalidGrid("points per axis must be odd and at least 33"));
        }
        if !(half_width > 0.0 && half_width.is_finite()) {
            return Err(Error::InvalidGrid("half-width must be positive"));
        }
        Ok(Self { n, points, half_width })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / (self.points - 1) as f64
    }

    /// Total number of nodes, `M^n`.
    pub fn len(&self) -> usize {
        self.points.pow(self.n as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Coordinate of node `i` along any axis.
    pub fn coord(&self, i: usize) -> f64 {
        // symmetric about the middle node so that the origin is exact
        let mid = (self.points / 2) as isize;
        (i as isize - mid) as f64 * self.spacing()
    }

    /// Multi-index of the flat (row-major) index.
    pub fn index(&self, flat: usize) -> [usize; 3] {
        let m = self.points;
        match self.n {
            2 => [flat / m, flat % m, 0],
            _ => [flat / (m * m), (flat / m) % m, flat % m],
        }
    }

    pub fn flat(&self, idx: &[usize]) -> usize {
        idx.iter().take(self.n).fold(0, |acc, &i| acc * self.points + i)
    }

    /// Position of the node with flat index `flat` (unused trailing components are 0).
    pub fn node(&self, flat: usize) -> [f64; 3] {
        let idx = self.index(flat);
        let mut x = [0.0; 3];
        for a in 0..self.n {
            x[a] = self.coord(idx[a]);
        }
        x
    }

    /// Fractional index coordinate of the position `x` along one axis.
    pub fn to_index(&self, x: f64) -> f64 {
        x / self.spacing() + (self.points / 2) as f64
    }

    /// Product-trapezoid weight of the node at `flat`, including `h^n`.
    pub fn weight(&self, flat: usize) -> f64 {
        let idx = self.index(flat);
        let h = self.spacing();
        let mut w = h.powi(self.n as i32);
        for &i in idx.iter().take(self.n) {
            if i == 0 || i == self.points - 1 {
                w *= 0.5;
            }
        }
        w
    }
}

/// Real samples of a compactly supported function on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    grid: GridSpec,
    values: Vec<f64>,
    support: Option<f64>,
}

impl SampledFunction {
    pub fn new(grid: GridSpec, values: Vec<f64>, support: Option<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidSamples("value count does not match the grid"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidSamples("non-finite sample"));
        }
        if let Some(r) = support {
            if !(r >= 0.0) {
                return Err(Error::InvalidSamples("support radius must be nonnegative"));
            }
            for (k, v) in values.iter().enumerate() {
                let x = grid.node(k);
                if *v != 0.0 && norm(&x) > r {
                    return Err(Error::InvalidSamples("nonzero sample outside the declared support"));
                }
            }
        }
        Ok(Self { grid, values, support })
    }

    pub fn zeros(grid: GridSpec) -> Self {
        Self { grid, values: vec![0.0; grid.len()], support: Some(0.0) }
    }

    /// Samples `f` at every node. Nodes outside `support` (if given) are set to 0.
    pub fn from_fn(grid: GridSpec, support: Option<f64>, f: impl Fn(&[f64]) -> f64) -> Result<Self> {
        let values = (0..grid.len())
            .map(|k| {
                let x = grid.node(k);
                match support {
                    Some(r) if norm(&x) > r => 0.0,
                    _ => f(&x[..grid.dim()]),
                }
            })
            .collect();
        Self::new(grid, values, support)
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn support(&self) -> Option<f64> {
        self.support
    }

    /// Declared support radius, or the radius of the farthest nonzero node.
    pub fn effective_support(&self) -> f64 {
        self.support.unwrap_or_else(|| {
            self.values
                .iter()
                .enumerate()
                .filter(|(_, v)| **v != 0.0)
                .map(|(k, _)| norm(&self.grid.node(k)))
                .fold(0.0, f64::max)
        })
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| *v == 0.0)
    }

    pub fn scaled(&self, c: f64) -> Self {
        let support = if c == 0.0 { Some(0.0) } else { self.support };
        Self { grid: self.grid, values: self.values.iter().map(|v| c * v).collect(), support }
    }

    /// Pointwise sum; the declared support is the larger of the two.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.grid != other.grid {
            return Err(Error::ShapeMismatch("functions live on different grids"));
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        let support = match (self.support, other.support) {
            (Some(a), Some(b)) => Some(a.max(b)),
            _ => None,
        };
        Ok(Self { grid: self.grid, values, support })
    }

    /// Positions and values of all nonzero nodes, for direct quadratures.
    pub fn nonzero_nodes(&self) -> NodeCloud {
        let mut cloud = NodeCloud { dim: self.grid.dim(), cell: self.grid.spacing().powi(self.grid.dim() as i32), xs: Vec::new(), values: Vec::new() };
        for (k, v) in self.values.iter().enumerate() {
            if *v != 0.0 {
                cloud.xs.push(self.grid.node(k));
                cloud.values.push(*v * self.grid.weight(k) / cloud.cell);
            }
        }
        cloud
    }
}

/// Weighted point samples `(x_k, v_k)` with common cell volume.
#[derive(Debug, Clone)]
pub struct NodeCloud {
    pub dim: usize,
    pub cell: f64,
    pub xs: Vec<[f64; 3]>,
    pub values: Vec<f64>,
}

pub(crate) fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// Smooth bump `amplitude * exp(1 - rho^2 / (rho^2 - |x - c|^2))` supported in the ball `B(c, rho)`.
pub fn make_bump(center: &[f64], radius: f64, amplitude: f64, grid: GridSpec) -> Result<SampledFunction> {
    let n = grid.dim();
    if center.len() != n {
        return Err(Error::ShapeMismatch("center dimension differs from grid dimension"));
    }
    if !(radius > 0.0) {
        return Err(Error::InvalidSamples("bump radius must be positive"));
    }
    if center.iter().any(|c| c.abs() + radius > grid.half_width()) {
        return Err(Error::BallOutsideGrid);
    }
    let r2 = radius * radius;
    let values = (0..grid.len())
        .map(|k| {
            let x = grid.node(k);
            let d2: f64 = (0..n).map(|a| (x[a] - center[a]).powi(2)).sum();
            if d2 < r2 {
                amplitude * (1.0 - r2 / (r2 - d2)).exp()
            } else {
                0.0
            }
        })
        .collect();
    let support = norm(center) + radius;
    Ok(SampledFunction { grid, values, support: Some(support) })
}

/// Product-trapezoid integral of the samples.
pub fn integrate(f: &SampledFunction) -> f64 {
    f.values.iter().enumerate().filter(|(_, v)| **v != 0.0).map(|(k, v)| v * f.grid.weight(k)).sum()
}

pub fn l2_norm_sq(f: &SampledFunction) -> f64 {
    f.values.iter().enumerate().filter(|(_, v)| **v != 0.0).map(|(k, v)| v * v * f.grid.weight(k)).sum()
}

/// Quadrature rule on the unit sphere `S^{n-1}` for the normalized measure.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectionSet {
    n: usize,
    points: Vec<[f64; 3]>,
    weights: Vec<f64>,
    band_limit: usize,
    antipode: Option<Vec<usize>>,
}

impl DirectionSet {
    /// `q` equispaced directions on the circle with weights `1/q`.
    ///
    /// Exact for products of harmonics up to degree `(q - 1) / 2`.
    pub fn circle(q: usize) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidDirections("need at least two directions"));
        }
        let mut points = Vec::with_capacity(q);
        for j in 0..q {
            let t = 2.0 * PI * j as f64 / q as f64;
            points.push([t.cos(), t.sin(), 0.0]);
        }
        let antipode = if q % 2 == 0 { Some((0..q).map(|j| (j + q / 2) % q).collect()) } else { None };
        let mut set = Self { n: 2, points, weights: vec![1.0 / q as f64; q], band_limit: (q - 1) / 2, antipode };
        set.symmetrize();
        set.verify()?;
        Ok(set)
    }

    /// Gauss-Legendre (in the polar cosine) times equispaced azimuth product rule on `S^2`.
    ///
    /// Uses `band + 1` polar nodes and `2 band + 2` azimuths, so products of
    /// harmonics up to degree `band` are integrated exactly.
    pub fn sphere(band: usize) -> Result<Self> {
        let (zs, ws) = gauss_legendre(band + 1);
        let naz = 2 * band + 2;
        let mut points = Vec::with_capacity(zs.len() * naz);
        let mut weights = Vec::with_capacity(zs.len() * naz);
        let mut antipode = Vec::with_capacity(zs.len() * naz);
        for (i, (&z, &w)) in zs.iter().zip(&ws).enumerate() {
            let s = (1.0 - z * z).max(0.0).sqrt();
            for k in 0..naz {
                let phi = 2.0 * PI * k as f64 / naz as f64;
                points.push([s * phi.cos(), s * phi.sin(), z]);
                weights.push(0.5 * w / naz as f64);
                antipode.push((zs.len() - 1 - i) * naz + (k + naz / 2) % naz);
            }
        }
        let mut set = Self { n: 3, points, weights, band_limit: band, antipode: Some(antipode) };
        set.symmetrize();
        set.verify()?;
        Ok(set)
    }

    /// `q` equispaced directions on the equator of `S^2`.
    ///
    /// This is not a quadrature for the sphere; its band limit is 0.
    pub fn equatorial(q: usize) -> Result<Self> {
        let circle = Self::circle(q)?;
        Ok(Self { n: 3, band_limit: 0, ..circle })
    }

    /// Arbitrary unit directions and positive weights (normalized to sum 1); band limit 0.
    pub fn from_points(n: usize, points: Vec<[f64; 3]>, weights: Vec<f64>) -> Result<Self> {
        if !(2..=3).contains(&n) {
            return Err(Error::UnsupportedDimension(n));
        }
        if points.is_empty() || points.len() != weights.len() {
            return Err(Error::InvalidDirections("points and weights must be nonempty and of equal length"));
        }
        if weights.iter().any(|w| !(*w > 0.0)) {
            return Err(Error::InvalidDirections("weights must be positive"));
        }
        for p in &points {
            if (norm(&p[..n]) - 1.0).abs() > 1e-12 || (n == 2 && p[2] != 0.0) {
                return Err(Error::InvalidDirections("directions must be unit vectors"));
            }
        }
        let total: f64 = weights.iter().sum();
        let weights = weights.into_iter().map(|w| w / total).collect();
        let antipode = find_antipodes(&points);
        Ok(Self { n, points, weights, band_limit: 0, antipode })
    }

    // Makes antipodal pairs exact negations of each other.
    fn symmetrize(&mut self) {
        if let Some(anti) = &self.antipode {
            for j in 0..self.points.len() {
                let a = anti[j];
                if a > j {
                    let p = self.points[j];
                    self.points[a] = [-p[0], -p[1], -p[2]];
                }
            }
        }
    }

    /// Checks that harmonics of degree `1..=band_limit` integrate to zero and constants to one.
    pub fn verify(&self) -> Result<()> {
        let len = basis_len(self.n, self.band_limit);
        let mut acc = vec![0.0; len];
        let mut basis = vec![0.0; len];
        for (p, w) in self.points.iter().zip(&self.weights) {
            eval_basis_into(self.n, self.band_limit, p, &mut basis);
            for (a, y) in acc.iter_mut().zip(&basis) {
                *a += w * y;
            }
        }
        if (acc[0] - 1.0).abs() > 1e-10 || acc[1..].iter().any(|a| a.abs() > 1e-10) {
            return Err(Error::InvalidDirections("quadrature is not exact up to its band limit"));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn band_limit(&self) -> usize {
        self.band_limit
    }

    /// Direction `j` as a slice of length `n`.
    pub fn point(&self, j: usize) -> &[f64] {
        &self.points[j][..self.n]
    }

    pub fn point3(&self, j: usize) -> [f64; 3] {
        self.points[j]
    }

    pub fn weight(&self, j: usize) -> f64 {
        self.weights[j]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Index of `-omega_j`, if the set is antipodally closed.
    pub fn antipodes(&self) -> Result<&[usize]> {
        self.antipode.as_deref().ok_or(Error::DirectionsNotAntipodal)
    }
}

fn find_antipodes(points: &[[f64; 3]]) -> Option<Vec<usize>> {
    let mut out = Vec::with_capacity(points.len());
    for p in points {
        let j = points.iter().position(|q| (0..3).all(|a| (p[a] + q[a]).abs() < 1e-12))?;
        out.push(j);
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn grid2(m: usize) -> GridSpec {
        GridSpec::new(2, m, 1.5).unwrap()
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(GridSpec::new(2, 32, 1.0).is_err());
        assert!(GridSpec::new(2, 31, 1.0).is_err());
        assert!(GridSpec::new(4, 33, 1.0).is_err());
        assert!(GridSpec::new(2, 33, 0.0).is_err());
    }

    #[test]
    fn origin_is_a_node() {
        let g = grid2(65);
        assert_eq!(g.coord(32), 0.0);
        assert!((g.coord(0) + 1.5).abs() < 1e-15);
        assert!((g.coord(64) - 1.5).abs() < 1e-15);
    }

    #[test]
    fn bump_peak_and_cutoff() {
        let g = grid2(65);
        let f = make_bump(&[0.0, 0.0], 0.5, 1.0, g).unwrap();
        assert_eq!(f.values()[g.flat(&[32, 32])], 1.0);
        for k in 0..g.len() {
            if norm(&g.node(k)) >= 0.5 {
                assert_eq!(f.values()[k], 0.0);
            }
        }
        assert!(matches!(make_bump(&[1.2, 0.0], 0.5, 1.0, g), Err(Error::BallOutsideGrid)));
    }

    #[test]
    fn constant_box_integral() {
        let g = GridSpec::new(2, 33, 1.0).unwrap();
        let f = SampledFunction::new(g, vec![1.0; g.len()], None).unwrap();
        assert!((integrate(&f) - 4.0).abs() < 1e-13);
        let c = SampledFunction::new(g, vec![3.0; g.len()], None).unwrap();
        assert!((l2_norm_sq(&c) - 36.0).abs() < 1e-12);
        assert_eq!(integrate(&SampledFunction::zeros(g)), 0.0);
    }

    #[test]
    fn bump_quadrature_converges_monotonically() {
        let mut diffs = Vec::new();
        for m in [65usize, 129, 257, 513] {
            let a = integrate(&make_bump(&[0.0, 0.0], 1.0, 1.0, GridSpec::new(2, m, 1.5).unwrap()).unwrap());
            let b = integrate(&make_bump(&[0.0, 0.0], 1.0, 1.0, GridSpec::new(2, 2 * m - 1, 1.5).unwrap()).unwrap());
            diffs.push((a - b).abs());
        }
        for w in diffs.windows(2) {
            assert!(w[1] <= w[0], "{diffs:?}");
        }
    }

    #[test]
    fn direction_sets_are_exact_and_antipodal() {
        let c = DirectionSet::circle(64).unwrap();
        assert_eq!(c.band_limit(), 31);
        let anti = c.antipodes().unwrap();
        for j in 0..c.len() {
            let (p, q) = (c.point(j), c.point(anti[j]));
            assert_eq!(p[0], -q[0]);
            assert_eq!(p[1], -q[1]);
        }
        let s = DirectionSet::sphere(16).unwrap();
        assert!((s.weights().iter().sum::<f64>() - 1.0).abs() < 1e-14);
        let anti = s.antipodes().unwrap();
        for j in 0..s.len() {
            for a in 0..3 {
                assert_eq!(s.point(j)[a], -s.point(anti[j])[a]);
            }
        }
        assert!(DirectionSet::circle(7).unwrap().antipodes().is_err());
    }

    proptest! {
        #[test]
        fn integrate_is_linear(a in -3.0f64..3.0, b in -3.0f64..3.0, cx in -0.3f64..0.3) {
            let g = grid2(65);
            let f = make_bump(&[cx, 0.1], 0.5, 1.0, g).unwrap();
            let h = make_bump(&[0.0, -cx], 0.7, 2.0, g).unwrap();
            let lhs = integrate(&f.scaled(a).add(&h.scaled(b)).unwrap());
            let rhs = a * integrate(&f) + b * integrate(&h);
            prop_assert!((lhs - rhs).abs() < 1e-13 * (1.0 + lhs.abs()));
        }

        #[test]
        fn l2_norm_is_nonnegative(c in -5.0f64..5.0, r in 0.1f64..1.0) {
            let f = make_bump(&[0.0, 0.0], r, c, grid2(65)).unwrap();
            prop_assert!(l2_norm_sq(&f) >= 0.0);
        }
    }
}
