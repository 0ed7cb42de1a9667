//! Cubic B-spline interpolation on uniform grids.
//!
//! Samples are turned into interpolation coefficients by the standard
//! recursive prefilter (pole `sqrt(3) - 2`), after which the interpolant is
//! evaluated with the separable cubic B-spline kernel. Outside the grid the
//! coefficients are taken to be zero.

use alloc::vec::Vec;
#[allow(unused_imports)] // float methods are inherent once std is linked
use num_traits::Float;

const POLE: f64 = -0.267_949_192_431_122_7; // sqrt(3) - 2

/// In-place cubic B-spline prefilter of a strided 1-D line with mirror boundaries.
fn prefilter_line(data: &mut [f64], start: usize, stride: usize, len: usize) {
    if len < 2 {
        return;
    }
    let at = |i: usize| start + i * stride;
    let gain = (1.0 - POLE) * (1.0 - 1.0 / POLE);
    for i in 0..len {
        data[at(i)] *= gain;
    }
    // causal initialization (truncated mirror sum)
    let horizon = len.min(40);
    let mut zn = POLE;
    let mut sum = data[at(0)];
    for i in 1..horizon {
        sum += zn * data[at(i)];
        zn *= POLE;
    }
    data[at(0)] = sum;
    for i in 1..len {
        data[at(i)] += POLE * data[at(i - 1)];
    }
    // anticausal initialization
    let last = data[at(len - 1)];
    let prev = data[at(len - 2)];
    data[at(len - 1)] = (POLE / (POLE * POLE - 1.0)) * (last + POLE * prev);
    for i in (0..len - 1).rev() {
        data[at(i)] = POLE * (data[at(i + 1)] - data[at(i)]);
    }
}

#[inline]
fn weights(t: f64) -> [f64; 4] {
    let t2 = t * t;
    let t3 = t2 * t;
    let omt = 1.0 - t;
    [
        omt * omt * omt / 6.0,
        (3.0 * t3 - 6.0 * t2 + 4.0) / 6.0,
        (-3.0 * t3 + 3.0 * t2 + 3.0 * t + 1.0) / 6.0,
        t3 / 6.0,
    ]
}

/// Cubic spline interpolant of samples on a `points^dim` grid (`dim` in 1..=3).
#[derive(Debug, Clone)]
pub struct SplineField {
    dim: usize,
    points: usize,
    coeffs: Vec<f64>,
}

impl SplineField {
    /// Builds the interpolant from row-major samples (last axis fastest).
    pub fn new(dim: usize, points: usize, samples: &[f64]) -> Self {
        assert!((1..=3).contains(&dim));
        assert_eq!(samples.len(), points.pow(dim as u32));
        let mut coeffs = samples.to_vec();
        for axis in 0..dim {
            let stride = points.pow((dim - 1 - axis) as u32);
            let lines = coeffs.len() / points;
            for line in 0..lines {
                // decompose line index into the offset of the first element
                let outer = line / stride;
                let inner = line % stride;
                let start = outer * stride * points + inner;
                prefilter_line(&mut coeffs, start, stride, points);
            }
        }
        Self { dim, points, coeffs }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    fn coeff(&self, idx: [isize; 3]) -> f64 {
        let m = self.points as isize;
        let mut flat = 0isize;
        for &i in idx.iter().take(self.dim) {
            if i < 0 || i >= m {
                return 0.0;
            }
            flat = flat * m + i;
        }
        self.coeffs[flat as usize]
    }

    /// Evaluates the interpolant at fractional index coordinates.
    pub fn eval(&self, u: &[f64]) -> f64 {
        match self.dim {
            1 => self.eval1(u[0]),
            2 => self.eval2(u[0], u[1]),
            _ => self.eval3(u[0], u[1], u[2]),
        }
    }

    pub fn eval1(&self, u: f64) -> f64 {
        let i = u.floor();
        let w = weights(u - i);
        let i = i as isize;
        (0..4).map(|a| w[a] * self.coeff([i - 1 + a as isize, 0, 0])).sum()
    }

    pub fn eval2(&self, u: f64, v: f64) -> f64 {
        let (iu, iv) = (u.floor(), v.floor());
        let (wu, wv) = (weights(u - iu), weights(v - iv));
        let (iu, iv) = (iu as isize - 1, iv as isize - 1);
        let m = self.points as isize;
        if iu < 0 || iv < 0 || iu + 3 >= m || iv + 3 >= m {
            let mut acc = 0.0;
            for a in 0..4 {
                for b in 0..4 {
                    acc += wu[a] * wv[b] * self.coeff([iu + a as isize, iv + b as isize, 0]);
                }
            }
            return acc;
        }
        let mut acc = 0.0;
        for (a, wa) in wu.iter().enumerate() {
            let row = ((iu + a as isize) * m + iv) as usize;
            let c = &self.coeffs[row..row + 4];
            acc += wa * (wv[0] * c[0] + wv[1] * c[1] + wv[2] * c[2] + wv[3] * c[3]);
        }
        acc
    }

    pub fn eval3(&self, u: f64, v: f64, w: f64) -> f64 {
        let (iu, iv, iw) = (u.floor(), v.floor(), w.floor());
        let (wu, wv, ww) = (weights(u - iu), weights(v - iv), weights(w - iw));
        let (iu, iv, iw) = (iu as isize - 1, iv as isize - 1, iw as isize - 1);
        let m = self.points as isize;
        let inside = iu >= 0 && iv >= 0 && iw >= 0 && iu + 3 < m && iv + 3 < m && iw + 3 < m;
        let mut acc = 0.0;
        for (a, wa) in wu.iter().enumerate() {
            for (b, wb) in wv.iter().enumerate() {
                if inside {
                    let row = (((iu + a as isize) * m + iv + b as isize) * m + iw) as usize;
                    let c = &self.coeffs[row..row + 4];
                    acc += wa * wb * (ww[0] * c[0] + ww[1] * c[1] + ww[2] * c[2] + ww[3] * c[3]);
                } else {
                    for (c, wc) in ww.iter().enumerate() {
                        acc += wa
                            * wb
                            * wc
                            * self.coeff([iu + a as isize, iv + b as isize, iw + c as isize]);
                    }
                }
            }
        }
        acc
    }
}
