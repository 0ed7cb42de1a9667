//! Zonal functions on the sphere `S^n` (`n = 2, 3`): spherical functions,
//! spherical Fourier coefficients, the Abel-type Radon transform and its
//! Fourier-slice identity.
//!
//! A zonal function is stored as its profile `F(t) = f(cos t e_1 + sin t e_2)`
//! on `T` equispaced angles in `[0, pi]`.

use alloc::vec::Vec;
use core::f64::consts::PI;
#[allow(unused_imports)] // float methods are inherent once std is linked
use num_traits::Float;

use crate::math::{composite_gauss_legendre, gregory_weights, sphere_area};
use crate::{Error, Result};

/// Order of the Gregory end corrections used for integrals over `[0, pi]`.
pub const GREGORY_ORDER: usize = 8;
const LAGRANGE_POINTS: usize = 8;
/// Default number of profile samples on `[0, pi]`.
pub const DEFAULT_SAMPLES: usize = 2049;
pub const DEFAULT_M_MAX: usize = 12;

/// Samples of a zonal function on `S^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZonalProfile {
    n: usize,
    samples: Vec<f64>,
    support: Option<f64>,
}

impl ZonalProfile {
    pub fn new(n: usize, samples: Vec<f64>, support: Option<f64>) -> Result<Self> {
        if !(2..=3).contains(&n) {
            return Err(Error::UnsupportedDimension(n));
        }
        if samples.len() < 2 * GREGORY_ORDER + 2 {
            return Err(Error::InvalidSamples("too few profile samples"));
        }
        if samples.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidSamples("non-finite profile sample"));
        }
        let p = Self { n, samples, support };
        if let Some(ts) = support {
            if p.samples.iter().enumerate().any(|(k, v)| *v != 0.0 && p.angle(k) > ts) {
                return Err(Error::InvalidSamples("nonzero sample beyond the declared support angle"));
            }
        }
        Ok(p)
    }

    /// Samples `f` on `len` equispaced angles.
    pub fn from_fn(n: usize, len: usize, support: Option<f64>, f: impl Fn(f64) -> f64) -> Result<Self> {
        let dt = PI / (len - 1) as f64;
        let samples = (0..len)
            .map(|k| {
                let t = k as f64 * dt;
                match support {
                    Some(ts) if t > ts => 0.0,
                    _ => f(t),
                }
            })
            .collect();
        Self::new(n, samples, support)
    }

    /// Polar cap bump `exp(k (1 - ts^2 / (ts^2 - t^2)))` for `t < ts`, with sharpness `k`.
    pub fn cap_bump(n: usize, t_supp: f64, len: usize, sharpness: f64) -> Result<Self> {
        if !(t_supp > 0.0 && t_supp < PI) {
            return Err(Error::InvalidSamples("cap angle must lie in (0, pi)"));
        }
        let s2 = t_supp * t_supp;
        Self::from_fn(n, len, Some(t_supp), |t| if t < t_supp { (sharpness * (1.0 - s2 / (s2 - t * t))).exp() } else { 0.0 })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// `(n - 1) / 2`.
    pub fn rho(&self) -> f64 {
        (self.n as f64 - 1.0) / 2.0
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn support(&self) -> Option<f64> {
        self.support
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn step(&self) -> f64 {
        PI / (self.samples.len() - 1) as f64
    }

    pub fn angle(&self, k: usize) -> f64 {
        k as f64 * self.step()
    }

    /// Interpolated profile value at any angle, using the even reflections at `0` and `pi`.
    pub fn eval(&self, t: f64) -> f64 {
        let last = (self.samples.len() - 1) as isize;
        let u = t / self.step();
        let base = u.floor() as isize - (LAGRANGE_POINTS as isize / 2 - 1);
        let frac = u - base as f64;
        let fetch = |i: isize| {
            let mut i = i.abs();
            if i > last {
                i = 2 * last - i;
            }
            self.samples[i.clamp(0, last) as usize]
        };
        if (u - u.round()).abs() < 1e-13 {
            return fetch(u.round() as isize);
        }
        // Lagrange basis on the nodes 0..LAGRANGE_POINTS at position frac
        let mut acc = 0.0;
        for a in 0..LAGRANGE_POINTS {
            let mut w = 1.0;
            for b in 0..LAGRANGE_POINTS {
                if a != b {
                    w *= (frac - b as f64) / (a as f64 - b as f64);
                }
            }
            acc += w * fetch(base + a as isize);
        }
        acc
    }
}

/// `psi_m(t) = C_m^l(cos t) / C_m^l(1)` with `l = (n - 1) / 2`.
pub fn spherical_function(m: usize, t: f64, n: usize) -> f64 {
    gegenbauer(m, (n as f64 - 1.0) / 2.0, t.cos()) / gegenbauer(m, (n as f64 - 1.0) / 2.0, 1.0)
}

/// Gegenbauer polynomial `C_m^l(x)` by the three-term recurrence.
pub fn gegenbauer(m: usize, l: f64, x: f64) -> f64 {
    let mut c0 = 1.0;
    if m == 0 {
        return c0;
    }
    let mut c1 = 2.0 * l * x;
    for k in 1..m {
        let kf = k as f64;
        let c2 = (2.0 * (kf + l) * x * c1 - (kf + 2.0 * l - 1.0) * c0) / (kf + 1.0);
        c0 = c1;
        c1 = c2;
    }
    c1
}

/// Spherical Fourier coefficients `f(m) = int_0^pi F(t) psi_m(t) sin^{n-1}(t) dt`.
#[derive(Debug, Clone, PartialEq)]
pub struct SphericalCoefficients {
    pub values: Vec<f64>,
    /// `int_{S^n} f psi_m = normalization * values[m]` (the area of `S^{n-1}`).
    pub normalization: f64,
}

fn interval_weights(len: usize) -> Vec<f64> {
    let dt = PI / (len - 1) as f64;
    gregory_weights(len, GREGORY_ORDER).into_iter().map(|w| w * dt).collect()
}

pub fn spherical_transform(f: &ZonalProfile, m_max: usize) -> SphericalCoefficients {
    let w = interval_weights(f.len());
    let n = f.dim();
    let values = (0..=m_max)
        .map(|m| {
            f.samples
                .iter()
                .enumerate()
                .filter(|(_, v)| **v != 0.0)
                .map(|(k, v)| {
                    let t = f.angle(k);
                    w[k] * v * spherical_function(m, t, n) * t.sin().powi(n as i32 - 1)
                })
                .sum()
        })
        .collect();
    SphericalCoefficients { values, normalization: sphere_area(n) }
}

/// `R f(s) = (2^rho rho / pi) int_s^pi F(t) sin t (cos s - cos t)^{rho - 1} dt`.
///
/// With `v = (cos s - cos t)^rho` the integral becomes
/// `(2^rho / pi) int_0^{U^rho} F(arccos(cos s - v^{1/rho})) dv`, whose
/// integrand is smooth for a smooth zonal `F`; it is integrated by composite
/// Gauss-Legendre.
pub fn sphere_radon(f: &ZonalProfile, s: f64) -> f64 {
    let rho = f.rho();
    let end = f.support().unwrap_or(PI).min(PI);
    if s >= end {
        return 0.0;
    }
    let cs = s.cos();
    let upper = cs - end.cos();
    if upper <= 0.0 {
        return 0.0;
    }
    let vmax = upper.powf(rho);
    let span = end - s;
    let panels = ((span / f.step()) / 4.0).ceil().max(4.0) as usize;
    let (nodes, weights) = composite_gauss_legendre(0.0, vmax, panels, 8);
    let mut acc = 0.0;
    for (v, w) in nodes.iter().zip(&weights) {
        let x = (cs - v.powf(1.0 / rho)).clamp(-1.0, 1.0);
        acc += w * f.eval(x.acos());
    }
    2f64.powf(rho) / PI * acc
}

/// `R f` on every sample angle of the profile.
pub fn sphere_radon_profile(f: &ZonalProfile) -> Vec<f64> {
    (0..f.len()).map(|k| sphere_radon(f, f.angle(k))).collect()
}

/// Outcome of the Fourier-slice comparison on the sphere.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereSliceReport {
    /// `max_m |f(m) - c g(m)| / max_m |f(m)|` over `1 <= m <= m_max`.
    pub defect: f64,
    /// Constant calibrated at `m = 0`.
    pub constant: f64,
    /// `f(m) / g(m)` for every `m`.
    pub constants: Vec<f64>,
    /// `max_m |c_m - c| / |c|`.
    pub spread: f64,
    pub coefficients: Vec<f64>,
    /// `g(m) = int_0^pi cos((m + rho) t) R f(t) dt`.
    pub slice: Vec<f64>,
}

pub fn sphere_slice(f: &ZonalProfile, m_max: usize) -> Result<SphereSliceReport> {
    let coeffs = spherical_transform(f, m_max).values;
    if coeffs[0] == 0.0 {
        return Err(Error::DegenerateCalibration);
    }
    let radon = sphere_radon_profile(f);
    let w = interval_weights(f.len());
    let rho = f.rho();
    let slice: Vec<f64> = (0..=m_max)
        .map(|m| {
            radon
                .iter()
                .enumerate()
                .filter(|(_, v)| **v != 0.0)
                .map(|(k, v)| w[k] * v * ((m as f64 + rho) * f.angle(k)).cos())
                .sum()
        })
        .collect();
    if slice[0] == 0.0 {
        return Err(Error::DegenerateCalibration);
    }
    let c = coeffs[0] / slice[0];
    let scale = coeffs.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let defect = (1..=m_max).map(|m| (coeffs[m] - c * slice[m]).abs() / scale).fold(0.0, f64::max);
    let constants: Vec<f64> = coeffs.iter().zip(&slice).map(|(a, b)| a / b).collect();
    let spread = constants.iter().map(|cm| (cm - c).abs() / c.abs()).fold(0.0, f64::max);
    Ok(SphereSliceReport { defect, constant: c, constants, spread, coefficients: coeffs, slice })
}

pub fn sphere_slice_defect(f: &ZonalProfile, m_max: usize) -> Result<f64> {
    Ok(sphere_slice(f, m_max)?.defect)
}

/// Detected support angles of `F` and of `R f` at threshold `1e-9 max`.
pub fn sphere_support_check(f: &ZonalProfile) -> Result<(f64, f64)> {
    if f.dim() != 3 {
        return Err(Error::Precondition("support comparison is implemented for S^3"));
    }
    let radon = sphere_radon_profile(f);
    Ok((detected_support(f, &f.samples), detected_support(f, &radon)))
}

fn detected_support(f: &ZonalProfile, values: &[f64]) -> f64 {
    let peak = values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    if peak == 0.0 {
        return 0.0;
    }
    let thr = 1e-9 * peak;
    values.iter().rposition(|v| v.abs() > thr).map_or(0.0, |k| f.angle(k))
}
