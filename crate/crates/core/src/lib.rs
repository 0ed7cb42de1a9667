//! Numerical core for Paley-Wiener type characterizations of integral
//! transforms.
//!
//! The crate is `no_std` and only needs `alloc`. It covers:
//!
//! * [`grid`]: sampled compactly supported functions on regular grids,
//!   direction sets on the circle and the sphere, quadrature.
//! * [`radon`]: the Radon transform on `R^n` (`n = 2, 3`), evenness and
//!   moment functionals, inversion through the Fourier-slice route.
//! * [`slice`]: the radial Fourier transform of sinograms, the vector-valued
//!   Fourier transform of the Euclidean motion group, Plancherel and
//!   pointwise inversion, marginal projections.
//! * [`pw`]: holomorphic continuation in the spectral variable and on the
//!   complexified sphere, Paley-Wiener seminorms, exponential type
//!   estimation and the moment homogeneity certificate.
//! * [`sphere`]: zonal functions on `S^n`, spherical functions, the
//!   Abel-type Radon transform and its Fourier-slice identity.
//! * [`weyl`]: Weyl groups of classical type as signed permutation groups,
//!   exact invariant theory and restriction of invariants.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

pub mod error;
pub mod grid;
pub mod harmonics;
pub mod math;
pub mod pw;
pub mod radon;
pub mod slice;
pub mod sphere;
pub mod spline;
pub mod weyl;

pub use error::{Error, Result};
pub use num_complex::Complex64;
