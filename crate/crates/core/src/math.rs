//! Scalar helpers and one-dimensional quadrature rules.

use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)] // float methods are inherent once std is linked
use num_traits::Float;
use core::f64::consts::PI;

/// Surface area of the unit sphere `S^{n-1}`, `2 pi^{n/2} / Gamma(n/2)`.
pub fn sphere_area(n: usize) -> f64 {
    let half = n as f64 / 2.0;
    2.0 * PI.powf(half) / libm::tgamma(half)
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
///
/// Nodes are returned in increasing order and are exactly antisymmetric,
/// `x[i] == -x[n - 1 - i]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        // Tricomi's initial guess, refined by Newton on the three-term recurrence.
        let mut z = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, z);
            dp = d;
            let dz = p / d;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, z);
        if d != 0.0 {
            dp = d;
        }
        let weight = 2.0 / ((1.0 - z * z) * dp * dp);
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = weight;
        w[n - 1 - i] = weight;
    }
    if n % 2 == 1 {
        x[n / 2] = 0.0;
    }
    (x, w)
}

fn legendre_with_derivative(n: usize, z: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = z;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (z * p1 - p0) / (z * z - 1.0);
    (p1, d)
}

/// Composite Gauss-Legendre rule on `[a, b]` with `panels` equal panels.
pub fn composite_gauss_legendre(a: f64, b: f64, panels: usize, order: usize) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(order);
    let width = (b - a) / panels as f64;
    let mut nodes = Vec::with_capacity(panels * order);
    let mut weights = Vec::with_capacity(panels * order);
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * width;
        for (xi, wi) in x.iter().zip(&w) {
            nodes.push(mid + 0.5 * width * xi);
            weights.push(0.5 * width * wi);
        }
    }
    (nodes, weights)
}

// Gregory end-correction coefficients |G_{k+1}|.
const GREGORY: [f64; 8] = [
    1.0 / 12.0,
    1.0 / 24.0,
    19.0 / 720.0,
    3.0 / 160.0,
    863.0 / 60480.0,
    275.0 / 24192.0,
    33953.0 / 3628800.0,
    8183.0 / 1036800.0,
];

/// Weights of the Gregory rule on `len` equispaced samples with unit spacing.
///
/// `order` end-difference corrections are applied at each end (at most 8);
/// the rule integrates polynomials of degree `order` exactly. Requires
/// `len > 2 * order`.
pub fn gregory_weights(len: usize, order: usize) -> Vec<f64> {
    let order = order.min(GREGORY.len());
    assert!(len > 2 * order, "too few samples for the requested Gregory order");
    let mut w = vec![1.0; len];
    w[0] = 0.5;
    w[len - 1] = 0.5;
    for k in 1..=order {
        let c = GREGORY[k - 1];
        let sign_start = if k % 2 == 0 { 1.0 } else { -1.0 };
        for i in 0..=k {
            let binom = binomial(k, i);
            // forward difference at the start: sum_i (-1)^(k-i) C(k,i) f_i
            let fwd = if (k - i) % 2 == 0 { binom } else { -binom };
            w[i] -= c * sign_start * fwd;
            // backward difference at the end: sum_i (-1)^i C(k,i) f_{n-i}
            let bwd = if i % 2 == 0 { binom } else { -binom };
            w[len - 1 - i] -= c * bwd;
        }
    }
    w
}

/// Composite Simpson weights for an odd number of equispaced samples with unit spacing.
pub fn simpson_weights(len: usize) -> Vec<f64> {
    assert!(len >= 3 && len % 2 == 1, "Simpson's rule needs an odd number >= 3 of samples");
    let mut w = vec![0.0; len];
    for (i, wi) in w.iter_mut().enumerate() {
        *wi = if i == 0 || i == len - 1 {
            1.0 / 3.0
        } else if i % 2 == 1 {
            4.0 / 3.0
        } else {
            2.0 / 3.0
        };
    }
    w
}

pub fn binomial(n: usize, k: usize) -> f64 {
    let mut r = 1.0;
    for i in 0..k {
        r = r * (n - i) as f64 / (i + 1) as f64;
    }
    r
}

/// Least-squares solution of `A x = b` by Householder QR.
///
/// `a` is row-major with `cols` columns. Columns are rescaled to unit norm
/// before factorization. Returns `None` if a column is numerically dependent.
pub fn least_squares(a: &[f64], cols: usize, b: &[f64]) -> Option<Vec<f64>> {
    let rows = b.len();
    assert_eq!(a.len(), rows * cols);
    assert!(rows >= cols);
    let mut m = a.to_vec();
    let mut rhs = b.to_vec();
    let mut scale = vec![1.0; cols];
    for (c, s) in scale.iter_mut().enumerate() {
        let norm = (0..rows).map(|r| m[r * cols + c].powi(2)).sum::<f64>().sqrt();
        if norm == 0.0 {
            return None;
        }
        *s = norm;
        for r in 0..rows {
            m[r * cols + c] /= norm;
        }
    }
    for k in 0..cols {
        let norm = (k..rows).map(|r| m[r * cols + k].powi(2)).sum::<f64>().sqrt();
        if norm < 1e-14 {
            return None;
        }
        let alpha = if m[k * cols + k] > 0.0 { -norm } else { norm };
        let mut v: Vec<f64> = (k..rows).map(|r| m[r * cols + k]).collect();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|x| x * x).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        for c in k..cols {
            let dot: f64 = (k..rows).map(|r| v[r - k] * m[r * cols + c]).sum();
            let f = 2.0 * dot / vnorm2;
            for r in k..rows {
                m[r * cols + c] -= f * v[r - k];
            }
        }
        let dot: f64 = (k..rows).map(|r| v[r - k] * rhs[r]).sum();
        let f = 2.0 * dot / vnorm2;
        for r in k..rows {
            rhs[r] -= f * v[r - k];
        }
    }
    let mut x = vec![0.0; cols];
    for k in (0..cols).rev() {
        let mut acc = rhs[k];
        for c in k + 1..cols {
            acc -= m[k * cols + c] * x[c];
        }
        x[k] = acc / m[k * cols + k];
    }
    for (xi, s) in x.iter_mut().zip(&scale) {
        *xi /= s;
    }
    Some(x)
}
