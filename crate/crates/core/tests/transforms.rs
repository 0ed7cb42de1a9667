use pwkit_core::grid::{integrate, l2_norm_sq, make_bump, DirectionSet, GridSpec};
use pwkit_core::radon::{evenness_defect, radon_transform, OffsetGrid};

/// Composite Simpson rule on `[a, b]` with `n` (even) intervals.
fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        acc += if i % 2 == 1 { 4.0 } else { 2.0 } * f(a + i as f64 * h);
    }
    acc * h / 3.0
}

fn profile(r: f64, rho: f64) -> f64 {
    if r >= rho {
        0.0
    } else {
        (1.0 - rho * rho / (rho * rho - r * r)).exp()
    }
}

#[test]
fn bump_integral_matches_radial_quadrature() {
    let unit = 2.0 * std::f64::consts::PI * simpson(|r| profile(r, 1.0) * r, 0.0, 1.0, 20000);
    // exp(1 - 1/(1 - r^2)) = e exp(-1/(1 - r^2)), and the latter integrates to 0.46651
    assert!((unit / std::f64::consts::E - 0.46651).abs() < 1e-5, "{unit}");
    let grid = GridSpec::new(2, 257, 1.0).unwrap();
    for (c, rho) in [([0.0, 0.0], 0.6), ([0.2, -0.1], 0.5)] {
        let f = make_bump(&c, rho, 1.0, grid).unwrap();
        let want = unit * rho * rho;
        assert!((integrate(&f) - want).abs() < 1e-9, "{} vs {want}", integrate(&f));
        let l2 = 2.0 * std::f64::consts::PI * simpson(|r| profile(r, rho).powi(2) * r, 0.0, rho, 20000);
        assert!((l2_norm_sq(&f) - l2).abs() < 1e-9);
    }
}

#[test]
fn line_integrals_of_centered_bump_match_oracle() {
    let rho = 0.7;
    let grid = GridSpec::new(2, 257, 1.0).unwrap();
    let f = make_bump(&[0.0, 0.0], rho, 1.0, grid).unwrap();
    let dirs = DirectionSet::circle(16).unwrap();
    let s = radon_transform(&f, OffsetGrid::for_grid(&grid), &dirs).unwrap();
    let peak = s.max_abs();
    for i in 0..s.offsets().len() {
        let p = s.offsets().value(i);
        let want = if p.abs() >= rho {
            0.0
        } else {
            let half = (rho * rho - p * p).sqrt();
            2.0 * simpson(|t| profile((p * p + t * t).sqrt(), rho), 0.0, half, 4000)
        };
        for j in 0..dirs.len() {
            assert!((s.get(i, j) - want).abs() < 1e-5 * peak, "p={p} j={j} {} vs {want}", s.get(i, j));
        }
    }
    assert!(evenness_defect(&s).unwrap() < 1e-12);
}

#[test]
fn every_projection_carries_the_total_mass() {
    for n in [2, 3] {
        let m = if n == 2 { 129 } else { 49 };
        let grid = GridSpec::new(n, m, 1.0).unwrap();
        let center = if n == 2 { vec![0.15, -0.2] } else { vec![0.1, -0.1, 0.2] };
        let f = make_bump(&center, 0.5, 1.0, grid).unwrap();
        let dirs = if n == 2 { DirectionSet::circle(12).unwrap() } else { DirectionSet::sphere(3).unwrap() };
        let s = radon_transform(&f, OffsetGrid::for_grid(&grid), &dirs).unwrap();
        let mass = integrate(&f);
        for j in 0..dirs.len() {
            let m: f64 = (0..s.offsets().len()).map(|i| s.offsets().weight(i) * s.get(i, j)).sum();
            assert!((m - mass).abs() < 1e-4 * mass, "n={n} j={j} {m} vs {mass}");
        }
    }
}
