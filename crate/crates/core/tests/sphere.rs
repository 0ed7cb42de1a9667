use std::f64::consts::PI;

use pwkit_core::math::composite_gauss_legendre;
use pwkit_core::sphere::{sphere_radon, sphere_slice, spherical_function, spherical_transform, ZonalProfile};

fn three_sphere_closed_form(m: usize, t: f64) -> f64 {
    if t.sin().abs() < 1e-12 {
        return if t.cos() > 0.0 { 1.0 } else { (-1f64).powi(m as i32) };
    }
    ((m as f64 + 1.0) * t).sin() / ((m as f64 + 1.0) * t.sin())
}

#[test]
fn three_sphere_functions_match_closed_form() {
    for m in 0..=24 {
        for k in 0..=50 {
            let t = PI * k as f64 / 50.0;
            let got = spherical_function(m, t, 3);
            assert!((got - three_sphere_closed_form(m, t)).abs() < 1e-11, "m={m} t={t}");
        }
    }
}

#[test]
fn spherical_function_profiles_are_orthogonal() {
    for n in [2, 3] {
        for m0 in [0, 3, 7] {
            let f = ZonalProfile::from_fn(n, 2049, None, |t| spherical_function(m0, t, n)).unwrap();
            let c = spherical_transform(&f, 12);
            for (m, v) in c.values.iter().enumerate() {
                if m != m0 {
                    assert!(v.abs() < 1e-8, "n={n} m0={m0} m={m} {v}");
                }
            }
        }
    }
}

#[test]
fn cap_coefficients_match_independent_quadrature() {
    let ts = 0.5;
    let s2 = ts * ts;
    let bump = |t: f64| if t < ts { (1.0 - s2 / (s2 - t * t)).exp() } else { 0.0 };
    let f = ZonalProfile::cap_bump(3, ts, 2049, 1.0).unwrap();
    let c = spherical_transform(&f, 12);
    // Gauss-Legendre over the cap using the closed-form spherical functions
    let (x, w) = composite_gauss_legendre(0.0, ts, 400, 10);
    for m in 0..=12 {
        let want: f64 = x.iter().zip(&w).map(|(t, w)| w * bump(*t) * three_sphere_closed_form(m, *t) * t.sin().powi(2)).sum();
        assert!((c.values[m] - want).abs() < 1e-8, "m={m} {} vs {want}", c.values[m]);
    }
}

#[test]
fn abel_transform_of_constant_on_two_sphere() {
    let f = ZonalProfile::from_fn(2, 1025, None, |_| 1.0).unwrap();
    for s in [0.0f64, 0.5, 1.5, 2.5, 3.0] {
        let want = 2f64.sqrt() / PI * (1.0 + s.cos()).sqrt();
        assert!((sphere_radon(&f, s) - want).abs() < 1e-10, "s={s}");
    }
}

#[test]
fn slice_identity_improves_under_refinement() {
    for n in [2, 3] {
        let coarse = sphere_slice(&ZonalProfile::cap_bump(n, 0.5, 513, 1.0).unwrap(), 12).unwrap();
        let fine = sphere_slice(&ZonalProfile::cap_bump(n, 0.5, 1025, 1.0).unwrap(), 12).unwrap();
        assert!(fine.defect < coarse.defect, "n={n} {} -> {}", coarse.defect, fine.defect);
        let want = if n == 3 { PI / 2.0 } else { 2.0 };
        assert!((fine.constant - want).abs() < 1e-6 * want);
    }
}
