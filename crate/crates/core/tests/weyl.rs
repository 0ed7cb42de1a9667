use std::collections::BTreeSet;

use proptest::prelude::*;
use pwkit_core::weyl::{
    invariant_basis, is_invariant, ow1_lift, rais_decompose, restricted_group, reynolds, stabilizer, surjectivity_certificate,
    weyl_group, Family, Polynomial, Rational, RootSystemSpec, SignedPermutation,
};

fn spec(f: Family, k: usize) -> RootSystemSpec {
    RootSystemSpec::new(f, k).unwrap()
}

fn rat(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

#[test]
fn b_restrictions_are_the_smaller_weyl_groups() {
    for k in 3..=5 {
        for n in 2..k {
            let got: BTreeSet<_> = restricted_group(spec(Family::B, k), n).unwrap().into_iter().collect();
            let want: BTreeSet<_> = weyl_group(spec(Family::B, n)).unwrap().into_iter().collect();
            assert_eq!(got, want, "B{k} -> {n}");
        }
    }
}

#[test]
fn d_restrictions_are_hyperoctahedral() {
    for k in 3..=5 {
        for n in 1..k {
            let got = restricted_group(spec(Family::D, k), n).unwrap();
            let order: usize = (1 << n) * (1..=n).product::<usize>();
            assert_eq!(got.len(), order, "D{k} -> {n}");
        }
    }
}

#[test]
fn d_image_is_fixed_by_every_sign_change() {
    let c = surjectivity_certificate(spec(Family::D, 5), spec(Family::D, 4), 8).unwrap();
    let flips: Vec<SignedPermutation> =
        (0..4).map(|i| SignedPermutation::new((0..4).collect(), (0..4).map(|a| if a == i { -1 } else { 1 }).collect()).unwrap()).collect();
    for i in 0..c.downstairs.len() {
        if let Some(w) = c.witness(i) {
            let image = w.restrict(4);
            assert!(is_invariant(&image, &flips));
        }
    }
    for &i in &c.unreachable {
        assert!(c.downstairs.is_odd(i));
    }
}

fn random_invariant(s: RootSystemSpec, d: usize, coeffs: &[i64]) -> Polynomial {
    let b = invariant_basis(s, d).unwrap();
    b.elements.iter().zip(coeffs.iter().cycle()).fold(Polynomial::zero(s.ambient()), |acc, (p, c)| acc.add(&p.scale(&rat(*c))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn rais_residual_is_exactly_zero(a in 0u32..5, b in 0u32..3, c in 0u32..3) {
        let s = spec(Family::B, 3);
        let g = reynolds(&Polynomial::monomial(vec![a, b, c], rat(1)), &stabilizer(s, 2).unwrap());
        let dec = rais_decompose(&g, s, 2, 8).unwrap();
        prop_assert!(dec.recombine().sub(&g).is_zero());
    }

    #[test]
    fn lifts_restrict_to_their_targets(coeffs in proptest::collection::vec(-4i64..=4, 1..12)) {
        let t = random_invariant(spec(Family::B, 2), 6, &coeffs);
        let h = ow1_lift(&t, spec(Family::B, 4), spec(Family::B, 2), 6).unwrap();
        prop_assert_eq!(h.restrict(2), t);
        prop_assert!(is_invariant(&h, &weyl_group(spec(Family::B, 4)).unwrap()));
    }

    #[test]
    fn type_a_lifts(coeffs in proptest::collection::vec(-3i64..=3, 1..8)) {
        let t = random_invariant(spec(Family::A, 2), 5, &coeffs);
        let h = ow1_lift(&t, spec(Family::A, 3), spec(Family::A, 2), 5).unwrap();
        prop_assert_eq!(h.restrict(3), t);
    }
}
