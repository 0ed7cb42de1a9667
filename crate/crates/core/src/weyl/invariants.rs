use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::group::{Family, RootSystemSpec, SignedPermutation};
use super::poly::{Polynomial, Rational};
use crate::{Error, Result};

pub const MAX_BASIS_DEGREE: usize = 12;

/// `e_j(v_1, ..., v_r)` for `j = 0..=r`.
pub fn elementary_symmetric(vars: &[Polynomial], nvars: usize) -> Vec<Polynomial> {
    let mut e = vec![Polynomial::one(nvars)];
    for v in vars {
        e.push(Polynomial::zero(nvars));
        for j in (1..e.len()).rev() {
            e[j] = e[j].add(&e[j - 1].mul(v));
        }
    }
    e
}

/// Chevalley generators of the invariants of `W(spec)` in the ambient coordinates:
/// `e_j(x^2)` for B/C; `e_j(x^2)` with `j < k` and the Pfaffian `x_1...x_k` for D;
/// `e_2, ..., e_{k+1}` of the `k + 1` coordinates for A.
pub fn generators(spec: RootSystemSpec) -> Vec<Polynomial> {
    let m = spec.ambient();
    let xs: Vec<Polynomial> = (0..m).map(|i| Polynomial::var(m, i)).collect();
    let squares: Vec<Polynomial> = xs.iter().map(|x| x.mul(x)).collect();
    match spec.family {
        Family::A => elementary_symmetric(&xs, m).into_iter().skip(2).collect(),
        Family::B | Family::C => elementary_symmetric(&squares, m).into_iter().skip(1).collect(),
        Family::D => {
            let mut g: Vec<Polynomial> = elementary_symmetric(&squares, m).into_iter().skip(1).take(m - 1).collect();
            g.push(Polynomial::monomial(vec![1; m], Rational::from_integer(BigInt::from(1))));
            g
        }
    }
}

/// Basis of the invariants of degree `<= degree`: all monomials in the generators.
#[derive(Debug, Clone)]
pub struct InvariantBasis {
    pub spec: RootSystemSpec,
    pub degree: usize,
    pub generators: Vec<Polynomial>,
    /// Exponent of each generator in each basis element.
    pub exponents: Vec<Vec<u32>>,
    pub elements: Vec<Polynomial>,
}

impl InvariantBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Type D only: the element contains an odd power of the Pfaffian.
    pub fn is_odd(&self, i: usize) -> bool {
        self.spec.family == Family::D && self.exponents[i].last().is_some_and(|a| a % 2 == 1)
    }
}

pub fn invariant_basis(spec: RootSystemSpec, degree: usize) -> Result<InvariantBasis> {
    basis_from_generators(spec, generators(spec), degree)
}

/// Like [`invariant_basis`], but for type A all symmetric polynomials in the
/// ambient coordinates (`e_1` included), which agree with the sum-zero
/// invariants as functions on the hyperplane.
pub(crate) fn ambient_invariant_basis(spec: RootSystemSpec, degree: usize) -> Result<InvariantBasis> {
    let mut gens = generators(spec);
    if spec.family == Family::A {
        let m = spec.ambient();
        let e1 = (0..m).fold(Polynomial::zero(m), |acc, i| acc.add(&Polynomial::var(m, i)));
        gens.insert(0, e1);
    }
    basis_from_generators(spec, gens, degree)
}

fn basis_from_generators(spec: RootSystemSpec, gens: Vec<Polynomial>, degree: usize) -> Result<InvariantBasis> {
    if degree > MAX_BASIS_DEGREE {
        return Err(Error::DegreeTooLarge { degree, max: MAX_BASIS_DEGREE });
    }
    let degs: Vec<usize> = gens.iter().map(|g| g.degree()).collect();
    let mut exponents = Vec::new();
    let mut cur = vec![0u32; gens.len()];
    enumerate(&degs, 0, degree, &mut cur, &mut exponents);
    let weight = |e: &Vec<u32>| e.iter().zip(&degs).map(|(&a, &d)| a as usize * d).sum::<usize>();
    exponents.sort_by(|a, b| weight(a).cmp(&weight(b)).then(b.cmp(a)));
    let m = spec.ambient();
    let elements = exponents
        .iter()
        .map(|e| e.iter().zip(&gens).fold(Polynomial::one(m), |acc, (&a, g)| if a == 0 { acc } else { acc.mul(&g.pow(a)) }))
        .collect();
    Ok(InvariantBasis { spec, degree, generators: gens, exponents, elements })
}

fn enumerate(degs: &[usize], j: usize, budget: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if j == degs.len() {
        out.push(cur.clone());
        return;
    }
    let mut a = 0;
    while a * degs[j] <= budget {
        cur[j] = a as u32;
        enumerate(degs, j + 1, budget - a * degs[j], cur, out);
        a += 1;
    }
    cur[j] = 0;
}

/// `(1/|W|) sum_w p(w x)`.
pub fn reynolds(p: &Polynomial, group: &[SignedPermutation]) -> Polynomial {
    let mut acc = Polynomial::zero(p.nvars());
    for w in group {
        acc = acc.add(&p.substitute(w));
    }
    acc.scale(&Rational::new(BigInt::from(1), BigInt::from(group.len())))
}

pub fn is_invariant(p: &Polynomial, group: &[SignedPermutation]) -> bool {
    group.iter().all(|w| &p.substitute(w) == p)
}

/// Substitutes zero for every coordinate after the first `m`.
pub fn restrict_poly(p: &Polynomial, m: usize) -> Polynomial {
    p.restrict(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::group::weyl_group;
    use crate::weyl::linalg::rank;
    use crate::weyl::poly::rat;
    use num_traits::{One, Zero};
    use rand::{Rng, SeedableRng};

    fn spec(f: Family, k: usize) -> RootSystemSpec {
        RootSystemSpec::new(f, k).unwrap()
    }

    /// Dimensions of the degree-`j` invariants from `(1/|W|) sum_w 1/det(1 - t w)`;
    /// a signed cycle of length `l` and sign product `s` contributes `1 - s t^l`.
    fn molien(group: &[SignedPermutation], d: usize) -> Vec<Rational> {
        let mut total = vec![Rational::zero(); d + 1];
        for w in group {
            let k = w.len();
            let mut seen = vec![false; k];
            let mut series = vec![Rational::zero(); d + 1];
            series[0] = Rational::one();
            for start in 0..k {
                if seen[start] {
                    continue;
                }
                let (mut len, mut sign, mut i) = (0, 1i64, start);
                while !seen[i] {
                    seen[i] = true;
                    sign *= w.signs()[i] as i64;
                    i = w.perm()[i];
                    len += 1;
                }
                // multiply by 1 / (1 - sign t^len)
                for j in len..=d {
                    let prev = series[j - len].clone();
                    series[j] += prev * rat(sign);
                }
            }
            for j in 0..=d {
                total[j] += series[j].clone();
            }
        }
        total.into_iter().map(|v| v / rat(group.len() as i64)).collect()
    }

    fn basis_dims(spec: RootSystemSpec, d: usize) -> Vec<usize> {
        let b = invariant_basis(spec, d).unwrap();
        (0..=d).map(|j| b.elements.iter().filter(|p| p.degree() == j).count()).collect()
    }

    #[test]
    fn molien_dimensions() {
        for (s, d) in [(spec(Family::B, 2), 6), (spec(Family::D, 4), 8), (spec(Family::B, 3), 8)] {
            let g = weyl_group(s).unwrap();
            let want = molien(&g, d);
            let got = basis_dims(s, d);
            for j in 0..=d {
                assert_eq!(rat(got[j] as i64), want[j], "{s} degree {j}");
            }
        }
    }

    #[test]
    fn low_degree_bases() {
        let b = invariant_basis(spec(Family::B, 2), 2).unwrap();
        assert_eq!(b.len(), 2);
        assert_eq!(b.elements[0], Polynomial::one(2));
        assert_eq!(b.elements[1], Polynomial::parse("x1^2\nx2^2", 2).unwrap());
        let d4 = invariant_basis(spec(Family::D, 4), 4).unwrap();
        assert!(d4.elements.contains(&Polynomial::parse("x1 x2 x3 x4", 4).unwrap()));
        assert!(matches!(invariant_basis(spec(Family::B, 2), 13), Err(Error::DegreeTooLarge { .. })));
    }

    #[test]
    fn generators_are_invariant_and_independent() {
        for s in [spec(Family::A, 3), spec(Family::B, 3), spec(Family::C, 3), spec(Family::D, 4)] {
            let g = weyl_group(s).unwrap();
            let b = invariant_basis(s, 8).unwrap();
            for p in &b.elements {
                assert!(is_invariant(p, &g), "{s}");
            }
            assert_eq!(rank(&b.elements), b.len());
        }
    }

    #[test]
    fn reynolds_examples() {
        let g = weyl_group(spec(Family::B, 3)).unwrap();
        assert!(reynolds(&Polynomial::var(3, 0), &g).is_zero());
        let g2 = weyl_group(spec(Family::B, 2)).unwrap();
        assert!(reynolds(&Polynomial::parse("x1^2 x2", 2).unwrap(), &g2).is_zero());
        let inv = Polynomial::parse("x1^2\nx2^2", 2).unwrap();
        assert_eq!(reynolds(&inv, &g2), inv);
    }

    #[test]
    fn reynolds_is_an_idempotent_projection() {
        let s = spec(Family::B, 2);
        let g = weyl_group(s).unwrap();
        for a in 0..=6u32 {
            for b in 0..=(6 - a) {
                let p = Polynomial::monomial(vec![a, b], rat(1));
                let r = reynolds(&p, &g);
                assert!(is_invariant(&r, &g));
                assert_eq!(reynolds(&r, &g), r);
            }
        }
    }

    #[test]
    fn group_axioms() {
        for s in [spec(Family::A, 3), spec(Family::B, 3), spec(Family::D, 4)] {
            let g = weyl_group(s).unwrap();
            let set: alloc::collections::BTreeSet<_> = g.iter().cloned().collect();
            assert!(set.contains(&SignedPermutation::identity(s.ambient())));
            for a in &g {
                assert!(set.contains(&a.inverse()));
                for b in &g {
                    assert!(set.contains(&a.compose(b)));
                }
            }
        }
    }

    #[test]
    fn restriction_examples() {
        let sq: Vec<Polynomial> = (0..3).map(|i| Polynomial::var(3, i).pow(2)).collect();
        let e2 = elementary_symmetric(&sq, 3)[2].clone();
        let sq2: Vec<Polynomial> = (0..2).map(|i| Polynomial::var(2, i).pow(2)).collect();
        assert_eq!(restrict_poly(&e2, 2), elementary_symmetric(&sq2, 2)[2]);
        assert!(restrict_poly(&Polynomial::parse("x1 x2 x3 x4", 4).unwrap(), 2).is_zero());

        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let b4 = invariant_basis(spec(Family::B, 4), 4).unwrap();
        let mut p = Polynomial::zero(4);
        for e in &b4.elements {
            p = p.add(&e.scale(&rat(rng.gen_range(-5..=5))));
        }
        let w2 = weyl_group(spec(Family::B, 2)).unwrap();
        let r = restrict_poly(&p, 2);
        assert_eq!(reynolds(&r, &w2), r);
    }
}
