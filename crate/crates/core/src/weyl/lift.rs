use alloc::vec;
use alloc::vec::Vec;

use super::group::{stabilizer, weyl_group, Family, RootSystemSpec};
use super::invariants::{ambient_invariant_basis, generators, invariant_basis, is_invariant, reynolds, InvariantBasis};
use super::linalg::{combine, rank, solve_polynomial_systems};
use super::poly::{Polynomial, Rational};
use crate::{Error, Result};

pub const MAX_CERTIFICATE_DEGREE: usize = 10;
pub const MAX_RAIS_DEGREE: usize = 8;
/// Degree the Rais solve may be raised to when the requested cap is too small.
const RAIS_RETRY_LIMIT: usize = 12;

/// Which downstairs invariants are restrictions of upstairs invariants.
#[derive(Debug, Clone)]
pub struct SurjectivityCertificate {
    pub upstairs: InvariantBasis,
    pub downstairs: InvariantBasis,
    /// Coordinates kept by the restriction.
    pub coords: usize,
    /// Per downstairs basis element: coefficients of a preimage over the upstairs basis.
    pub witnesses: Vec<Option<Vec<Rational>>>,
    /// Downstairs basis elements with no preimage.
    pub unreachable: Vec<usize>,
    /// Dimension of the image of restriction.
    pub image_rank: usize,
    /// Dimension of the downstairs invariants modulo the image.
    pub obstruction_dim: usize,
}

impl SurjectivityCertificate {
    pub fn is_surjective(&self) -> bool {
        self.unreachable.is_empty()
    }

    pub fn witness(&self, i: usize) -> Option<Polynomial> {
        self.witnesses[i].as_ref().map(|x| combine(&self.upstairs.elements, x, self.upstairs.spec.ambient()))
    }

    /// Every witness restricts exactly to its target.
    pub fn verify(&self) -> bool {
        (0..self.downstairs.len()).all(|i| match self.witness(i) {
            Some(w) => w.restrict(self.coords) == self.downstairs.elements[i],
            None => true,
        })
    }
}

fn check_pair(spec_k: RootSystemSpec, spec_n: RootSystemSpec) -> Result<()> {
    if spec_k.family != spec_n.family {
        return Err(Error::IncompatibleFamilies);
    }
    if spec_n.rank > spec_k.rank {
        return Err(Error::Precondition("target rank exceeds source rank"));
    }
    Ok(())
}

pub fn surjectivity_certificate(spec_k: RootSystemSpec, spec_n: RootSystemSpec, d: usize) -> Result<SurjectivityCertificate> {
    check_pair(spec_k, spec_n)?;
    if d > MAX_CERTIFICATE_DEGREE {
        return Err(Error::DegreeTooLarge { degree: d, max: MAX_CERTIFICATE_DEGREE });
    }
    let upstairs = invariant_basis(spec_k, d)?;
    let downstairs = invariant_basis(spec_n, d)?;
    let coords = spec_n.ambient();
    let images: Vec<Polynomial> = upstairs.elements.iter().map(|p| p.restrict(coords)).collect();
    let sol = solve_polynomial_systems(&images, &downstairs.elements);
    let unreachable = (0..downstairs.len()).filter(|&i| sol.solutions[i].is_none()).collect();
    let mut all = images.clone();
    all.extend(downstairs.elements.iter().cloned());
    let obstruction_dim = rank(&all) - sol.rank;
    Ok(SurjectivityCertificate { upstairs, downstairs, coords, witnesses: sol.solutions, unreachable, image_rank: sol.rank, obstruction_dim })
}

/// An invariant of `W(spec_k)` of degree `<= d` restricting to `target`, if one exists.
/// For type A the preimage may involve the coordinate sum, which vanishes on the hyperplane.
pub fn lift_through_restriction(target: &Polynomial, spec_k: RootSystemSpec, d: usize) -> Result<Option<Polynomial>> {
    let up = ambient_invariant_basis(spec_k, d)?;
    let images: Vec<Polynomial> = up.elements.iter().map(|p| p.restrict(target.nvars())).collect();
    let sol = solve_polynomial_systems(&images, core::slice::from_ref(target));
    Ok(sol.solutions[0].as_ref().map(|x| combine(&up.elements, x, spec_k.ambient())))
}

/// `G = sum_j p_j G_j` over the Chevalley generators `G_j`, with the unit
/// appended as the last generator.
#[derive(Debug, Clone)]
pub struct RaisDecomposition {
    pub generators: Vec<Polynomial>,
    pub coefficients: Vec<Polynomial>,
    /// Degree cap the solve succeeded at.
    pub degree: usize,
}

impl RaisDecomposition {
    pub fn recombine(&self) -> Polynomial {
        let nvars = self.generators[0].nvars();
        self.generators.iter().zip(&self.coefficients).fold(Polynomial::zero(nvars), |acc, (g, p)| acc.add(&g.mul(p)))
    }
}

fn monomials_of_degree(nvars: usize, t: usize) -> Vec<Vec<u32>> {
    fn rec(i: usize, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = left as u32;
            out.push(cur.clone());
            return;
        }
        for a in (0..=left).rev() {
            cur[i] = a as u32;
            rec(i + 1, left - a, cur, out);
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if t == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(0, t, &mut vec![0; nvars], &mut out);
    out
}

/// Writes a `W_n(k)`-invariant `G` as `sum_j p_j G_j` with `W_n(k)`-invariant `p_j`.
pub fn rais_decompose(g: &Polynomial, spec_k: RootSystemSpec, n: usize, d: usize) -> Result<RaisDecomposition> {
    let k = spec_k.ambient();
    if g.nvars() != k {
        return Err(Error::ShapeMismatch("polynomial lives in a different number of variables"));
    }
    if d > MAX_RAIS_DEGREE {
        return Err(Error::DegreeTooLarge { degree: d, max: MAX_RAIS_DEGREE });
    }
    let stab = stabilizer(spec_k, n)?;
    if !is_invariant(g, &stab) {
        return Err(Error::NotInvariant);
    }
    let mut cap = d;
    while g.degree() > cap {
        cap += 2;
        if cap > RAIS_RETRY_LIMIT {
            return Err(Error::NoSolutionAtDegree(RAIS_RETRY_LIMIT));
        }
    }
    let mut gens = generators(spec_k);
    gens.push(Polynomial::one(k));
    let mut coeffs = vec![Polynomial::zero(k); gens.len()];
    // graded pieces are solved separately: G_t = sum_j p_{j, t - deg G_j} G_j
    for t in 0..=g.degree() {
        let part = g.homogeneous_part(t);
        if part.is_zero() {
            continue;
        }
        let mut cols = Vec::new();
        let mut owners = Vec::new();
        for (j, gj) in gens.iter().enumerate() {
            let dj = gj.degree();
            if dj > t {
                continue;
            }
            for mono in monomials_of_degree(k, t - dj) {
                let m = Polynomial::monomial(mono.clone(), Rational::from_integer(1.into()));
                cols.push(m.mul(gj));
                owners.push((j, mono));
            }
        }
        let sol = solve_polynomial_systems(&cols, &[part]);
        let x = sol.solutions[0].as_ref().ok_or(Error::NoSolutionAtDegree(cap))?;
        for (c, (j, mono)) in x.iter().zip(owners) {
            coeffs[j].add_term(mono, c.clone());
        }
    }
    let coefficients: Vec<Polynomial> = coeffs.iter().map(|p| reynolds(p, &stab)).collect();
    let dec = RaisDecomposition { generators: gens, coefficients, degree: cap };
    if &dec.recombine() != g {
        return Err(Error::NoSolutionAtDegree(cap));
    }
    Ok(dec)
}

/// A `W(spec_k)`-invariant `H` with `H` restricted to the embedded subspace equal to `target`,
/// built by padding, averaging over `W_n(k)`, Rais decomposition and lifting
/// each restricted coefficient.
pub fn ow1_lift(target: &Polynomial, spec_k: RootSystemSpec, spec_n: RootSystemSpec, d: usize) -> Result<Polynomial> {
    check_pair(spec_k, spec_n)?;
    let m = spec_n.ambient();
    if target.nvars() != m {
        return Err(Error::ShapeMismatch("target lives in a different number of variables"));
    }
    if d > MAX_RAIS_DEGREE || target.degree() > d {
        return Err(Error::DegreeTooLarge { degree: d.max(target.degree()), max: MAX_RAIS_DEGREE });
    }
    if !is_invariant(target, &weyl_group(spec_n)?) {
        return Err(Error::NotInvariant);
    }
    if spec_n.rank == spec_k.rank {
        return Ok(target.clone());
    }
    if spec_k.family == Family::D && lift_through_restriction(target, spec_k, d)?.is_none() {
        return Err(Error::ObstructionHit);
    }
    let n = spec_n.rank;
    let k = spec_k.ambient();
    let stab = stabilizer(spec_k, n)?;
    let g = reynolds(&target.pad(k), &stab);
    let dec = rais_decompose(&g, spec_k, n, d)?;
    let mut h = Polynomial::zero(k);
    for (gj, pj) in dec.generators.iter().zip(&dec.coefficients) {
        if pj.is_zero() {
            continue;
        }
        let qj = lift_through_restriction(&pj.restrict(m), spec_k, d)?.ok_or(Error::ObstructionHit)?;
        h = h.add(&qj.mul(gj));
    }
    if &h.restrict(m) != target || !is_invariant(&h, &weyl_group(spec_k)?) {
        return Err(Error::Precondition("lift failed exact verification"));
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::poly::rat;

    fn spec(f: Family, k: usize) -> RootSystemSpec {
        RootSystemSpec::new(f, k).unwrap()
    }

    #[test]
    fn b4_to_b2_is_surjective() {
        let c = surjectivity_certificate(spec(Family::B, 4), spec(Family::B, 2), 6).unwrap();
        assert!(c.is_surjective());
        assert!(c.verify());
        assert_eq!(c.obstruction_dim, 0);
    }

    #[test]
    fn d5_to_d4_misses_the_pfaffian() {
        let c = surjectivity_certificate(spec(Family::D, 5), spec(Family::D, 4), 4).unwrap();
        let pf = Polynomial::parse("x1 x2 x3 x4", 4).unwrap();
        let i = c.downstairs.elements.iter().position(|p| p == &pf).unwrap();
        assert!(c.unreachable.contains(&i));
        let odd: Vec<usize> = (0..c.downstairs.len()).filter(|&i| c.downstairs.is_odd(i)).collect();
        assert_eq!(c.unreachable, odd);
        assert_eq!(c.obstruction_dim, odd.len());
        assert!(c.verify());
    }

    #[test]
    fn identity_restriction() {
        let c = surjectivity_certificate(spec(Family::D, 4), spec(Family::D, 4), 6).unwrap();
        assert!(c.is_surjective());
        assert!(matches!(surjectivity_certificate(spec(Family::B, 4), spec(Family::D, 2), 4), Err(Error::IncompatibleFamilies)));
    }

    #[test]
    fn rais_examples() {
        let s = spec(Family::B, 3);
        let gens = generators(s);
        let dec = rais_decompose(&gens[0], s, 2, 4).unwrap();
        assert_eq!(dec.recombine(), gens[0]);
        let zero = rais_decompose(&Polynomial::zero(3), s, 2, 4).unwrap();
        assert!(zero.coefficients.iter().all(|p| p.is_zero()));
        let g = reynolds(&Polynomial::monomial(vec![4, 0, 2], rat(1)), &stabilizer(s, 2).unwrap());
        let dec = rais_decompose(&g, s, 2, 6).unwrap();
        assert!(dec.recombine().sub(&g).is_zero());
        // raised degree cap
        assert_eq!(rais_decompose(&g, s, 2, 4).unwrap().degree, 6);
        assert!(matches!(rais_decompose(&Polynomial::var(3, 0), s, 2, 4), Err(Error::NotInvariant)));
    }

    #[test]
    fn lift_examples() {
        let (k, n) = (spec(Family::B, 4), spec(Family::B, 2));
        let t = Polynomial::parse("x1^2\nx2^2", 2).unwrap();
        let h = ow1_lift(&t, k, n, 4).unwrap();
        assert_eq!(h.restrict(2), t);
        assert_eq!(ow1_lift(&Polynomial::one(2), k, n, 2).unwrap(), Polynomial::one(4));
        let pf = Polynomial::parse("x1 x2 x3 x4", 4).unwrap();
        assert!(matches!(ow1_lift(&pf, spec(Family::D, 5), spec(Family::D, 4), 4), Err(Error::ObstructionHit)));
        let a = Polynomial::parse("x1 x2\nx1 x3\nx2 x3", 3).unwrap();
        let ha = ow1_lift(&a, spec(Family::A, 3), spec(Family::A, 2), 4).unwrap();
        assert_eq!(ha.restrict(3), a);
    }
}
