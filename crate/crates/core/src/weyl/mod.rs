//! Weyl groups of the classical root systems as signed permutation groups,
//! exact invariant polynomials, restriction to coordinate subspaces and the
//! lifting of invariants through that restriction.

mod group;
mod invariants;
mod lift;
pub mod linalg;
mod poly;

pub use group::{restricted_group, stabilizer, weyl_group, Family, RootSystemSpec, SignedPermutation, MAX_GROUP_ORDER};
pub use invariants::{
    elementary_symmetric, generators, invariant_basis, is_invariant, restrict_poly, reynolds, InvariantBasis, MAX_BASIS_DEGREE,
};
pub use lift::{
    lift_through_restriction, ow1_lift, rais_decompose, surjectivity_certificate, RaisDecomposition, SurjectivityCertificate,
    MAX_CERTIFICATE_DEGREE, MAX_RAIS_DEGREE,
};
pub use poly::{Polynomial, Rational};
