use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Enumerations beyond this order are refused.
pub const MAX_GROUP_ORDER: u128 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
        }
    }
}

impl core::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            other => Err(Error::Parse(alloc::format!("unknown root system family `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RootSystemSpec {
    pub family: Family,
    pub rank: usize,
}

impl RootSystemSpec {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::Precondition("rank must be positive"));
        }
        Ok(Self { family, rank })
    }

    /// Same family, different rank.
    pub fn with_rank(self, rank: usize) -> Result<Self> {
        Self::new(self.family, rank)
    }

    /// Number of coordinates the group permutes: `rank + 1` for type A
    /// (the sum-zero hyperplane), `rank` otherwise.
    pub fn ambient(&self) -> usize {
        self.coords_of(self.rank)
    }

    /// Ambient coordinates spanned by the rank-`n` subspace `a_n`, with
    /// subspaces embedded by appending trailing zero coordinates.
    pub fn coords_of(&self, n: usize) -> usize {
        match self.family {
            Family::A if n > 0 => n + 1,
            _ => n,
        }
    }

    /// Below the smallest rank with a faithful Dynkin diagram.
    pub fn is_degenerate(&self) -> bool {
        let min = match self.family {
            Family::A => 1,
            Family::B => 2,
            Family::C => 3,
            Family::D => 4,
        };
        self.rank < min
    }

    pub fn order(&self) -> u128 {
        let k = self.rank as u128;
        let fact = |m: u128| (1..=m).product::<u128>();
        match self.family {
            Family::A => fact(k + 1),
            Family::B | Family::C => (1u128 << k) * fact(k),
            Family::D => (1u128 << (k - 1)) * fact(k),
        }
    }
}

impl core::fmt::Display for RootSystemSpec {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

/// The linear map `e_i -> signs[i] e_perm[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    perm: Vec<usize>,
    signs: Vec<i8>,
}

impl SignedPermutation {
    pub fn new(perm: Vec<usize>, signs: Vec<i8>) -> Result<Self> {
        let k = perm.len();
        if signs.len() != k {
            return Err(Error::ShapeMismatch("permutation and sign vector lengths differ"));
        }
        let mut seen = vec![false; k];
        for &p in &perm {
            if p >= k || seen[p] {
                return Err(Error::Precondition("not a permutation"));
            }
            seen[p] = true;
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::Precondition("signs must be +1 or -1"));
        }
        Ok(Self { perm, signs })
    }

    pub fn identity(k: usize) -> Self {
        Self { perm: (0..k).collect(), signs: vec![1; k] }
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// `self o other`.
    pub fn compose(&self, other: &Self) -> Self {
        let perm = other.perm.iter().map(|&j| self.perm[j]).collect();
        let signs = other.perm.iter().zip(&other.signs).map(|(&j, &s)| s * self.signs[j]).collect();
        Self { perm, signs }
    }

    pub fn inverse(&self) -> Self {
        let k = self.len();
        let mut perm = vec![0; k];
        let mut signs = vec![1; k];
        for i in 0..k {
            perm[self.perm[i]] = i;
            signs[self.perm[i]] = self.signs[i];
        }
        Self { perm, signs }
    }

    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        let mut y = vec![0; x.len()];
        for i in 0..x.len() {
            y[self.perm[i]] = self.signs[i] as i64 * x[i];
        }
        y
    }

    /// Maps `span(e_1..e_m)` onto itself.
    pub fn preserves_leading(&self, m: usize) -> bool {
        self.perm[..m].iter().all(|&p| p < m)
    }

    /// Action on the first `m` coordinates; requires `preserves_leading(m)`.
    pub fn restrict(&self, m: usize) -> Self {
        debug_assert!(self.preserves_leading(m));
        Self { perm: self.perm[..m].to_vec(), signs: self.signs[..m].to_vec() }
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..k).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
        let j = (i..k).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// All elements of `W(spec)`, acting on `spec.ambient()` coordinates.
pub fn weyl_group(spec: RootSystemSpec) -> Result<Vec<SignedPermutation>> {
    let order = spec.order();
    if order > MAX_GROUP_ORDER {
        return Err(Error::GroupTooLarge(order));
    }
    let k = spec.ambient();
    let sign_sets: Vec<Vec<i8>> = match spec.family {
        Family::A => vec![vec![1; k]],
        family => (0u32..1 << k)
            .map(|mask| (0..k).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect::<Vec<i8>>())
            .filter(|s| family != Family::D || s.iter().filter(|&&v| v < 0).count() % 2 == 0)
            .collect(),
    };
    let mut out = Vec::with_capacity(order as usize);
    for perm in permutations(k) {
        for signs in &sign_sets {
            out.push(SignedPermutation { perm: perm.clone(), signs: signs.clone() });
        }
    }
    Ok(out)
}

/// `W_n(k)`: elements of `W(spec)` mapping the embedded rank-`n` subspace to itself.
/// `n = 0` gives the whole group.
pub fn stabilizer(spec: RootSystemSpec, n: usize) -> Result<Vec<SignedPermutation>> {
    if n > spec.rank {
        return Err(Error::Precondition("subspace rank exceeds the group rank"));
    }
    let m = spec.coords_of(n);
    Ok(weyl_group(spec)?.into_iter().filter(|w| w.preserves_leading(m)).collect())
}

/// `W_n(k)` restricted to the embedded subspace, without duplicates.
pub fn restricted_group(spec: RootSystemSpec, n: usize) -> Result<Vec<SignedPermutation>> {
    if n >= spec.rank {
        return Err(Error::Precondition("restriction needs a proper subspace"));
    }
    let m = spec.coords_of(n);
    let set: BTreeSet<SignedPermutation> = stabilizer(spec, n)?.iter().map(|w| w.restrict(m)).collect();
    Ok(set.into_iter().collect())
}
