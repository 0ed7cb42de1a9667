//! Exact linear algebra over the rationals, on systems whose columns are
//! polynomials (coefficient vectors indexed by monomials).

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::poly::{Polynomial, Rational};

/// Result of eliminating `[A | B]` on the columns of `A`.
#[derive(Debug, Clone)]
pub struct Solution {
    pub rank: usize,
    /// Per right-hand side: some exact solution (free variables set to zero), or `None`.
    pub solutions: Vec<Option<Vec<Rational>>>,
}

/// Solves `sum_b x_b columns[b] = rhs[r]` for every `r`, exactly.
/// Pivots are taken in column order, so earlier columns are preferred.
pub fn solve_polynomial_systems(columns: &[Polynomial], rhs: &[Polynomial]) -> Solution {
    let mut index: BTreeMap<&[u32], usize> = BTreeMap::new();
    for p in columns.iter().chain(rhs) {
        for e in p.terms().keys() {
            let next = index.len();
            index.entry(e.as_slice()).or_insert(next);
        }
    }
    let nrows = index.len();
    let ncols = columns.len();
    let width = ncols + rhs.len();
    let mut m = vec![vec![Rational::zero(); width]; nrows];
    for (c, p) in columns.iter().chain(rhs).enumerate() {
        for (e, v) in p.terms() {
            m[index[e.as_slice()]][c] = v.clone();
        }
    }
    let (rank, pivots) = reduce(&mut m, ncols);
    let solutions = (0..rhs.len())
        .map(|r| {
            let col = ncols + r;
            if m[rank..].iter().any(|row| !row[col].is_zero()) {
                return None;
            }
            let mut x = vec![Rational::zero(); ncols];
            for (row, &pc) in pivots.iter().enumerate() {
                x[pc] = m[row][col].clone();
            }
            Some(x)
        })
        .collect();
    Solution { rank, solutions }
}

/// Rank of a family of polynomials as vectors.
pub fn rank(polys: &[Polynomial]) -> usize {
    solve_polynomial_systems(polys, &[]).rank
}

/// Reduced row echelon form on the first `ncols` columns; returns the rank and pivot columns.
fn reduce(m: &mut [Vec<Rational>], ncols: usize) -> (usize, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(row, p);
        let inv = Rational::one() / m[row][col].clone();
        for v in m[row].iter_mut().skip(col) {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let pivot_row = m[row].clone();
        let nz: Vec<usize> = (col..pivot_row.len()).filter(|&c| !pivot_row[c].is_zero()).collect();
        for (r, other) in m.iter_mut().enumerate() {
            if r == row || other[col].is_zero() {
                continue;
            }
            let f = other[col].clone();
            for &c in &nz {
                let d = &f * &pivot_row[c];
                other[c] -= d;
            }
        }
        pivots.push(col);
        row += 1;
    }
    (row, pivots)
}

/// `sum_b x_b polys[b]`.
pub fn combine(polys: &[Polynomial], x: &[Rational], nvars: usize) -> Polynomial {
    let mut out = Polynomial::zero(nvars);
    for (p, c) in polys.iter().zip(x) {
        if !c.is_zero() {
            out = out.add(&p.scale(c));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::poly::rat;

    #[test]
    fn solves_and_detects_inconsistency() {
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        let cols = [x.add(&y), x.sub(&y), x.scale(&rat(2))];
        let target = x.scale(&rat(3)).add(&y);
        let unreachable = Polynomial::one(2);
        let s = solve_polynomial_systems(&cols, &[target.clone(), unreachable]);
        assert_eq!(s.rank, 2);
        let sol = s.solutions[0].as_ref().unwrap();
        assert_eq!(combine(&cols, sol, 2), target);
        assert_eq!(sol[2], rat(0));
        assert!(s.solutions[1].is_none());
    }
}
