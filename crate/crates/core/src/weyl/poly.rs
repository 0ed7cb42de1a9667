use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::group::SignedPermutation;
use crate::{Error, Result};

pub type Rational = BigRational;

#[cfg(test)]
pub(crate) fn rat(v: i64) -> Rational {
    Rational::from_integer(num_bigint::BigInt::from(v))
}

/// Polynomial in `nvars` variables with exact rational coefficients, stored
/// as a map from exponent vectors to nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    /// The coordinate `x_{i+1}` (0-based `i`).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, Rational::one())
    }

    pub fn monomial(exponents: Vec<u32>, c: Rational) -> Self {
        let mut p = Self::zero(exponents.len());
        p.add_term(exponents, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exponents: &[u32]) -> Rational {
        self.terms.get(exponents).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|e| total(e)).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, exponents: Vec<u32>, c: Rational) {
        assert_eq!(exponents.len(), self.nvars, "exponent length");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exponents) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable count");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self { nvars: self.nvars, terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable count");
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.nvars);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Terms of total degree exactly `t`.
    pub fn homogeneous_part(&self, t: usize) -> Self {
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(e, _)| total(e) == t).map(|(e, c)| (e.clone(), c.clone())).collect(),
        }
    }

    /// `x -> p(w x)`, where `w` sends `e_i` to `signs[i] e_perm[i]`.
    pub fn substitute(&self, w: &SignedPermutation) -> Self {
        assert_eq!(w.len(), self.nvars, "group acts on a different number of coordinates");
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut ne = vec![0; self.nvars];
            let mut negative = false;
            for i in 0..self.nvars {
                ne[i] = e[w.perm()[i]];
                if w.signs()[i] < 0 && ne[i] % 2 == 1 {
                    negative = !negative;
                }
            }
            out.add_term(ne, if negative { -c.clone() } else { c.clone() });
        }
        out
    }

    /// Sets `x_{m+1} = ... = x_n = 0`, leaving a polynomial in the first `m` variables.
    pub fn restrict(&self, m: usize) -> Self {
        assert!(m <= self.nvars, "cannot restrict to more variables");
        let mut out = Self::zero(m);
        for (e, c) in &self.terms {
            if e[m..].iter().all(|&a| a == 0) {
                out.add_term(e[..m].to_vec(), c.clone());
            }
        }
        out
    }

    /// The same polynomial viewed in `k >= nvars` variables.
    pub fn pad(&self, k: usize) -> Self {
        assert!(k >= self.nvars, "cannot pad to fewer variables");
        let mut out = Self::zero(k);
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            ne.resize(k, 0);
            out.add_term(ne, c.clone());
        }
        out
    }

    /// Evaluates at an integer point (exactly).
    pub fn eval(&self, x: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &a) in x.iter().zip(e) {
                for _ in 0..a {
                    t *= xi;
                }
            }
            acc += t;
        }
        acc
    }

    /// Parses the line format `coeff * x1^a1 x2^a2 ...`, one term per line.
    /// A bare monomial has coefficient 1 and a bare number is a constant.
    pub fn parse(text: &str, nvars: usize) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for raw in text.lines() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (coeff, mono) = match line.split_once('*') {
                Some((c, m)) => (c.trim(), m.trim()),
                None if line.starts_with('x') || line.starts_with("-x") || line.starts_with("+x") => {
                    let (sign, rest) = if let Some(r) = line.strip_prefix('-') { ("-1", r) } else { ("1", line.trim_start_matches('+')) };
                    (sign, rest)
                }
                None => (line, ""),
            };
            let coeff = parse_rational(coeff)?;
            let mut e = vec![0u32; nvars];
            for tok in mono.split_whitespace() {
                let body = tok.strip_prefix('x').ok_or_else(|| Error::Parse(format!("bad factor `{tok}`")))?;
                let (idx, pw) = match body.split_once('^') {
                    Some((i, a)) => (i, a),
                    None => (body, "1"),
                };
                let idx: usize = idx.parse().map_err(|_| Error::Parse(format!("bad variable `{tok}`")))?;
                let pw: u32 = pw.parse().map_err(|_| Error::Parse(format!("bad exponent `{tok}`")))?;
                if idx == 0 || idx > nvars {
                    return Err(Error::Parse(format!("variable x{idx} outside 1..={nvars}")));
                }
                e[idx - 1] += pw;
            }
            p.add_term(e, coeff);
        }
        Ok(p)
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim().trim_start_matches('+');
    Rational::from_str(s).map_err(|_| Error::Parse(format!("bad coefficient `{s}`")))
}

pub(crate) fn total(e: &[u32]) -> usize {
    e.iter().map(|&a| a as usize).sum()
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return writeln!(f, "0");
        }
        // highest degree first
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| total(b.0).cmp(&total(a.0)).then(b.0.cmp(a.0)));
        for (e, c) in terms {
            let mut mono = String::new();
            for (i, &a) in e.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                if !mono.is_empty() {
                    mono.push(' ');
                }
                if a == 1 {
                    mono.push_str(&format!("x{}", i + 1));
                } else {
                    mono.push_str(&format!("x{}^{}", i + 1, a));
                }
            }
            let coeff = if c.is_integer() { format!("{}", c.numer()) } else { format!("{}/{}", c.numer(), c.denom()) };
            if mono.is_empty() {
                writeln!(f, "{coeff}")?;
            } else {
                writeln!(f, "{coeff} * {mono}")?;
            }
        }
        Ok(())
    }
}
