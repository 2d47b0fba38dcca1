//! Exact rationals, sparse multivariate polynomials and an exact linear solver.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Renders as "p/q", or "p" when the denominator is one.
pub fn rat_str(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub mod serde_rational {
    use super::{parse_rational, rat_str, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rat_str(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

pub type Exponent = Vec<u32>;

/// Sparse polynomial in `nvars` indeterminates with rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparsePoly {
    nvars: usize,
    terms: BTreeMap<Exponent, Rational>,
}

impl SparsePoly {
    pub fn zero(nvars: usize) -> Self {
        SparsePoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    /// The indeterminate with index `i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, Rational::one());
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponent, Rational)>>(nvars: usize, it: I) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    /// Linear form Σ cᵢ·xᵢ.
    pub fn linear(coeffs: &[i64]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                let mut e = vec![0; n];
                e[i] = 1;
                p.add_term(e, int(c));
            }
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[u32]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, e: Exponent, c: Rational) {
        assert_eq!(e.len(), self.nvars, "exponent length mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Total degree of the highest term, None for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Some(d) when every term has total degree d.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        SparsePoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Evaluate at an integer point, exactly.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t *= num::pow(x.clone(), k as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Append `extra` indeterminates (with exponent zero) after the existing ones.
    pub fn extend_vars(&self, extra: usize) -> Self {
        SparsePoly {
            nvars: self.nvars + extra,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e.resize(self.nvars + extra, 0);
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// Terms listed in graded-lexicographic order, highest first.
    pub fn grlex_terms(&self) -> Vec<(&Exponent, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| grlex_cmp(b.0, a.0));
        v
    }
}

pub fn grlex_cmp(a: &[u32], b: &[u32]) -> std::cmp::Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

impl Add for &SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        self.scale(&-Rational::one())
    }
}

impl Mul for &SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut acc: std::collections::HashMap<Exponent, Rational> =
            std::collections::HashMap::with_capacity(self.len() * rhs.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Exponent = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let c = ca * cb;
                match acc.entry(e) {
                    std::collections::hash_map::Entry::Vacant(v) => {
                        v.insert(c);
                    }
                    std::collections::hash_map::Entry::Occupied(mut o) => *o.get_mut() += c,
                }
            }
        }
        SparsePoly {
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl Add for SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: SparsePoly) -> SparsePoly {
        &self + &rhs
    }
}

impl Sub for SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: SparsePoly) -> SparsePoly {
        &self - &rhs
    }
}

impl Mul for SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: SparsePoly) -> SparsePoly {
        &self * &rhs
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.grlex_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(j, &k)| if k == 1 { format!("g{}", j + 1) } else { format!("g{}^{}", j + 1, k) })
                .collect();
            if vars.is_empty() {
                write!(f, "{}", rat_str(&a))?;
            } else if a.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", rat_str(&a), vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// p^k by repeated squaring; p^0 is the constant 1.
pub fn poly_pow(p: &SparsePoly, k: u32) -> SparsePoly {
    let mut result = SparsePoly::one(p.nvars());
    let mut base = p.clone();
    let mut k = k;
    while k > 0 {
        if k & 1 == 1 {
            result = &result * &base;
        }
        k >>= 1;
        if k > 0 {
            base = &base * &base;
        }
    }
    result
}

/// Target and candidate columns, all homogeneous of the same degree.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    columns: Vec<SparsePoly>,
    target: SparsePoly,
}

impl LinearSystem {
    pub fn new(columns: Vec<SparsePoly>, target: SparsePoly) -> Result<Self> {
        let n = target.nvars();
        let deg = target.homogeneous_degree();
        for c in &columns {
            if c.nvars() != n {
                return Err(Error::InvalidSystem);
            }
            if let (Some(a), Some(b)) = (deg, c.homogeneous_degree()) {
                if a != b {
                    return Err(Error::InvalidSystem);
                }
            }
            if !c.is_zero() && c.homogeneous_degree().is_none() {
                return Err(Error::InvalidSystem);
            }
        }
        if !target.is_zero() && deg.is_none() {
            return Err(Error::InvalidSystem);
        }
        Ok(LinearSystem { columns, target })
    }

    pub fn columns(&self) -> &[SparsePoly] {
        &self.columns
    }

    pub fn target(&self) -> &SparsePoly {
        &self.target
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<Rational>),
    /// Canonical solution with free variables set to zero, plus the kernel dimension.
    Underdetermined { coefficients: Vec<Rational>, kernel_dim: usize },
    NoSolution,
}

impl Solution {
    pub fn coefficients(&self) -> Option<&[Rational]> {
        match self {
            Solution::Unique(c) => Some(c),
            Solution::Underdetermined { coefficients, .. } => Some(coefficients),
            Solution::NoSolution => None,
        }
    }
}

/// Exact reduced row echelon elimination over the monomial coefficient matrix.
///
/// Rows are streamed one monomial at a time into an echelon basis that is kept
/// fully reduced, so memory stays at (columns+1)² entries no matter how many
/// monomials there are. Pivots are taken leftmost, so later columns become free.
pub fn solve_exact(sys: &LinearSystem) -> Solution {
    let n = sys.columns.len();
    let mut keys: BTreeSet<&Exponent> = BTreeSet::new();
    for c in &sys.columns {
        keys.extend(c.terms.keys());
    }
    keys.extend(sys.target.terms.keys());

    // basis[i] = (pivot column, row of length n+1)
    let mut basis: Vec<(usize, Vec<Rational>)> = Vec::new();
    for key in keys {
        let mut row: Vec<Rational> = sys.columns.iter().map(|c| c.coeff(key)).collect();
        row.push(sys.target.coeff(key));
        for (p, b) in &basis {
            if !row[*p].is_zero() {
                let f = row[*p].clone();
                for (x, y) in row.iter_mut().zip(b) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        let Some(lead) = row.iter().position(|x| !x.is_zero()) else { continue };
        let inv = row[lead].recip();
        for x in row.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for (_, b) in basis.iter_mut() {
            if !b[lead].is_zero() {
                let f = b[lead].clone();
                for (x, y) in b.iter_mut().zip(&row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        if lead == n {
            return Solution::NoSolution;
        }
        basis.push((lead, row));
        if basis.len() == n + 1 {
            break;
        }
    }
    let mut x = vec![Rational::zero(); n];
    for (p, row) in &basis {
        x[*p] = row[n].clone();
    }
    let kernel = n - basis.len();
    if kernel == 0 {
        Solution::Unique(x)
    } else {
        Solution::Underdetermined { coefficients: x, kernel_dim: kernel }
    }
}
