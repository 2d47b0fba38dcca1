//! Catalog of simple Lie algebras and the root data derived from the Cartan matrix.

use std::collections::HashSet;
use std::fmt;

use num::{BigInt, Integer, One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ratpoly::{int, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AlgebraId {
    pub series: Series,
    pub rank: usize,
}

impl AlgebraId {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let ok = match series {
            Series::A => rank >= 1,
            Series::B | Series::C => rank >= 2,
            Series::D => rank >= 3,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        if ok {
            Ok(AlgebraId { series, rank })
        } else {
            Err(Error::InvalidAlgebra(format!("{series:?}{rank}")))
        }
    }

    /// Accepts "A2", "a2", "su3", "so7", "sp4", "g2", "f4", "e6" and so on.
    pub fn parse(name: &str) -> Result<Self> {
        let s = name.trim().to_ascii_lowercase();
        let bad = || Error::InvalidAlgebra(name.to_string());
        let num = |t: &str| t.parse::<usize>().map_err(|_| bad());
        if let Some(rest) = s.strip_prefix("su") {
            let n = num(rest)?;
            if n < 2 {
                return Err(bad());
            }
            return Self::new(Series::A, n - 1);
        }
        if let Some(rest) = s.strip_prefix("so") {
            let n = num(rest)?;
            return if n % 2 == 1 { Self::new(Series::B, n / 2) } else { Self::new(Series::D, n / 2) }
                .map_err(|_| bad());
        }
        if let Some(rest) = s.strip_prefix("sp") {
            let n = num(rest)?;
            if n % 2 == 1 {
                return Err(bad());
            }
            return Self::new(Series::C, n / 2).map_err(|_| bad());
        }
        let mut chars = s.chars();
        let series = match chars.next() {
            Some('a') => Series::A,
            Some('b') => Series::B,
            Some('c') => Series::C,
            Some('d') => Series::D,
            Some('e') => Series::E,
            Some('f') => Series::F,
            Some('g') => Series::G,
            _ => return Err(bad()),
        };
        Self::new(series, num(chars.as_str())?).map_err(|_| bad())
    }
}

impl fmt::Display for AlgebraId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.series {
            Series::A => 'a',
            Series::B => 'b',
            Series::C => 'c',
            Series::D => 'd',
            Series::E => 'e',
            Series::F => 'f',
            Series::G => 'g',
        };
        write!(f, "{}{}", c, self.rank)
    }
}

/// Dynkin labels of a weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut w = vec![0; rank];
        w[i] = 1;
        Weight(w)
    }

    pub fn labels(&self) -> &[i64] {
        &self.0
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn scaled(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A positive root, in simple-root coordinates and in Dynkin labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    pub coords: Vec<i64>,
    pub labels: Weight,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.coords.iter().sum()
    }
}

#[derive(Clone, Debug)]
pub struct AlgebraData {
    pub id: AlgebraId,
    /// Row i holds the Dynkin labels of the simple root αᵢ.
    pub cartan_matrix: Vec<Vec<i64>>,
    /// dᵢ = (αᵢ,αᵢ)/2 with long roots at 1, so that A·diag(d) is symmetric.
    pub symmetrizer: Vec<Rational>,
    pub inverse_cartan: Vec<Vec<Rational>>,
    pub weyl_vector: Weight,
    pub highest_root: Weight,
    /// Scale making the adjoint Casimir equal to 1.
    pub form_norm: Rational,
    pub primitive_degrees: Vec<u32>,
    pub positive_roots: Vec<Root>,
    /// Integer matrix G with (ωᵢ,ωⱼ) = G[i][j] / gram_den in the unnormalized form.
    pub gram: Vec<Vec<i64>>,
    pub gram_den: i64,
}

fn cartan_matrix(id: AlgebraId) -> Vec<Vec<i64>> {
    let l = id.rank;
    let mut a = vec![vec![0i64; l]; l];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let link = |a: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match id.series {
        Series::A => (0..l - 1).for_each(|i| link(&mut a, i, i + 1)),
        Series::B => {
            (0..l - 1).for_each(|i| link(&mut a, i, i + 1));
            // αℓ short
            a[l - 2][l - 1] = -2;
        }
        Series::C => {
            (0..l - 1).for_each(|i| link(&mut a, i, i + 1));
            // αℓ long
            a[l - 1][l - 2] = -2;
        }
        Series::D => {
            (0..l - 2).for_each(|i| link(&mut a, i, i + 1));
            link(&mut a, l - 3, l - 1);
        }
        Series::E => {
            (0..l - 2).for_each(|i| link(&mut a, i, i + 1));
            link(&mut a, 2, l - 1);
        }
        Series::F => {
            link(&mut a, 0, 1);
            link(&mut a, 1, 2);
            link(&mut a, 2, 3);
            a[1][2] = -2;
        }
        Series::G => {
            a[0][1] = -3;
            a[1][0] = -1;
        }
    }
    a
}

fn primitive_degrees(id: AlgebraId) -> Vec<u32> {
    let l = id.rank as u32;
    match (id.series, id.rank) {
        (Series::A, _) => (2..=l + 1).collect(),
        (Series::B, _) | (Series::C, _) => (1..=l).map(|k| 2 * k).collect(),
        (Series::D, _) => {
            let mut v: Vec<u32> = (1..l).map(|k| 2 * k).collect();
            v.push(l);
            v
        }
        (Series::E, 6) => vec![2, 5, 6, 8, 9, 12],
        (Series::E, 7) => vec![2, 6, 8, 10, 12, 14, 18],
        (Series::E, _) => vec![2, 8, 12, 14, 18, 20, 24, 30],
        (Series::F, _) => vec![2, 6, 8, 12],
        (Series::G, _) => vec![2, 6],
    }
}

fn invert(a: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rational> = row.iter().map(|&x| int(x)).collect();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero()).expect("Cartan matrix is invertible");
        m.swap(c, p);
        let inv = m[c][c].recip();
        for x in m[c].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                let pivot = m[c].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
    }
    m.into_iter().map(|r| r[n..].to_vec()).collect()
}

fn symmetrizer(a: &[Vec<i64>]) -> Vec<Rational> {
    let n = a.len();
    let mut d: Vec<Option<Rational>> = vec![None; n];
    d[0] = Some(Rational::one());
    let mut stack = vec![0];
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if i != j && a[i][j] != 0 && d[j].is_none() {
                // A_ij d_j = A_ji d_i
                let dj = d[i].clone().unwrap() * int(a[j][i]) / int(a[i][j]);
                d[j] = Some(dj);
                stack.push(j);
            }
        }
    }
    let d: Vec<Rational> = d.into_iter().map(|x| x.expect("connected diagram")).collect();
    let max = d.iter().max().unwrap().clone();
    d.into_iter().map(|x| x / &max).collect()
}

fn positive_roots(a: &[Vec<i64>]) -> Vec<Root> {
    let n = a.len();
    let labels_of = |c: &[i64]| {
        Weight((0..n).map(|j| (0..n).map(|i| c[i] * a[i][j]).sum()).collect())
    };
    let mut all: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut c = vec![0; n];
            c[i] = 1;
            c
        })
        .collect();
    let mut seen: HashSet<Vec<i64>> = all.iter().cloned().collect();
    let mut layer = all.clone();
    while !layer.is_empty() {
        let mut next = Vec::new();
        for beta in &layer {
            let lab = labels_of(beta);
            for i in 0..n {
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if seen.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                if p - lab.0[i] > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if seen.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all.into_iter()
        .map(|c| Root { labels: labels_of(&c), coords: c })
        .collect()
}

/// Builds every derived datum from the classification label.
pub fn algebra_data(id: AlgebraId) -> Result<AlgebraData> {
    let id = AlgebraId::new(id.series, id.rank)?;
    let l = id.rank;
    let a = cartan_matrix(id);
    let d = symmetrizer(&a);
    let inv = invert(&a);
    let gram_q: Vec<Vec<Rational>> =
        (0..l).map(|i| (0..l).map(|j| &inv[i][j] * &d[j]).collect()).collect();
    let mut den = BigInt::one();
    for row in &gram_q {
        for x in row {
            den = den.lcm(x.denom());
        }
    }
    let den_r = Rational::from_integer(den.clone());
    let gram: Vec<Vec<i64>> = gram_q
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    let v = (x * &den_r).to_integer();
                    i64::try_from(v).expect("small Gram matrix")
                })
                .collect()
        })
        .collect();
    let roots = positive_roots(&a);
    let highest = roots.iter().max_by_key(|r| r.height()).unwrap().labels.clone();
    let delta = Weight(vec![1; l]);
    let mut data = AlgebraData {
        id,
        cartan_matrix: a,
        symmetrizer: d,
        inverse_cartan: inv,
        weyl_vector: delta.clone(),
        highest_root: highest.clone(),
        form_norm: Rational::one(),
        primitive_degrees: primitive_degrees(id),
        positive_roots: roots,
        gram,
        gram_den: i64::try_from(den).unwrap(),
    };
    let t = highest.add(&delta.scaled(2));
    data.form_norm = data.raw_inner_product(&highest, &t).recip();
    Ok(data)
}

impl AlgebraData {
    pub fn rank(&self) -> usize {
        self.id.rank
    }

    /// Scaled integer pairing: gram_den times the unnormalized form.
    pub fn int_pairing(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                s += x * self.gram[i][j] * y;
            }
        }
        s
    }

    fn raw_inner_product(&self, a: &Weight, b: &Weight) -> Rational {
        Rational::new(BigInt::from(self.int_pairing(&a.0, &b.0)), BigInt::from(self.gram_den))
    }

    /// Normalized invariant form; ⟨θ,θ+2δ⟩ = 1.
    pub fn inner_product(&self, a: &Weight, b: &Weight) -> Rational {
        self.raw_inner_product(a, b) * &self.form_norm
    }

    pub fn casimir(&self, w: &Weight) -> Result<Rational> {
        if !w.is_dominant() {
            return Err(Error::NonDominant(w.0.clone()));
        }
        Ok(self.inner_product(w, &w.add(&self.weyl_vector.scaled(2))))
    }

    pub fn simple_root(&self, i: usize) -> Weight {
        Weight(self.cartan_matrix[i].clone())
    }

    pub fn adjoint(&self) -> Weight {
        self.highest_root.clone()
    }

    /// Highest weight of the representation whose traces are written trA.
    pub fn defining(&self) -> Option<Weight> {
        let l = self.rank();
        let i = match self.id.series {
            Series::A | Series::B | Series::C | Series::D => 0,
            Series::G => 1,
            Series::F => 3,
            Series::E if l == 6 => 0,
            Series::E => return None,
        };
        Some(Weight::fundamental(l, i))
    }

    /// Height of a weight difference Λ − μ expressed in simple roots.
    pub fn level(&self, diff: &Weight) -> Rational {
        let l = self.rank();
        let mut h = Rational::zero();
        for j in 0..l {
            let mut c = Rational::zero();
            for i in 0..l {
                c += &self.inverse_cartan[i][j] * int(diff.0[i]);
            }
            h += c;
        }
        h
    }
}

pub fn inner_product(data: &AlgebraData, a: &Weight, b: &Weight) -> Rational {
    data.inner_product(a, b)
}

pub fn casimir(data: &AlgebraData, w: &Weight) -> Result<Rational> {
    data.casimir(w)
}
