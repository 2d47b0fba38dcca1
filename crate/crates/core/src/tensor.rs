//! Tensor product decomposition and the symmetric/antisymmetric square split.

use std::cmp::Reverse;
use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::cartan::{AlgebraData, Weight};
use crate::error::{Error, Result};
use crate::ratpoly::{rat, Rational};
use crate::reps::{dimension, to_dominant, weight_system, WeightSystem};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Part {
    pub weight: Weight,
    pub multiplicity: u64,
    pub dim: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub parts: Vec<Part>,
}

impl Decomposition {
    fn from_counts(data: &AlgebraData, counts: BTreeMap<Weight, u64>) -> Result<Self> {
        let mut parts = Vec::new();
        for (w, m) in counts {
            if m > 0 {
                parts.push(Part { dim: dimension(data, &w)?, weight: w, multiplicity: m });
            }
        }
        parts.sort_by_key(|p| order_key(p.dim, &p.weight));
        Ok(Decomposition { parts })
    }

    pub fn total_dim(&self) -> u128 {
        self.parts.iter().map(|p| p.multiplicity as u128 * p.dim).sum()
    }

    /// Multiset of highest weights.
    pub fn counts(&self) -> BTreeMap<Weight, u64> {
        let mut m = BTreeMap::new();
        for p in &self.parts {
            *m.entry(p.weight.clone()).or_insert(0) += p.multiplicity;
        }
        m
    }
}

/// Sort key: dimension, then graded-lexicographic on labels.
pub fn order_key(dim: u128, w: &Weight) -> (u128, i64, Reverse<Vec<i64>>) {
    (dim, w.0.iter().sum(), Reverse(w.0.clone()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Space {
    Sym,
    Alt,
}

impl std::fmt::Display for Space {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Space::Sym => "sym",
            Space::Alt => "alt",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquareSplit {
    pub sym: Decomposition,
    pub alt: Decomposition,
}

/// Racah–Speiser/Klimyk decomposition of V(Λ₁) ⊗ V(Λ₂).
pub fn tensor_decompose(data: &AlgebraData, a: &Weight, b: &Weight) -> Result<Decomposition> {
    if !b.is_dominant() {
        return Err(Error::NonDominant(b.0.clone()));
    }
    let ws = weight_system(data, a)?;
    let mut acc: HashMap<Weight, i64> = HashMap::new();
    for (mu, m) in ws.iter() {
        let (dom, sign) = to_dominant(data, &b.add(mu));
        if sign != 0 {
            *acc.entry(dom).or_insert(0) += sign as i64 * m as i64;
        }
    }
    let mut counts = BTreeMap::new();
    for (w, c) in acc {
        if c < 0 {
            return Err(Error::InternalInconsistency(format!("negative multiplicity at {w}")));
        }
        if c > 0 {
            counts.insert(w, c as u64);
        }
    }
    Decomposition::from_counts(data, counts)
}

fn peel(
    data: &AlgebraData,
    mut multiset: HashMap<Weight, i64>,
    cache: &mut HashMap<Weight, WeightSystem>,
) -> Result<Decomposition> {
    let delta = data.weyl_vector.0.clone();
    let mut counts = BTreeMap::new();
    loop {
        multiset.retain(|_, m| *m != 0);
        if let Some((w, m)) = multiset.iter().find(|(_, m)| **m < 0) {
            return Err(Error::InternalInconsistency(format!("peeling left {m} at {w}")));
        }
        let Some(top) = multiset
            .keys()
            .filter(|w| w.is_dominant())
            .max_by(|x, y| {
                data.int_pairing(&x.0, &delta)
                    .cmp(&data.int_pairing(&y.0, &delta))
                    .then_with(|| x.cmp(y))
            })
            .cloned()
        else {
            break;
        };
        let m = multiset[&top];
        if !cache.contains_key(&top) {
            cache.insert(top.clone(), weight_system(data, &top)?);
        }
        for (w, k) in cache[&top].iter() {
            *multiset.entry(w.clone()).or_insert(0) -= m * k as i64;
        }
        counts.insert(top, m as u64);
    }
    if !multiset.is_empty() {
        return Err(Error::InternalInconsistency("non-dominant residue after peeling".into()));
    }
    Decomposition::from_counts(data, counts)
}

/// Splits V⊗V into S²V and Λ²V by peeling their weight multisets.
pub fn square_split(data: &AlgebraData, hw: &Weight) -> Result<SquareSplit> {
    let ws = weight_system(data, hw)?;
    let entries: Vec<(&Weight, i64)> = ws.iter().map(|(w, m)| (w, m as i64)).collect();
    let mut sym: HashMap<Weight, i64> = HashMap::new();
    let mut alt: HashMap<Weight, i64> = HashMap::new();
    for (i, (a, ma)) in entries.iter().enumerate() {
        let d = a.add(a);
        *sym.entry(d.clone()).or_insert(0) += ma * (ma + 1) / 2;
        *alt.entry(d).or_insert(0) += ma * (ma - 1) / 2;
        for (b, mb) in &entries[i + 1..] {
            let s = a.add(b);
            *sym.entry(s.clone()).or_insert(0) += ma * mb;
            *alt.entry(s).or_insert(0) += ma * mb;
        }
    }
    let mut cache = HashMap::new();
    cache.insert(hw.clone(), ws);
    Ok(SquareSplit { sym: peel(data, sym, &mut cache)?, alt: peel(data, alt, &mut cache)? })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub weight: Weight,
    pub space: Space,
    pub dim: u128,
    #[serde(rename = "C", with = "crate::ratpoly::serde_rational")]
    pub casimir: Rational,
    #[serde(rename = "L", with = "crate::ratpoly::serde_rational")]
    pub ell: Rational,
}

/// Irreps of adjoint ⊗ adjoint with dimension, Casimir and L = C/2 − 1.
pub fn adjoint_square_table(data: &AlgebraData) -> Result<Vec<TableRow>> {
    let split = square_split(data, &data.adjoint())?;
    let mut rows = Vec::new();
    for (space, dec) in [(Space::Sym, &split.sym), (Space::Alt, &split.alt)] {
        for p in &dec.parts {
            let c = data.casimir(&p.weight)?;
            let ell = &c / rat(2, 1) - rat(1, 1);
            for _ in 0..p.multiplicity {
                rows.push(TableRow {
                    weight: p.weight.clone(),
                    space,
                    dim: p.dim,
                    casimir: c.clone(),
                    ell: ell.clone(),
                });
            }
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{algebra_data, AlgebraId};

    fn data(s: &str) -> AlgebraData {
        algebra_data(AlgebraId::parse(s).unwrap()).unwrap()
    }

    fn dims(d: &Decomposition) -> Vec<u128> {
        d.parts.iter().flat_map(|p| std::iter::repeat_n(p.dim, p.multiplicity as usize)).collect()
    }

    #[test]
    fn a2_octet_square() {
        let a2 = data("a2");
        let adj = Weight(vec![1, 1]);
        let full = tensor_decompose(&a2, &adj, &adj).unwrap();
        assert_eq!(dims(&full), vec![1, 8, 8, 10, 10, 27]);
        assert_eq!(full.counts()[&adj], 2);
        let split = square_split(&a2, &adj).unwrap();
        assert_eq!(dims(&split.sym), vec![1, 8, 27]);
        assert_eq!(dims(&split.alt), vec![8, 10, 10]);
        assert_eq!(split.alt.parts[1].weight, Weight(vec![3, 0]));
    }

    #[test]
    fn trivial_factor() {
        let b3 = data("b3");
        let w = Weight(vec![1, 0, 1]);
        let d = tensor_decompose(&b3, &w, &Weight::zero(3)).unwrap();
        assert_eq!(d.parts.len(), 1);
        assert_eq!(d.parts[0].weight, w);
    }

    #[test]
    fn a3_and_d4() {
        let split = square_split(&data("a3"), &Weight(vec![1, 0, 1])).unwrap();
        assert_eq!(dims(&split.sym), vec![1, 15, 20, 84]);
        assert_eq!(dims(&split.alt), vec![15, 45, 45]);
        let d4 = square_split(&data("d4"), &Weight(vec![0, 1, 0, 0])).unwrap();
        let c = d4.sym.counts();
        assert!(c.contains_key(&Weight(vec![0, 0, 2, 0])));
        assert!(c.contains_key(&Weight(vec![0, 0, 0, 2])));
    }
}
