//! Weyl dimensions, Freudenthal weight systems and reflection to the dominant chamber.

use std::collections::{BTreeMap, HashMap, HashSet};

use num::{BigInt, BigRational, One, ToPrimitive};

use crate::cartan::{AlgebraData, Weight};
use crate::error::{Error, Result};

/// Dominant highest weight together with every weight and its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSystem {
    pub highest: Weight,
    pub entries: BTreeMap<Weight, u64>,
    pub dim: u128,
}

impl WeightSystem {
    pub fn multiplicity(&self, w: &Weight) -> u64 {
        self.entries.get(w).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, u64)> {
        self.entries.iter().map(|(w, &m)| (w, m))
    }

    /// Weights listed with repetition, in a fixed order.
    pub fn expanded(&self) -> Vec<Weight> {
        let mut v = Vec::with_capacity(self.dim as usize);
        for (w, m) in self.iter() {
            for _ in 0..m {
                v.push(w.clone());
            }
        }
        v
    }
}

fn check_dominant(w: &Weight) -> Result<()> {
    if w.is_dominant() {
        Ok(())
    } else {
        Err(Error::NonDominant(w.0.clone()))
    }
}

/// Weyl dimension formula ∏ ⟨Λ+δ,α⟩/⟨δ,α⟩ over positive roots.
pub fn dimension(data: &AlgebraData, hw: &Weight) -> Result<u128> {
    check_dominant(hw)?;
    let shifted = hw.add(&data.weyl_vector);
    let mut acc = BigRational::one();
    for root in &data.positive_roots {
        let num = data.int_pairing(&shifted.0, &root.labels.0);
        let den = data.int_pairing(&data.weyl_vector.0, &root.labels.0);
        acc *= BigRational::new(BigInt::from(num), BigInt::from(den));
    }
    if !acc.is_integer() {
        return Err(Error::InternalInconsistency(format!("non-integral dimension for {hw}")));
    }
    acc.to_integer()
        .to_u128()
        .ok_or_else(|| Error::InternalInconsistency("dimension overflow".into()))
}

/// Image of μ under simple reflections until all labels are non-negative.
pub fn dominant_conjugate(data: &AlgebraData, mu: &Weight) -> Weight {
    let mut v = mu.0.clone();
    while let Some(i) = v.iter().position(|&x| x < 0) {
        let c = v[i];
        for (x, a) in v.iter_mut().zip(&data.cartan_matrix[i]) {
            *x -= c * a;
        }
    }
    Weight(v)
}

/// Shifted (dot) action: reflects μ+δ into the dominant chamber and subtracts δ.
///
/// Returns the resulting weight and det(w); the sign is 0 when μ+δ lies on a
/// chamber wall, and the weight is then meaningless.
pub fn to_dominant(data: &AlgebraData, mu: &Weight) -> (Weight, i8) {
    let mut v: Vec<i64> = mu.0.iter().map(|x| x + 1).collect();
    let mut sign = 1i8;
    while let Some(i) = v.iter().position(|&x| x < 0) {
        let c = v[i];
        for (x, a) in v.iter_mut().zip(&data.cartan_matrix[i]) {
            *x -= c * a;
        }
        sign = -sign;
    }
    if v.contains(&0) {
        sign = 0;
    }
    (Weight(v.into_iter().map(|x| x - 1).collect()), sign)
}

/// True when Λ − μ is a non-negative integer combination of simple roots.
fn below(data: &AlgebraData, hw: &Weight, mu: &Weight) -> bool {
    let diff = hw.sub(mu);
    let l = data.rank();
    (0..l).all(|j| {
        let mut c = BigRational::from_integer(BigInt::from(0));
        for i in 0..l {
            c += &data.inverse_cartan[i][j] * BigRational::from_integer(BigInt::from(diff.0[i]));
        }
        c.is_integer() && c >= BigRational::from_integer(BigInt::from(0))
    })
}

/// Freudenthal recursion, one level (height of Λ − μ) at a time.
pub fn weight_system(data: &AlgebraData, hw: &Weight) -> Result<WeightSystem> {
    check_dominant(hw)?;
    let l = data.rank();
    let dim = dimension(data, hw)?;
    let delta = &data.weyl_vector.0;
    let roots: Vec<&Vec<i64>> = data.positive_roots.iter().map(|r| &r.labels.0).collect();
    let norm = |v: &[i64]| -> i64 {
        let s: Vec<i64> = v.iter().zip(delta).map(|(a, b)| a + b).collect();
        data.int_pairing(&s, &s)
    };
    let top = norm(&hw.0);

    let mut mult: HashMap<Vec<i64>, u64> = HashMap::new();
    mult.insert(hw.0.clone(), 1);
    let mut hull_ok: HashMap<Vec<i64>, bool> = HashMap::new();
    let mut layer: Vec<Vec<i64>> = vec![hw.0.clone()];
    let mut total: u128 = 1;
    while !layer.is_empty() {
        let mut cands: Vec<Vec<i64>> = Vec::new();
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        for mu in &layer {
            for i in 0..l {
                let nu: Vec<i64> = mu.iter().zip(&data.cartan_matrix[i]).map(|(a, b)| a - b).collect();
                if !mult.contains_key(&nu) && seen.insert(nu.clone()) {
                    cands.push(nu);
                }
            }
        }
        let mut next = Vec::new();
        for nu in cands {
            let dom = dominant_conjugate(data, &Weight(nu.clone()));
            let ok = *hull_ok.entry(dom.0.clone()).or_insert_with(|| below(data, hw, &dom));
            if !ok {
                continue;
            }
            let mut sum: i64 = 0;
            for a in &roots {
                let mut p: Vec<i64> = nu.clone();
                loop {
                    for (x, y) in p.iter_mut().zip(a.iter()) {
                        *x += y;
                    }
                    match mult.get(&p) {
                        Some(&m) => sum += m as i64 * data.int_pairing(&p, a),
                        None => break,
                    }
                }
            }
            let den = top - norm(&nu);
            if den <= 0 || (2 * sum) % den != 0 {
                return Err(Error::InternalInconsistency(format!(
                    "Freudenthal step failed at {nu:?} for {hw}"
                )));
            }
            let m = (2 * sum / den) as u64;
            if m > 0 {
                total += m as u128;
                mult.insert(nu.clone(), m);
                next.push(nu);
            }
        }
        layer = next;
    }
    if total != dim {
        return Err(Error::InternalInconsistency(format!(
            "weight multiplicities sum to {total}, Weyl dimension is {dim}"
        )));
    }
    Ok(WeightSystem {
        highest: hw.clone(),
        entries: mult.into_iter().map(|(k, v)| (Weight(k), v)).collect(),
        dim,
    })
}
