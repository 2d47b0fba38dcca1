//! Trace polynomial identities: power sums of weights, generator bases and exact reduction.
//!
//! A trace trR^k of a Cartan element is the k-th power sum of the linear forms
//! μ·γ over the weights μ of R. Everything is computed on those forms, so a
//! change of Cartan coordinates is just a linear map on the weight vectors.

pub mod expr;

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use num::{BigInt, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cartan::{AlgebraData, Series};
use crate::error::{Error, Result};
use crate::ratpoly::{
    parse_rational, poly_pow, rat_str, solve_exact, LinearSystem, Rational, Solution, SparsePoly,
};
use crate::reps::weight_system;

pub use expr::{parse_equation, parse_expr, AtomMono, Expr};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RepKind {
    Defining,
    Adjoint,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BasisKind {
    /// Primitive traces of the defining representation (plus the Pfaffian for D).
    Defining,
    /// Even adjoint traces that are not reducible in lower ones.
    AdjointSelf,
}

/// A named invariant used as a basis element.
#[derive(Clone, Debug)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
    pub poly: SparsePoly,
}

type Forms = Vec<(Vec<i64>, u64)>;

/// Weight forms of the defining and adjoint representations, with a power sum cache.
pub struct TraceContext {
    series: Series,
    rank: usize,
    defining_degrees: Vec<u32>,
    defining: Option<Forms>,
    adjoint: Forms,
    pf_forms: Option<Vec<Vec<i64>>>,
    cache: Mutex<HashMap<(RepKind, u32), SparsePoly>>,
}

fn forms_of(data: &AlgebraData, hw: &crate::cartan::Weight) -> Result<Forms> {
    Ok(weight_system(data, hw)?.iter().map(|(w, m)| (w.0.clone(), m)).collect())
}

impl TraceContext {
    pub fn new(data: &AlgebraData) -> Result<Self> {
        let defining = match data.defining() {
            Some(w) => Some(forms_of(data, &w)?),
            None => None,
        };
        let pf_forms = match (&defining, data.id.series) {
            (Some(f), Series::D) => {
                let mut v: Vec<Vec<i64>> = f
                    .iter()
                    .filter(|(w, _)| {
                        let neg: Vec<i64> = w.iter().map(|x| -x).collect();
                        *w > neg
                    })
                    .map(|(w, _)| w.clone())
                    .collect();
                v.sort();
                Some(v)
            }
            _ => None,
        };
        Ok(TraceContext {
            series: data.id.series,
            rank: data.rank(),
            defining_degrees: data.primitive_degrees.clone(),
            defining,
            adjoint: forms_of(data, &data.adjoint())?,
            pf_forms,
            cache: Mutex::new(HashMap::new()),
        })
    }

    /// Same representations in new Cartan coordinates γ = Mγ'.
    pub fn with_basis_change(&self, m: &[Vec<i64>]) -> Result<Self> {
        let l = self.rank;
        if m.len() != l || m.iter().any(|r| r.len() != l) {
            return Err(Error::InvalidSystem);
        }
        let map = |f: &Vec<i64>| -> Vec<i64> { (0..l).map(|j| (0..l).map(|i| m[i][j] * f[i]).sum()).collect() };
        let tf = |fs: &Forms| -> Forms { fs.iter().map(|(f, k)| (map(f), *k)).collect() };
        Ok(TraceContext {
            series: self.series,
            rank: l,
            defining_degrees: self.defining_degrees.clone(),
            defining: self.defining.as_ref().map(tf),
            adjoint: tf(&self.adjoint),
            pf_forms: self.pf_forms.as_ref().map(|v| v.iter().map(map).collect()),
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    fn forms(&self, rep: RepKind) -> Result<&Forms> {
        match rep {
            RepKind::Adjoint => Ok(&self.adjoint),
            RepKind::Defining => self
                .defining
                .as_ref()
                .ok_or_else(|| Error::UnsupportedFamily(format!("{:?}{} defining traces", self.series, self.rank))),
        }
    }

    pub fn dim(&self, rep: RepKind) -> Result<u128> {
        Ok(self.forms(rep)?.iter().map(|(_, m)| *m as u128).sum())
    }

    /// trR^k as a polynomial in the Cartan coordinates.
    pub fn power_sum(&self, rep: RepKind, k: u32) -> Result<SparsePoly> {
        if let Some(p) = self.cache.lock().unwrap().get(&(rep, k)) {
            return Ok(p.clone());
        }
        let p = power_sum_forms(self.rank, self.forms(rep)?, k);
        self.cache.lock().unwrap().insert((rep, k), p.clone());
        Ok(p)
    }

    /// Product of all defining weight forms.
    pub fn det(&self) -> Result<SparsePoly> {
        let mut acc = SparsePoly::one(self.rank);
        for (f, m) in self.forms(RepKind::Defining)? {
            acc = &acc * &poly_pow(&SparsePoly::linear(f), *m as u32);
        }
        Ok(acc)
    }

    /// Pfaffian of the vector representation of so(2ℓ).
    pub fn pfaffian(&self) -> Result<SparsePoly> {
        let forms = self
            .pf_forms
            .as_ref()
            .ok_or_else(|| Error::NotTypeD(format!("{:?}{}", self.series, self.rank)))?;
        let mut acc = SparsePoly::one(self.rank);
        for f in forms {
            acc = &acc * &SparsePoly::linear(f);
        }
        Ok(acc)
    }

    /// ∏(t − μ·γ) over the weights, with t as the last variable.
    pub fn char_product(&self, rep: RepKind) -> Result<SparsePoly> {
        let n = self.rank + 1;
        let mut acc = SparsePoly::one(n);
        for (f, m) in self.forms(rep)? {
            let mut c: Vec<i64> = f.iter().map(|x| -x).collect();
            c.push(1);
            acc = &acc * &poly_pow(&SparsePoly::linear(&c), *m as u32);
        }
        Ok(acc)
    }

    /// Basis invariants of total degree at most `max_degree`.
    pub fn generators(&self, basis: BasisKind, max_degree: u32) -> Result<Vec<Generator>> {
        match basis {
            BasisKind::Defining => {
                let mut out = Vec::new();
                let last = self.defining_degrees.len() - 1;
                for (i, &d) in self.defining_degrees.iter().enumerate() {
                    if d > max_degree {
                        continue;
                    }
                    if self.series == Series::D && i == last {
                        out.push(Generator { name: "pfA".into(), degree: d, poly: self.pfaffian()? });
                    } else {
                        out.push(Generator {
                            name: format!("trA^{d}"),
                            degree: d,
                            poly: self.power_sum(RepKind::Defining, d)?,
                        });
                    }
                }
                Ok(out)
            }
            BasisKind::AdjointSelf => {
                let mut out: Vec<Generator> = Vec::new();
                let mut k = 2;
                while k <= max_degree {
                    let p = self.power_sum(RepKind::Adjoint, k)?;
                    let reducible = !out.is_empty() && self.reduce(&format!("trF^{k}"), &p, k, &out).is_ok();
                    if !reducible {
                        out.push(Generator { name: format!("trF^{k}"), degree: k, poly: p });
                    }
                    k += 2;
                }
                Ok(out)
            }
        }
    }

    /// Expresses `target` (homogeneous of `degree`) in monomials of `gens`.
    pub fn reduce(&self, target_name: &str, target: &SparsePoly, degree: u32, gens: &[Generator]) -> Result<Relation> {
        let (terms, unique, kernel_dim) = self.reduce_terms(target_name, target, degree, gens)?;
        Ok(Relation { target: target_name.to_string(), terms, unique, kernel_dim })
    }

    fn reduce_terms(
        &self,
        target_name: &str,
        target: &SparsePoly,
        degree: u32,
        gens: &[Generator],
    ) -> Result<(Vec<Term>, bool, usize)> {
        let degs: Vec<u32> = gens.iter().map(|g| g.degree).collect();
        let monos = weighted_monomials(&degs, degree);
        let mut pows: HashMap<(usize, u32), SparsePoly> = HashMap::new();
        let mut cols = Vec::with_capacity(monos.len());
        for e in &monos {
            let mut c = SparsePoly::one(target.nvars());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    let p = pows.entry((i, k)).or_insert_with(|| poly_pow(&gens[i].poly, k));
                    c = &c * p;
                }
            }
            cols.push(c);
        }
        if cols.is_empty() {
            if target.is_zero() {
                return Ok((Vec::new(), true, 0));
            }
            return Err(Error::NoRelation(target_name.to_string()));
        }
        let sys = LinearSystem::new(cols, target.clone())?;
        let (coeffs, kernel) = match solve_exact(&sys) {
            Solution::Unique(c) => (c, 0),
            Solution::Underdetermined { coefficients, kernel_dim } => (coefficients, kernel_dim),
            Solution::NoSolution => return Err(Error::NoRelation(target_name.to_string())),
        };
        let mut terms = Vec::new();
        for (e, c) in monos.iter().zip(coeffs) {
            if c.is_zero() {
                continue;
            }
            terms.push(self.name_term(gens, e, c));
        }
        Ok((terms, kernel == 0, kernel))
    }

    // Even Pfaffian powers are reported through detA = (-1)^ℓ pf².
    fn name_term(&self, gens: &[Generator], e: &[u32], mut c: Rational) -> Term {
        let mut mono = Vec::new();
        for (g, &k) in gens.iter().zip(e) {
            if k == 0 {
                continue;
            }
            if g.name == "pfA" {
                let half = k / 2;
                if half > 0 {
                    if (self.rank as u32 * half) % 2 == 1 {
                        c = -c;
                    }
                    mono.push(("detA".to_string(), half));
                }
                if k % 2 == 1 {
                    mono.push(("pfA".to_string(), 1));
                }
            } else {
                mono.push((g.name.clone(), k));
            }
        }
        Term { mono, coeff: c }
    }

    /// trA^k in the defining basis.
    pub fn defining_relation(&self, k: u32) -> Result<Relation> {
        let gens = self.generators(BasisKind::Defining, k)?;
        let t = self.power_sum(RepKind::Defining, k)?;
        self.reduce(&format!("trA^{k}"), &t, k, &gens)
    }

    /// trF^k in the defining basis.
    pub fn cross_relation(&self, k: u32) -> Result<Relation> {
        let gens = self.generators(BasisKind::Defining, k)?;
        let t = self.power_sum(RepKind::Adjoint, k)?;
        self.reduce(&format!("trF^{k}"), &t, k, &gens)
    }

    /// trF^k in lower adjoint traces.
    pub fn self_relation_adjoint(&self, k: u32) -> Result<Relation> {
        let gens = self.generators(BasisKind::AdjointSelf, k.saturating_sub(2))?;
        let t = self.power_sum(RepKind::Adjoint, k)?;
        self.reduce(&format!("trF^{k}"), &t, k, &gens)
    }

    /// Characteristic polynomial via Newton's identities, coefficients reduced in `basis`.
    pub fn char_poly(&self, rep: RepKind, basis: BasisKind, max_degree: u32) -> Result<CharPoly> {
        let dim = self.dim(rep)?;
        if dim > max_degree as u128 {
            return Err(Error::DegreeCeiling { dim, ceiling: max_degree });
        }
        if rep == RepKind::Defining && basis == BasisKind::AdjointSelf {
            return Err(Error::UnsupportedFamily("defining traces in the adjoint basis".into()));
        }
        let d = dim as u32;
        let gens = self.generators(basis, d)?;
        let n = self.rank;
        let p: Vec<SparsePoly> = (0..=d)
            .map(|k| if k == 0 { Ok(SparsePoly::zero(n)) } else { self.power_sum(rep, k) })
            .collect::<Result<_>>()?;
        let mut e = vec![SparsePoly::one(n)];
        for k in 1..=d as usize {
            let mut acc = SparsePoly::zero(n);
            for i in 1..=k {
                let t = &e[k - i] * &p[i];
                acc = if i % 2 == 1 { &acc + &t } else { &acc - &t };
            }
            e.push(acc.scale(&Rational::new(BigInt::one(), BigInt::from(k))));
        }
        let mut coefficients = Vec::new();
        let mut unique = true;
        for k in 1..=d as usize {
            let c = if k % 2 == 1 { -&e[k] } else { e[k].clone() };
            if c.is_zero() {
                continue;
            }
            let power = d - k as u32;
            let (terms, u, _) = self.reduce_terms(&format!("t^{power}"), &c, k as u32, &gens)?;
            unique &= u;
            coefficients.push((power, terms));
        }
        Ok(CharPoly { rep, basis, degree: d, coefficients, unique })
    }

    /// Polynomial value of an atom: trA^k, trF^k, detA, pfA, chiA, chiF or t.
    pub fn atom_poly(&self, name: &str) -> Result<SparsePoly> {
        let ext = |p: SparsePoly| p.extend_vars(1);
        if let Some(k) = name.strip_prefix("trA^") {
            let k: u32 = k.parse().map_err(|_| Error::Parse(name.to_string()))?;
            return Ok(ext(self.power_sum(RepKind::Defining, k)?));
        }
        if let Some(k) = name.strip_prefix("trF^") {
            let k: u32 = k.parse().map_err(|_| Error::Parse(name.to_string()))?;
            return Ok(ext(self.power_sum(RepKind::Adjoint, k)?));
        }
        match name {
            "detA" => Ok(ext(self.det()?)),
            "pfA" => Ok(ext(self.pfaffian()?)),
            "chiA" => self.char_product(RepKind::Defining),
            "chiF" => self.char_product(RepKind::Adjoint),
            "t" => Ok(SparsePoly::var(self.rank + 1, self.rank)),
            _ => Err(Error::Parse(format!("unknown atom {name}"))),
        }
    }

    /// Evaluates an expression in the Cartan coordinates plus t.
    pub fn eval_expr(&self, e: &Expr) -> Result<SparsePoly> {
        e.substitute(self.rank + 1, |a| self.atom_poly(a))
    }

    /// True when both sides agree identically.
    pub fn holds(&self, lhs: &Expr, rhs: &Expr) -> Result<bool> {
        Ok(self.eval_expr(lhs)? == self.eval_expr(rhs)?)
    }
}

/// Generator exponent vectors of weighted degree `degree`, lexicographically descending.
fn weighted_monomials(degs: &[u32], degree: u32) -> Vec<Vec<u32>> {
    fn rec(degs: &[u32], i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == degs.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let mut k = left / degs[i];
        loop {
            cur.push(k);
            rec(degs, i + 1, left - k * degs[i], cur, out);
            cur.pop();
            if k == 0 {
                break;
            }
            k -= 1;
        }
    }
    let mut out = Vec::new();
    if degs.iter().all(|&d| d > 0) {
        rec(degs, 0, degree, &mut Vec::new(), &mut out);
    }
    out
}

fn exponents(n: usize, k: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() + 1 == n {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for a in (0..=left).rev() {
            cur.push(a);
            rec(n, left - a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, k, &mut Vec::new(), &mut out);
    }
    out
}

fn multinomial(e: &[u32]) -> BigInt {
    let mut acc = BigInt::one();
    let mut total: u32 = 0;
    for &x in e {
        for j in 1..=x {
            total += 1;
            acc = acc * BigInt::from(total) / BigInt::from(j);
        }
    }
    acc
}

fn pow_i128(b: i64, e: u32) -> Option<i128> {
    (b as i128).checked_pow(e)
}

/// Σ m·(f·γ)^k expanded by the multinomial theorem.
fn power_sum_forms(n: usize, forms: &Forms, k: u32) -> SparsePoly {
    let mut out = SparsePoly::zero(n);
    for e in exponents(n, k) {
        let mut fast: Option<i128> = Some(0);
        for (f, m) in forms {
            let mut term: Option<i128> = Some(*m as i128);
            for (x, &p) in f.iter().zip(&e) {
                if p == 0 {
                    continue;
                }
                if *x == 0 {
                    term = Some(0);
                    break;
                }
                term = term.and_then(|t| pow_i128(*x, p).and_then(|q| t.checked_mul(q)));
            }
            fast = match (fast, term) {
                (Some(a), Some(b)) => a.checked_add(b),
                _ => None,
            };
            if fast.is_none() {
                break;
            }
        }
        let s: BigInt = match fast {
            Some(v) => BigInt::from(v),
            None => forms
                .iter()
                .map(|(f, m)| {
                    f.iter().zip(&e).fold(BigInt::from(*m), |acc, (x, &p)| acc * num::pow(BigInt::from(*x), p as usize))
                })
                .sum(),
        };
        if !s.is_zero() {
            out.add_term(e.clone(), Rational::from_integer(s * multinomial(&e)));
        }
    }
    out
}

/// One monomial in named invariants with its coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub mono: Vec<(String, u32)>,
    pub coeff: Rational,
}

/// `target = Σ coeff·mono`; `unique` is false when the basis monomials were dependent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub target: String,
    pub terms: Vec<Term>,
    pub unique: bool,
    pub kernel_dim: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    Text,
    Latex,
}

fn atom_str(name: &str, style: Style) -> String {
    match style {
        Style::Text => {
            if name.contains('^') {
                format!("({name})")
            } else {
                name.to_string()
            }
        }
        Style::Latex => {
            if let Some(k) = name.strip_prefix("trA^") {
                format!("(\\mathrm{{tr}}A^{{{k}}})")
            } else if let Some(k) = name.strip_prefix("trF^") {
                format!("(\\mathrm{{tr}}F^{{{k}}})")
            } else {
                match name {
                    "detA" => "\\det A".into(),
                    "pfA" => "\\mathrm{Pf}\\,A".into(),
                    other => other.into(),
                }
            }
        }
    }
}

fn pow_suffix(e: u32, style: Style) -> String {
    match (e, style) {
        (1, _) => String::new(),
        (e, Style::Text) => format!("^{e}"),
        (e, Style::Latex) => format!("^{{{e}}}"),
    }
}

fn mono_parts(mono: &[(String, u32)], style: Style) -> Vec<String> {
    mono.iter().map(|(a, e)| format!("{}{}", atom_str(a, style), pow_suffix(*e, style))).collect()
}

fn coeff_str(c: &Rational, style: Style) -> String {
    match style {
        Style::Text => rat_str(c),
        Style::Latex if c.is_integer() => c.numer().to_string(),
        Style::Latex => format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom()),
    }
}

fn join_product(parts: Vec<String>, style: Style) -> String {
    parts.join(if style == Style::Text { "*" } else { " " })
}

/// Magnitude of a term times trailing factors; "1" when nothing is left.
fn term_body(t: &Term, extra: &[String], style: Style) -> String {
    let mut parts = Vec::new();
    let a = t.coeff.abs();
    if !a.is_one() {
        parts.push(coeff_str(&a, style));
    }
    parts.extend(mono_parts(&t.mono, style));
    parts.extend(extra.iter().cloned());
    if parts.is_empty() {
        "1".into()
    } else {
        join_product(parts, style)
    }
}

/// Signed sum of terms, "0" when empty.
pub fn render_terms(terms: &[Term], style: Style) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, t) in terms.iter().enumerate() {
        let neg = t.coeff.is_negative();
        match (i, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        s.push_str(&term_body(t, &[], style));
    }
    s
}

fn target_str(name: &str, style: Style) -> String {
    match style {
        Style::Text => name.to_string(),
        Style::Latex => atom_str(name, style).trim_start_matches('(').trim_end_matches(')').to_string(),
    }
}

fn terms_to_expr(terms: &[Term]) -> Expr {
    let mut e = Expr::default();
    for t in terms {
        let m: AtomMono = t.mono.iter().cloned().collect();
        e.add_term(m, t.coeff.clone());
    }
    e
}

/// Terms of an expression, in atom order.
pub fn expr_terms(e: &Expr) -> Vec<Term> {
    e.terms
        .iter()
        .map(|(m, c)| Term { mono: m.iter().map(|(a, k)| (a.clone(), *k)).collect(), coeff: c.clone() })
        .collect()
}

fn terms_json(terms: &[Term]) -> Value {
    Value::Array(
        terms
            .iter()
            .map(|t| {
                let mono: serde_json::Map<String, Value> =
                    t.mono.iter().map(|(a, e)| (a.clone(), json!(e))).collect();
                json!({"mono": mono, "coeff": rat_str(&t.coeff)})
            })
            .collect(),
    )
}

fn terms_from_json(v: &Value) -> Result<Vec<Term>> {
    let bad = || Error::Parse("malformed term list".into());
    let arr = v.as_array().ok_or_else(bad)?;
    arr.iter()
        .map(|t| {
            let mono = t
                .get("mono")
                .and_then(Value::as_object)
                .ok_or_else(bad)?
                .iter()
                .map(|(a, e)| Ok((a.clone(), e.as_u64().ok_or_else(bad)? as u32)))
                .collect::<Result<Vec<_>>>()?;
            let coeff = parse_rational(t.get("coeff").and_then(Value::as_str).ok_or_else(bad)?)?;
            Ok(Term { mono, coeff })
        })
        .collect()
}

impl Relation {
    pub fn render(&self, style: Style) -> String {
        format!("{} = {}", target_str(&self.target, style), render_terms(&self.terms, style))
    }

    pub fn rhs_expr(&self) -> Expr {
        terms_to_expr(&self.terms)
    }

    pub fn to_json(&self) -> Value {
        json!({"target": self.target, "unique": self.unique, "terms": terms_json(&self.terms)})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let target = v.get("target").and_then(Value::as_str).ok_or_else(|| Error::Parse("missing target".into()))?;
        let unique = v.get("unique").and_then(Value::as_bool).unwrap_or(true);
        let terms = terms_from_json(v.get("terms").ok_or_else(|| Error::Parse("missing terms".into()))?)?;
        Ok(Relation { target: target.to_string(), terms, unique, kernel_dim: usize::from(!unique) })
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Style::Text))
    }
}

/// det(t − R(γ)) with each lower coefficient written in basis invariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPoly {
    pub rep: RepKind,
    pub basis: BasisKind,
    pub degree: u32,
    /// (power of t, coefficient); zero coefficients are omitted.
    pub coefficients: Vec<(u32, Vec<Term>)>,
    pub unique: bool,
}

impl CharPoly {
    pub fn lhs_name(&self) -> &'static str {
        match self.rep {
            RepKind::Defining => "chiA",
            RepKind::Adjoint => "chiF",
        }
    }

    pub fn render(&self, style: Style) -> String {
        let t_pow = |j: u32| -> Vec<String> {
            match (j, style) {
                (0, _) => vec![],
                (1, _) => vec!["t".into()],
                (j, Style::Text) => vec![format!("t^{j}")],
                (j, Style::Latex) => vec![format!("t^{{{j}}}")],
            }
        };
        let lhs = match style {
            Style::Text => self.lhs_name().to_string(),
            Style::Latex => match self.rep {
                RepKind::Defining => "\\chi_A(t)".into(),
                RepKind::Adjoint => "\\chi_F(t)".into(),
            },
        };
        let mut s = format!("{lhs} = {}", join_product(t_pow(self.degree), style));
        for (j, terms) in &self.coefficients {
            if terms.len() == 1 {
                let t = &terms[0];
                s.push_str(if t.coeff.is_negative() { " - " } else { " + " });
                s.push_str(&term_body(t, &t_pow(*j), style));
            } else {
                let (l, r) = if style == Style::Text { ("(", ")") } else { ("\\left(", "\\right)") };
                let mut parts = vec![format!("{l}{}{r}", render_terms(terms, style))];
                parts.extend(t_pow(*j));
                s.push_str(" + ");
                s.push_str(&join_product(parts, style));
            }
        }
        s
    }

    /// Right-hand side as an expression in the invariants and t.
    pub fn rhs_expr(&self) -> Expr {
        let mut m = AtomMono::new();
        m.insert("t".into(), self.degree);
        let mut e = Expr::default();
        e.add_term(m, Rational::one());
        for (j, terms) in &self.coefficients {
            let mut tp = Expr::constant(Rational::one());
            if *j > 0 {
                tp = Expr::atom("t").pow(*j);
            }
            e = e.add(&terms_to_expr(terms).mul(&tp));
        }
        e
    }

    pub fn to_json(&self) -> Value {
        let coeffs: Vec<Value> =
            self.coefficients.iter().map(|(j, t)| json!({"power": j, "terms": terms_json(t)})).collect();
        json!({"lhs": self.lhs_name(), "degree": self.degree, "unique": self.unique, "coefficients": coeffs})
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Style::Text))
    }
}

/// detA and the Pfaffian for so(2ℓ).
pub fn det_invariant(data: &AlgebraData) -> Result<(SparsePoly, SparsePoly)> {
    if data.id.series != Series::D {
        return Err(Error::NotTypeD(data.id.to_string()));
    }
    let ctx = TraceContext::new(data)?;
    Ok((ctx.det()?, ctx.pfaffian()?))
}

/// Integer value helper for tests and reports.
pub fn small_int(r: &Rational) -> Option<i64> {
    if r.is_integer() {
        r.numer().to_i64()
    } else {
        None
    }
}
