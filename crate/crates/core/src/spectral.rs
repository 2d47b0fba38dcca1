//! Spectral calculus of L = -Σ X_r ⊗ X_r on the adjoint square.
//!
//! Operators are kept as eigenvalue vectors over the irreps of V⊗V; an
//! identity holds when both sides agree on every irrep of its subspace.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num::{One, Signed, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cartan::{AlgebraData, AlgebraId, Series, Weight};
use crate::error::{Error, Result};
use crate::ratpoly::{int, rat, rat_str, Rational};
use crate::tensor::{adjoint_square_table, Space};
use crate::traceid::expr::Expr;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumRow {
    pub label: String,
    pub weight: Weight,
    pub space: Space,
    pub dim: u128,
    #[serde(rename = "C", with = "crate::ratpoly::serde_rational")]
    pub casimir: Rational,
    #[serde(rename = "L", with = "crate::ratpoly::serde_rational")]
    pub ell: Rational,
    pub known: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumTable {
    pub algebra: AlgebraId,
    pub adjoint: Weight,
    pub rows: Vec<SpectrumRow>,
}

impl SpectrumTable {
    pub fn find(&self, w: &Weight, space: Space) -> Option<usize> {
        self.rows.iter().position(|r| &r.weight == w && r.space == space)
    }

    /// Dimension of the adjoint, read off the adjoint row.
    pub fn adjoint_dim(&self) -> u128 {
        self.rows.iter().find(|r| r.weight == self.adjoint).map_or(0, |r| r.dim)
    }

    pub fn by_label(&self, label: &str) -> Option<usize> {
        self.rows.iter().position(|r| r.label == label)
    }

    fn in_space(&self, space: Space) -> impl Iterator<Item = (usize, &SpectrumRow)> {
        self.rows.iter().enumerate().filter(move |(_, r)| r.space == space)
    }

    /// Distinct eigenvalues of the irreps in `space` that have no known projector.
    pub fn unknown_eigenvalues(&self, space: Space) -> Vec<Rational> {
        let mut v: Vec<Rational> = Vec::new();
        for (_, r) in self.in_space(space) {
            if !r.known && !v.contains(&r.ell) {
                v.push(r.ell.clone());
            }
        }
        v.sort();
        v
    }
}

/// Irrep whose projector is built from the family's symmetric d-tensor, if any.
pub fn d_tensor_weight(data: &AlgebraData) -> Option<Weight> {
    let l = data.rank();
    match data.id.series {
        Series::A if l >= 2 => Some(data.adjoint()),
        Series::B | Series::D => Some(Weight::fundamental(l, 0).scaled(2)),
        Series::C if l >= 2 => Some(Weight::fundamental(l, 1)),
        _ => None,
    }
}

/// Singlet, the adjoint in the antisymmetric part, and the d-tensor projector where one exists.
pub fn default_known(data: &AlgebraData) -> Vec<(Weight, Space)> {
    let mut k = vec![(Weight::zero(data.rank()), Space::Sym), (data.adjoint(), Space::Alt)];
    if let Some(w) = d_tensor_weight(data) {
        k.push((w, Space::Sym));
    }
    k
}

fn assign_labels(rows: &mut [SpectrumRow]) {
    let mut by_dim: BTreeMap<u128, Vec<Weight>> = BTreeMap::new();
    for r in rows.iter() {
        let ws = by_dim.entry(r.dim).or_default();
        if !ws.contains(&r.weight) {
            ws.push(r.weight.clone());
        }
    }
    let both: Vec<Weight> = rows
        .iter()
        .filter(|r| r.space == Space::Sym)
        .filter(|r| rows.iter().any(|o| o.space == Space::Alt && o.weight == r.weight))
        .map(|r| r.weight.clone())
        .collect();
    for r in rows.iter_mut() {
        let mut ws = by_dim[&r.dim].clone();
        ws.sort_by_key(|w| crate::tensor::order_key(r.dim, w));
        let primes = ws.iter().position(|w| w == &r.weight).unwrap_or(0);
        let mut s = format!("{}{}", r.dim, "'".repeat(primes));
        if both.contains(&r.weight) {
            s.push_str(if r.space == Space::Sym { "_S" } else { "_A" });
        }
        r.label = s;
    }
}

/// Irreps of adjoint ⊗ adjoint with Casimir and L eigenvalues; `known` marks the
/// projectors treated as given.
pub fn spectrum_table(data: &AlgebraData, known: &[(Weight, Space)]) -> Result<SpectrumTable> {
    let mut rows: Vec<SpectrumRow> = adjoint_square_table(data)?
        .into_iter()
        .map(|r| SpectrumRow {
            label: String::new(),
            weight: r.weight,
            space: r.space,
            dim: r.dim,
            casimir: r.casimir,
            ell: r.ell,
            known: false,
        })
        .collect();
    for (w, s) in known {
        let hit = rows.iter_mut().find(|r| &r.weight == w && r.space == *s);
        match hit {
            Some(r) => r.known = true,
            None => return Err(Error::UnknownIrrep(w.0.clone())),
        }
    }
    assign_labels(&mut rows);
    Ok(SpectrumTable { algebra: data.id, adjoint: data.adjoint(), rows })
}

pub fn default_spectrum_table(data: &AlgebraData) -> Result<SpectrumTable> {
    spectrum_table(data, &default_known(data))
}

/// True when ℓ(ℓ + 1/2) = 0.
pub fn alt_minimal_holds(ell: &Rational) -> bool {
    (ell * (ell + rat(1, 2))).is_zero()
}

/// Checks the minimal equation L(L + 1/2) = 0 on the antisymmetric part.
pub fn antisym_minimal_check(table: &SpectrumTable) -> bool {
    table.in_space(Space::Alt).all(|(_, r)| alt_minimal_holds(&r.ell))
}

/// A spectral operator: L^power restricted to a subspace, or a projector.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum OpTerm {
    Unit { space: Space, power: u32 },
    Projector(usize),
}

impl OpTerm {
    fn value(&self, row: usize, table: &SpectrumTable) -> Rational {
        let r = &table.rows[row];
        match self {
            OpTerm::Unit { space, power } if *space == r.space => pow(&r.ell, *power),
            OpTerm::Unit { .. } => Rational::zero(),
            OpTerm::Projector(j) if *j == row => Rational::one(),
            OpTerm::Projector(_) => Rational::zero(),
        }
    }

    fn name(&self, table: &SpectrumTable, style: Style) -> String {
        match (self, style) {
            (OpTerm::Unit { space, power }, Style::Text) => {
                let u = if *space == Space::Sym { "1_S" } else { "1_A" };
                match power {
                    0 => u.to_string(),
                    1 => format!("L*{u}"),
                    p => format!("L^{p}*{u}"),
                }
            }
            (OpTerm::Unit { space, power }, Style::Latex) => {
                let u = if *space == Space::Sym { "\\openone_S" } else { "\\openone_A" };
                match power {
                    0 => u.to_string(),
                    1 => format!("L{u}"),
                    p => format!("L^{{{p}}}{u}"),
                }
            }
            (OpTerm::Projector(j), Style::Text) => format!("P[{}]", table.rows[*j].label),
            (OpTerm::Projector(j), Style::Latex) => format!("P^{{[{}]}}", table.rows[*j].label),
        }
    }
}

fn pow(x: &Rational, k: u32) -> Rational {
    let mut r = Rational::one();
    for _ in 0..k {
        r *= x;
    }
    r
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Restriction {
    Sym,
    Alt,
    Full,
}

impl Restriction {
    fn covers(&self, s: Space) -> bool {
        match self {
            Restriction::Full => true,
            Restriction::Sym => s == Space::Sym,
            Restriction::Alt => s == Space::Alt,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    Text,
    Latex,
}

/// L^power (restricted) written as a combination of lower powers and projectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralIdentity {
    pub power: u32,
    pub restriction: Restriction,
    pub terms: Vec<(OpTerm, Rational)>,
}

fn eval_terms(terms: &[(OpTerm, Rational)], row: usize, table: &SpectrumTable) -> Rational {
    terms.iter().map(|(t, c)| c * t.value(row, table)).sum()
}

fn render_lin(parts: &[(String, Rational)], style: Style) -> String {
    let mut s = String::new();
    for (i, (name, c)) in parts.iter().enumerate() {
        let neg = c.is_negative();
        if i == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let a = c.abs();
        if a.is_one() {
            s.push_str(name);
        } else {
            let num = match style {
                Style::Text => rat_str(&a),
                Style::Latex if a.is_integer() => rat_str(&a),
                Style::Latex => format!("\\frac{{{}}}{{{}}}", a.numer(), a.denom()),
            };
            match style {
                Style::Text => write!(s, "{num}*{name}").unwrap(),
                Style::Latex => write!(s, "{num}\\,{name}").unwrap(),
            }
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

impl SpectralIdentity {
    /// Both sides agree on every irrep the restriction covers.
    pub fn spectral_test(&self, table: &SpectrumTable) -> bool {
        (0..table.rows.len()).filter(|&i| self.restriction.covers(table.rows[i].space)).all(|i| {
            let lhs = pow(&table.rows[i].ell, self.power);
            lhs == eval_terms(&self.terms, i, table)
        })
    }

    pub fn coefficient(&self, t: &OpTerm) -> Rational {
        self.terms.iter().find(|(x, _)| x == t).map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    }

    pub fn render(&self, table: &SpectrumTable, style: Style) -> String {
        let lhs = match (self.restriction, style) {
            (Restriction::Full, _) => OpTerm::Unit { space: Space::Sym, power: self.power }
                .name(table, style)
                .replace("*1_S", "")
                .replace("\\openone_S", ""),
            (Restriction::Sym, _) => OpTerm::Unit { space: Space::Sym, power: self.power }.name(table, style),
            (Restriction::Alt, _) => OpTerm::Unit { space: Space::Alt, power: self.power }.name(table, style),
        };
        let parts: Vec<(String, Rational)> =
            self.terms.iter().map(|(t, c)| (t.name(table, style), c.clone())).collect();
        format!("{lhs} = {}", render_lin(&parts, style))
    }

    pub fn to_json(&self, table: &SpectrumTable) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(t, c)| json!({"op": t.name(table, Style::Text), "coeff": rat_str(c)}))
            .collect();
        json!({"power": self.power, "restriction": self.restriction, "terms": terms})
    }
}

/// Coefficients of ∏(x − r) from the constant term upwards.
fn poly_from_roots(roots: &[Rational]) -> Vec<Rational> {
    let mut p = vec![Rational::one()];
    for r in roots {
        let mut q = vec![Rational::zero(); p.len() + 1];
        for (i, c) in p.iter().enumerate() {
            q[i + 1] += c;
            q[i] -= c * r;
        }
        p = q;
    }
    p
}

fn poly_eval(p: &[Rational], x: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

/// L^r·1_S in lower powers of L and the known symmetric projectors, r being the
/// number of distinct unknown eigenvalues.
pub fn reduce_l_power(table: &SpectrumTable) -> Result<SpectralIdentity> {
    let roots = table.unknown_eigenvalues(Space::Sym);
    let r = roots.len() as u32;
    if r == 0 {
        return Err(Error::InternalInconsistency("every symmetric projector is already known".into()));
    }
    let q = poly_from_roots(&roots);
    let mut terms = Vec::new();
    for (i, c) in q.iter().enumerate().take(r as usize) {
        if !c.is_zero() {
            terms.push((OpTerm::Unit { space: Space::Sym, power: i as u32 }, -c));
        }
    }
    for (j, row) in table.in_space(Space::Sym) {
        if row.known {
            let c = poly_eval(&q, &row.ell);
            if !c.is_zero() {
                terms.push((OpTerm::Projector(j), c));
            }
        }
    }
    Ok(SpectralIdentity { power: r, restriction: Restriction::Sym, terms })
}

/// Extends a symmetric identity to the full space using L·1_A = -1/2·P[adj_A].
pub fn fold_antisymmetric(id: &SpectralIdentity, table: &SpectrumTable) -> Result<SpectralIdentity> {
    if id.restriction != Restriction::Sym || id.power == 0 {
        return Err(Error::InternalInconsistency("only symmetric identities can be folded".into()));
    }
    if !antisym_minimal_check(table) {
        return Err(Error::InternalInconsistency("antisymmetric eigenvalues outside {0, -1/2}".into()));
    }
    let mut terms = id.terms.clone();
    let c = pow(&rat(-1, 2), id.power - 1);
    terms.push((OpTerm::Unit { space: Space::Alt, power: 1 }, c));
    Ok(SpectralIdentity { power: id.power, restriction: Restriction::Full, terms })
}

/// Operator combination equal to one projector (or the sum over an eigenspace).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectorExpr {
    pub targets: Vec<usize>,
    pub space: Space,
    pub terms: Vec<(OpTerm, Rational)>,
}

impl ProjectorExpr {
    /// Value 1 on the targets and 0 on every other irrep of the subspace.
    pub fn spectral_test(&self, table: &SpectrumTable) -> bool {
        table.in_space(self.space).all(|(i, _)| {
            let want = if self.targets.contains(&i) { Rational::one() } else { Rational::zero() };
            eval_terms(&self.terms, i, table) == want
        })
    }

    pub fn label(&self, table: &SpectrumTable) -> String {
        let ls: Vec<&str> = self.targets.iter().map(|&i| table.rows[i].label.as_str()).collect();
        ls.join("+")
    }

    pub fn render(&self, table: &SpectrumTable, style: Style) -> String {
        let parts: Vec<(String, Rational)> =
            self.terms.iter().map(|(t, c)| (t.name(table, style), c.clone())).collect();
        let lhs = match style {
            Style::Text => format!("P[{}]", self.label(table)),
            Style::Latex => format!("P^{{[{}]}}", self.label(table)),
        };
        format!("{lhs} = {}", render_lin(&parts, style))
    }

    pub fn to_json(&self, table: &SpectrumTable) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(t, c)| json!({"op": t.name(table, Style::Text), "coeff": rat_str(c)}))
            .collect();
        json!({"target": self.label(table), "space": self.space, "terms": terms})
    }
}

/// Lagrange interpolation over the unknown eigenvalues of `space`, projecting onto
/// every unknown irrep with eigenvalue `ell`.
pub fn eigenspace_projector(table: &SpectrumTable, space: Space, ell: &Rational) -> Result<ProjectorExpr> {
    let roots = table.unknown_eigenvalues(space);
    if !roots.contains(ell) {
        return Err(Error::InternalInconsistency(format!("{} is not an unknown eigenvalue", rat_str(ell))));
    }
    let others: Vec<Rational> = roots.iter().filter(|r| *r != ell).cloned().collect();
    let mut p = poly_from_roots(&others);
    let den = poly_eval(&p, ell);
    p.iter_mut().for_each(|c| *c /= &den);
    let mut terms = Vec::new();
    for (i, c) in p.iter().enumerate() {
        if !c.is_zero() {
            terms.push((OpTerm::Unit { space, power: i as u32 }, c.clone()));
        }
    }
    for (j, row) in table.in_space(space) {
        if row.known {
            let c = poly_eval(&p, &row.ell);
            if !c.is_zero() {
                terms.push((OpTerm::Projector(j), -c));
            }
        }
    }
    let targets = table.in_space(space).filter(|(_, r)| !r.known && &r.ell == ell).map(|(i, _)| i).collect();
    Ok(ProjectorExpr { targets, space, terms })
}

/// Projector onto a single irrep of the table.
pub fn projector_expr(table: &SpectrumTable, target: usize) -> Result<ProjectorExpr> {
    let row = table.rows.get(target).ok_or_else(|| Error::InternalInconsistency("row out of range".into()))?;
    if row.known {
        return Ok(ProjectorExpr {
            targets: vec![target],
            space: row.space,
            terms: vec![(OpTerm::Projector(target), Rational::one())],
        });
    }
    let e = eigenspace_projector(table, row.space, &row.ell)?;
    if e.targets.len() > 1 {
        let ws = e.targets.iter().map(|&i| table.rows[i].weight.0.clone()).collect();
        return Err(Error::DegenerateSpectrum(ws, rat_str(&row.ell)));
    }
    Ok(e)
}

/// Every projector the known data determines: known irreps as they are, and
/// one projector per distinct unknown eigenvalue in each subspace.
pub fn all_projectors(table: &SpectrumTable) -> Result<Vec<ProjectorExpr>> {
    let mut out = Vec::new();
    for space in [Space::Sym, Space::Alt] {
        for (i, row) in table.in_space(space) {
            if row.known {
                out.push(projector_expr(table, i)?);
            }
        }
        for ell in table.unknown_eigenvalues(space) {
            out.push(eigenspace_projector(table, space, &ell)?);
        }
    }
    Ok(out)
}

/// Index-notation building blocks of class-2 identities, with r,s summed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum IndexAtom {
    /// Q: t_{jmr} t_{knr} t_{mps} t_{nqs}
    Quartic,
    /// t_{jmr} t_{knr} t_{mqs} t_{nps}
    QuarticSwapped,
    /// t_{jpr} t_{kqr}
    Cross,
    /// t_{jqr} t_{kpr}
    CrossSwapped,
    /// δ_{jp}δ_{kq} + δ_{jq}δ_{kp}
    SymUnit,
    /// δ_{jp}δ_{kq} - δ_{jq}δ_{kp}
    AltUnit,
    /// δ_{jk}δ_{pq}
    Trace,
    /// d_{jk·} d_{pq·}
    DD,
    /// t_{jkr} t_{pqr}
    Adjoint,
}

/// Per-family normalization that turns Killing-normalized operators into the
/// customary f/c/d tensors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyConventions {
    pub tensor: &'static str,
    /// Matrix size n of the customary realization (su(n), so(n), sp(2n) uses n = rank).
    pub n: Option<i64>,
    /// Killing normalization: C = -t/κ, so L = -t t / κ².
    pub kappa_sq: Rational,
    /// Irrep projected by norm·d d, with the summed index name.
    pub d_tensor: Option<DTensor>,
    /// Defining element is (i·spin/κ)·Σ b_j Λ_j with tr(Λ_j Λ_k) = 2δ.
    pub spin: Rational,
    /// Render L·1_A through t_{jkr}t_{pqr} instead of the swapped cross terms.
    pub alt_via_adjoint: bool,
    /// Clear denominators with a small integer multiple of the whole identity.
    pub integer_scale: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DTensor {
    pub weight: Weight,
    pub norm: Rational,
    pub index: &'static str,
    /// tr Λ⁴ = quartic·(b·b)² + dd·(d b b)² for Λ = Σ b_j Λ_j.
    pub quartic: Rational,
    pub dd: Rational,
}

pub fn family_conventions(data: &AlgebraData) -> Result<FamilyConventions> {
    let l = data.rank() as i64;
    let unsupported = || Error::UnsupportedFamily(data.id.to_string());
    Ok(match data.id.series {
        Series::A => {
            let n = l + 1;
            FamilyConventions {
                tensor: "f",
                n: Some(n),
                kappa_sq: int(n),
                d_tensor: d_tensor_weight(data).map(|weight| DTensor {
                    weight,
                    norm: rat(n, n * n - 4),
                    index: "r",
                    quartic: rat(4, n),
                    dd: int(2),
                }),
                spin: rat(1, 2),
                alt_via_adjoint: true,
                integer_scale: true,
            }
        }
        Series::B | Series::D => {
            let n = if data.id.series == Series::B { 2 * l + 1 } else { 2 * l };
            FamilyConventions {
                tensor: "c",
                n: Some(n),
                kappa_sq: int(2 * (n - 2)),
                d_tensor: d_tensor_weight(data).map(|weight| DTensor {
                    weight,
                    norm: rat(1, 2 * (n - 2)),
                    index: "a",
                    quartic: rat(4, n),
                    dd: rat(1, 2),
                }),
                spin: Rational::one(),
                alt_via_adjoint: false,
                integer_scale: false,
            }
        }
        Series::C => {
            let n = l;
            FamilyConventions {
                tensor: "c",
                n: Some(n),
                kappa_sq: int(4 * (n + 1)),
                d_tensor: d_tensor_weight(data).map(|weight| DTensor {
                    weight,
                    norm: rat(1, 4 * (n + 1)),
                    index: "a",
                    quartic: rat(2, n),
                    dd: rat(1, 2),
                }),
                spin: Rational::one(),
                alt_via_adjoint: false,
                integer_scale: false,
            }
        }
        Series::G => FamilyConventions {
            tensor: "c",
            n: Some(7),
            kappa_sq: int(8),
            d_tensor: data.defining().map(|w| DTensor {
                weight: w.scaled(2),
                norm: rat(9, 32),
                index: "a",
                quartic: rat(4, 7),
                dd: rat(1, 2),
            }),
            spin: Rational::one(),
            alt_via_adjoint: false,
            integer_scale: false,
        },
        Series::F | Series::E if data.id.rank <= 6 => FamilyConventions {
            tensor: "C",
            n: None,
            kappa_sq: Rational::one(),
            d_tensor: None,
            spin: Rational::one(),
            alt_via_adjoint: false,
            integer_scale: false,
        },
        Series::E => return Err(unsupported()),
        Series::F => return Err(unsupported()),
    })
}

/// A class-2 tensor identity: Σ lhs = Σ rhs over index atoms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexIdentity {
    pub tensor: &'static str,
    pub d_index: &'static str,
    pub lhs: Vec<(IndexAtom, Rational)>,
    pub rhs: Vec<(IndexAtom, Rational)>,
}

type AtomSum = BTreeMap<IndexAtom, Rational>;

fn add_atom(m: &mut AtomSum, a: IndexAtom, c: Rational) {
    let e = m.entry(a).or_insert_with(Rational::zero);
    *e += c;
    if e.is_zero() {
        m.remove(&a);
    }
}

fn op_atoms(t: &OpTerm, table: &SpectrumTable, conv: &FamilyConventions) -> Result<AtomSum> {
    use IndexAtom::*;
    let k2 = &conv.kappa_sq;
    let k4 = k2 * k2;
    let mut m = AtomSum::new();
    match t {
        OpTerm::Unit { space, power: 0 } => {
            let a = if *space == Space::Sym { SymUnit } else { AltUnit };
            add_atom(&mut m, a, rat(1, 2));
        }
        OpTerm::Unit { space: Space::Sym, power: 1 } => {
            add_atom(&mut m, Cross, -k2.recip() / int(2));
            add_atom(&mut m, CrossSwapped, -k2.recip() / int(2));
        }
        OpTerm::Unit { space: Space::Alt, power: 1 } => {
            if conv.alt_via_adjoint {
                add_atom(&mut m, Adjoint, -k2.recip() / int(2));
            } else {
                add_atom(&mut m, Cross, -k2.recip() / int(2));
                add_atom(&mut m, CrossSwapped, k2.recip() / int(2));
            }
        }
        OpTerm::Unit { space, power: 2 } => {
            let s = if *space == Space::Sym { int(1) } else { int(-1) };
            add_atom(&mut m, Quartic, k4.recip() / int(2));
            add_atom(&mut m, QuarticSwapped, s * k4.recip() / int(2));
        }
        OpTerm::Unit { .. } => {
            return Err(Error::UnsupportedFamily("index form beyond the square of L".into()));
        }
        OpTerm::Projector(j) => {
            let row = &table.rows[*j];
            if row.weight.is_zero() {
                add_atom(&mut m, Trace, Rational::from_integer((table.adjoint_dim() as i64).into()).recip());
            } else if row.space == Space::Alt && row.weight == table.adjoint {
                add_atom(&mut m, Adjoint, k2.recip());
            } else if let Some(d) = conv.d_tensor.as_ref().filter(|d| d.weight == row.weight && row.space == Space::Sym) {
                add_atom(&mut m, DD, d.norm.clone());
            } else {
                return Err(Error::UnresolvedTensor(format!("P[{}]", row.label)));
            }
        }
    }
    Ok(m)
}

fn lhs_atoms(id: &SpectralIdentity, table: &SpectrumTable, conv: &FamilyConventions) -> Result<AtomSum> {
    use IndexAtom::*;
    match id.restriction {
        Restriction::Sym => op_atoms(&OpTerm::Unit { space: Space::Sym, power: id.power }, table, conv),
        Restriction::Alt => op_atoms(&OpTerm::Unit { space: Space::Alt, power: id.power }, table, conv),
        Restriction::Full => {
            let k2 = &conv.kappa_sq;
            let mut m = AtomSum::new();
            match id.power {
                1 => add_atom(&mut m, Cross, -k2.recip()),
                2 => add_atom(&mut m, Quartic, (k2 * k2).recip()),
                _ => return Err(Error::UnsupportedFamily("index form beyond the square of L".into())),
            }
            Ok(m)
        }
    }
}

/// Rewrites an operator identity in index notation, normalized so the leading
/// left-hand atom has coefficient 1 (or a small integer when clearing denominators).
pub fn index_identity(id: &SpectralIdentity, table: &SpectrumTable, conv: &FamilyConventions) -> Result<IndexIdentity> {
    let lhs = lhs_atoms(id, table, conv)?;
    let mut rhs = AtomSum::new();
    for (t, c) in &id.terms {
        for (a, v) in op_atoms(t, table, conv)? {
            add_atom(&mut rhs, a, c * v);
        }
    }
    let lead = lhs.values().next().cloned().ok_or(Error::InvalidSystem)?;
    let mut scale = lead.recip();
    if conv.integer_scale {
        if let Some(m) = (1..=4).find(|m| rhs.values().all(|c| (c * &scale * int(*m)).is_integer())) {
            scale *= int(m);
        }
    }
    let fix = |m: AtomSum| m.into_iter().map(|(a, c)| (a, c * &scale)).collect();
    let d_index = conv.d_tensor.as_ref().map_or("a", |d| d.index);
    Ok(IndexIdentity { tensor: conv.tensor, d_index, lhs: fix(lhs), rhs: fix(rhs) })
}

impl IndexAtom {
    pub fn render(&self, t: &str, di: &str, style: Style) -> String {
        use IndexAtom::*;
        let f = |ix: &str| -> String {
            let cs: Vec<String> = ix.chars().map(|c| if c == 'a' { di.to_string() } else { c.to_string() }).collect();
            match style {
                Style::Text => format!("{t}[{}]", cs.join(",")),
                Style::Latex => {
                    let cs: Vec<String> =
                        cs.into_iter().map(|c| if c == "a" { "\\alpha".to_string() } else { c }).collect();
                    format!("{t}_{{{}}}", cs.join(""))
                }
            }
        };
        let dl = |a: &str, b: &str| match style {
            Style::Text => format!("delta[{a},{b}]"),
            Style::Latex => format!("\\delta_{{{a}{b}}}"),
        };
        let dd = |ix: &str| -> String {
            let cs: Vec<String> = ix.chars().map(|c| if c == 'a' { di.to_string() } else { c.to_string() }).collect();
            match style {
                Style::Text => format!("d[{}]", cs.join(",")),
                Style::Latex => {
                    let cs: Vec<String> =
                        cs.into_iter().map(|c| if c == "a" { "\\alpha".to_string() } else { c }).collect();
                    format!("d_{{{}}}", cs.join(""))
                }
            }
        };
        match self {
            Quartic => format!("{}{}{}{}", f("jmr"), f("knr"), f("mps"), f("nqs")),
            QuarticSwapped => format!("{}{}{}{}", f("jmr"), f("knr"), f("mqs"), f("nps")),
            Cross => format!("{}{}", f("jpr"), f("kqr")),
            CrossSwapped => format!("{}{}", f("jqr"), f("kpr")),
            SymUnit => format!("({}{} + {}{})", dl("j", "p"), dl("k", "q"), dl("j", "q"), dl("k", "p")),
            AltUnit => format!("({}{} - {}{})", dl("j", "p"), dl("k", "q"), dl("j", "q"), dl("k", "p")),
            Trace => format!("{}{}", dl("j", "k"), dl("p", "q")),
            DD => format!("{}{}", dd("jka"), dd("pqa")),
            Adjoint => format!("{}{}", f("jkr"), f("pqr")),
        }
    }
}

impl IndexIdentity {
    pub fn render(&self, style: Style) -> String {
        let side = |v: &[(IndexAtom, Rational)]| -> String {
            let parts: Vec<(String, Rational)> =
                v.iter().map(|(a, c)| (a.render(self.tensor, self.d_index, style), c.clone())).collect();
            render_lin(&parts, style)
        };
        format!("{} = {}", side(&self.lhs), side(&self.rhs))
    }
}

/// Index form of a projector, δ/f/c/d atoms with exact coefficients.
pub fn projector_index(p: &ProjectorExpr, table: &SpectrumTable, conv: &FamilyConventions) -> Result<Vec<(IndexAtom, Rational)>> {
    let mut m = AtomSum::new();
    for (t, c) in &p.terms {
        for (a, v) in op_atoms(t, table, conv)? {
            add_atom(&mut m, a, c * v);
        }
    }
    Ok(m.into_iter().collect())
}

/// Renders a sum of index atoms.
pub fn render_index_sum(v: &[(IndexAtom, Rational)], conv: &FamilyConventions, style: Style) -> String {
    let di = conv.d_tensor.as_ref().map_or("a", |d| d.index);
    let parts: Vec<(String, Rational)> = v.iter().map(|(a, c)| (a.render(conv.tensor, di, style), c.clone())).collect();
    render_lin(&parts, style)
}

/// Formats a spectral identity in the family's tensor notation.
pub fn emit_index_identity(
    id: &SpectralIdentity,
    table: &SpectrumTable,
    conv: &FamilyConventions,
    style: Style,
) -> Result<String> {
    Ok(index_identity(id, table, conv)?.render(style))
}

/// trF⁴ from the expectation of L² on a⊗a.
///
/// On a symmetric tensor a⊗a, L·1_S and L·1_A have zero expectation, so only
/// the constant and projector terms of L²·1_S survive. Without a known
/// d-projector the result is a multiple of (trF²)²; with one it is written in
/// trA², trA⁴ through the defining-representation quartic trace.
pub fn quartic_adjoint_trace(data: &AlgebraData, table: &SpectrumTable) -> Result<Expr> {
    let roots = table.unknown_eigenvalues(Space::Sym);
    let (r0, r1) = match roots.len() {
        0 => (Rational::zero(), Rational::zero()),
        1 => (&roots[0] * &roots[0], Rational::zero()),
        2 => (-(&roots[0] * &roots[1]), &roots[0] + &roots[1]),
        _ => return Err(Error::UnsupportedFamily("L² is not reducible with the known projectors".into())),
    };
    let mut bb = r0.clone();
    let mut dd = Rational::zero();
    let conv = family_conventions(data).ok();
    for (_, row) in table.in_space(Space::Sym) {
        if !row.known {
            continue;
        }
        let c = &row.ell * &row.ell - &r0 - &r1 * &row.ell;
        if row.weight.is_zero() {
            bb += c / Rational::from_integer((table.adjoint_dim() as i64).into());
        } else if let Some(d) = conv.as_ref().and_then(|v| v.d_tensor.as_ref()).filter(|d| d.weight == row.weight) {
            dd += c * &d.norm;
        } else {
            return Err(Error::UnresolvedTensor(format!("P[{}]", row.label)));
        }
    }
    if dd.is_zero() {
        return Ok(Expr::atom("trF^2").pow(2).scale(&bb));
    }
    let conv = conv.ok_or_else(|| Error::UnsupportedFamily(data.id.to_string()))?;
    let d = conv.d_tensor.as_ref().expect("d-projector implies a d-tensor");
    let k4 = &conv.kappa_sq * &conv.kappa_sq;
    let s4 = pow(&conv.spin, 4);
    let p2sq = (&bb - &dd * &d.quartic / &d.dd) * &k4 / (int(4) * &s4);
    let p4 = &dd * &k4 / (&s4 * &d.dd);
    Ok(Expr::atom("trA^2").pow(2).scale(&p2sq).add(&Expr::atom("trA^4").scale(&p4)))
}
