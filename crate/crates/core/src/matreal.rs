//! Explicit su(n), so(n), sp(n) matrices, their structure constants, and a
//! floating-point oracle for index identities emitted by the spectral module.

use std::fmt;

use nalgebra::{Complex, DMatrix, DVector};
use num::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cartan::{algebra_data, AlgebraId, Series};
use crate::error::{Error, Result};
use crate::ratpoly::Rational;
use crate::spectral::{
    all_projectors, default_spectrum_table, family_conventions, fold_antisymmetric, index_identity, projector_index,
    reduce_l_power, IndexAtom, IndexIdentity, Style,
};

pub type CMat = DMatrix<Complex<f64>>;

/// Largest adjoint dimension checked over every index tuple.
pub const FULL_INDEX_LIMIT: usize = 24;
/// Random index tuples drawn above [`FULL_INDEX_LIMIT`].
pub const SAMPLE_TUPLES: usize = 100_000;
/// Random probe vectors for projector products.
pub const PROBE_VECTORS: usize = 6;
const SEED: u64 = 0x6c69_6574_7261_6365;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum MatrixFamily {
    SU,
    SO,
    SP,
}

impl fmt::Display for MatrixFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MatrixFamily::SU => "su",
            MatrixFamily::SO => "so",
            MatrixFamily::SP => "sp",
        })
    }
}

impl MatrixFamily {
    /// Name of the antisymmetric structure tensor in this family's notation.
    pub fn tensor_name(&self) -> &'static str {
        match self {
            MatrixFamily::SU => "f",
            _ => "c",
        }
    }

    /// Value of t_{pqj} t_{pqk} / δ_{jk} for matrix size `n`.
    pub fn killing(&self, n: usize) -> f64 {
        let n = n as f64;
        match self {
            MatrixFamily::SU => n,
            MatrixFamily::SO => 2.0 * (n - 2.0),
            MatrixFamily::SP => 2.0 * (n + 2.0),
        }
    }
}

/// Matrix family and size realizing a classical algebra, if any.
pub fn matrix_family(id: AlgebraId) -> Option<(MatrixFamily, usize)> {
    match id.series {
        Series::A => Some((MatrixFamily::SU, id.rank + 1)),
        Series::B => Some((MatrixFamily::SO, 2 * id.rank + 1)),
        Series::D => Some((MatrixFamily::SO, 2 * id.rank)),
        Series::C => Some((MatrixFamily::SP, 2 * id.rank)),
        _ => None,
    }
}

/// Hermitean generators `x` normalized to tr(x x) = 2δ, plus partners `y`
/// completing them to a Gell-Mann basis of su(n) (empty for SU).
#[derive(Clone, Debug)]
pub struct MatrixBasis {
    pub family: MatrixFamily,
    pub n: usize,
    pub x: Vec<CMat>,
    pub y: Vec<CMat>,
}

fn unit(n: usize, a: usize, b: usize, z: Complex<f64>) -> CMat {
    let mut m = CMat::zeros(n, n);
    m[(a, b)] = z;
    m
}

/// Generalized Gell-Mann matrices in the customary order (Pauli for n = 2).
pub fn gell_mann(n: usize) -> Vec<CMat> {
    let one = Complex::new(1.0, 0.0);
    let i = Complex::new(0.0, 1.0);
    let mut out = Vec::with_capacity(n * n - 1);
    for b in 1..n {
        for a in 0..b {
            out.push(unit(n, a, b, one) + unit(n, b, a, one));
            out.push(unit(n, a, b, -i) + unit(n, b, a, i));
        }
        let s = (2.0 / ((b * (b + 1)) as f64)).sqrt();
        let mut m = CMat::zeros(n, n);
        for k in 0..b {
            m[(k, k)] = Complex::new(s, 0.0);
        }
        m[(b, b)] = Complex::new(-(b as f64) * s, 0.0);
        out.push(m);
    }
    out
}

fn cmax(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn tr_prod(a: &CMat, b: &CMat) -> Complex<f64> {
    let n = a.nrows();
    let mut s = Complex::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            s += a[(i, j)] * b[(j, i)];
        }
    }
    s
}

/// Gram-Schmidt in the form tr(AB)/2, dropping dependent vectors.
fn orthonormalize(vs: impl IntoIterator<Item = CMat>) -> Vec<CMat> {
    let mut out: Vec<CMat> = Vec::new();
    for mut v in vs {
        for u in &out {
            let c = tr_prod(u, &v).re / 2.0;
            v -= u * Complex::new(c, 0.0);
        }
        let nn = tr_prod(&v, &v).re / 2.0;
        if nn > 1e-9 {
            out.push(v / Complex::new(nn.sqrt(), 0.0));
        }
    }
    out
}

fn symplectic_form(n: usize) -> CMat {
    let h = n / 2;
    let mut j = CMat::zeros(n, n);
    for k in 0..h {
        j[(k, h + k)] = Complex::new(1.0, 0.0);
        j[(h + k, k)] = Complex::new(-1.0, 0.0);
    }
    j
}

/// Involution fixing the algebra: x ↦ -xᵀ (SO) or x ↦ -J⁻¹xᵀJ (SP).
fn involution(family: MatrixFamily, n: usize) -> Box<dyn Fn(&CMat) -> CMat> {
    match family {
        MatrixFamily::SU => Box::new(|x: &CMat| x.clone()),
        MatrixFamily::SO => Box::new(|x: &CMat| -x.transpose()),
        MatrixFamily::SP => {
            let j = symplectic_form(n);
            let jinv = -j.clone();
            Box::new(move |x: &CMat| -(&jinv * x.transpose() * &j))
        }
    }
}

pub fn basis(family: MatrixFamily, n: usize) -> Result<MatrixBasis> {
    let ok = match family {
        MatrixFamily::SU => n >= 2,
        MatrixFamily::SO => n >= 5,
        MatrixFamily::SP => n >= 4 && n.is_multiple_of(2),
    };
    if !ok {
        return Err(Error::UnsupportedSize(n));
    }
    let gm = gell_mann(n);
    if family == MatrixFamily::SU {
        return Ok(MatrixBasis { family, n, x: gm, y: Vec::new() });
    }
    let sigma = involution(family, n);
    let half = Complex::new(0.5, 0.0);
    let x = orthonormalize(gm.iter().map(|g| (g + sigma(g)) * half));
    let y = orthonormalize(gm.iter().map(|g| (g - sigma(g)) * half));
    Ok(MatrixBasis { family, n, x, y })
}

impl MatrixBasis {
    pub fn dim(&self) -> usize {
        self.x.len()
    }

    pub fn algebra(&self) -> Result<AlgebraId> {
        AlgebraId::parse(&format!("{}{}", self.family, self.n))
    }

    /// Largest deviation from orthonormality, hermiticity, tracelessness and the
    /// family's defining condition, over generators and partners.
    pub fn defect(&self) -> f64 {
        let sigma = involution(self.family, self.n);
        let mut worst: f64 = 0.0;
        let all: Vec<&CMat> = self.x.iter().chain(&self.y).collect();
        for (a, m) in all.iter().enumerate() {
            worst = worst.max(cmax(&(*m - m.adjoint())));
            worst = worst.max(m.trace().norm());
            for (b, o) in all.iter().enumerate().skip(a) {
                let want = if a == b { 2.0 } else { 0.0 };
                worst = worst.max((tr_prod(m, o) - Complex::new(want, 0.0)).norm());
            }
        }
        for m in &self.x {
            worst = worst.max(cmax(&(sigma(m) - m)));
        }
        for m in &self.y {
            worst = worst.max(cmax(&(sigma(m) + m)));
        }
        worst
    }
}

/// Structure tensor t (f or c) and the symmetric tensor d.
#[derive(Clone, Debug)]
pub struct TensorSet {
    pub family: MatrixFamily,
    pub n: usize,
    pub dim: usize,
    /// Range of the third index of d: dim for SU, number of partners otherwise.
    pub d_dim: usize,
    t: Vec<f64>,
    d: Vec<f64>,
}

impl TensorSet {
    pub fn tensor_name(&self) -> &'static str {
        self.family.tensor_name()
    }

    pub fn t(&self, j: usize, k: usize, l: usize) -> f64 {
        self.t[(j * self.dim + k) * self.dim + l]
    }

    pub fn d(&self, j: usize, k: usize, a: usize) -> f64 {
        self.d[(j * self.dim + k) * self.d_dim + a]
    }

    /// max |t_{pqj} t_{pqk} − κ² δ_{jk}|.
    pub fn killing_residual(&self) -> f64 {
        let k2 = self.family.killing(self.n);
        let mut worst: f64 = 0.0;
        for j in 0..self.dim {
            for k in 0..self.dim {
                let mut s = 0.0;
                for p in 0..self.dim {
                    for q in 0..self.dim {
                        s += self.t(p, q, j) * self.t(p, q, k);
                    }
                }
                let want = if j == k { k2 } else { 0.0 };
                worst = worst.max((s - want).abs());
            }
        }
        worst
    }

    /// Largest violation of total antisymmetry of t, symmetry of d in its
    /// first pair, and d_{jj·} = 0.
    pub fn symmetry_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for j in 0..self.dim {
            for k in 0..self.dim {
                for l in 0..self.dim {
                    worst = worst.max((self.t(j, k, l) + self.t(k, j, l)).abs());
                    worst = worst.max((self.t(j, k, l) - self.t(k, l, j)).abs());
                }
                for a in 0..self.d_dim {
                    worst = worst.max((self.d(j, k, a) - self.d(k, j, a)).abs());
                }
            }
        }
        for a in 0..self.d_dim {
            let s: f64 = (0..self.dim).map(|j| self.d(j, j, a)).sum();
            worst = worst.max(s.abs());
        }
        worst
    }
}

/// t from the commutators, d from the anticommutators (against λ for SU,
/// against the partners y otherwise).
pub fn structure_constants(b: &MatrixBasis) -> TensorSet {
    let dim = b.dim();
    let targets: &[CMat] = if b.family == MatrixFamily::SU { &b.x } else { &b.y };
    let d_dim = targets.len();
    // [λ,λ] = 2if λ and {λ,λ} ∋ 2dλ for SU; [x,x] = icx and {x,x} ∋ dy otherwise.
    let (ct, cd) = if b.family == MatrixFamily::SU { (4.0, 4.0) } else { (2.0, 2.0) };
    let mut t = vec![0.0; dim * dim * dim];
    let mut d = vec![0.0; dim * dim * d_dim];
    let prods: Vec<CMat> = (0..dim * dim).map(|i| &b.x[i / dim] * &b.x[i % dim]).collect();
    for j in 0..dim {
        for k in 0..dim {
            let comm = &prods[j * dim + k] - &prods[k * dim + j];
            let anti = &prods[j * dim + k] + &prods[k * dim + j];
            for l in 0..dim {
                t[(j * dim + k) * dim + l] = tr_prod(&comm, &b.x[l]).im / ct;
            }
            for (a, y) in targets.iter().enumerate() {
                d[(j * dim + k) * d_dim + a] = tr_prod(&anti, y).re / cd;
            }
        }
    }
    TensorSet { family: b.family, n: b.n, dim, d_dim, t, d }
}

/// Residuals of the Jacobi-type identities; the mixed and cyclic ones use the
/// su(n) d-tensor and are absent for SO and SP.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Class1Residuals {
    pub jacobi: f64,
    pub mixed: Option<f64>,
    pub cyclic: Option<f64>,
}

pub fn class1_checks(ts: &TensorSet) -> Class1Residuals {
    let n = ts.dim;
    let su = ts.family == MatrixFamily::SU;
    let mut jac: f64 = 0.0;
    let mut mixed: f64 = 0.0;
    let mut cyc: f64 = 0.0;
    let inv_n = 8.0 / ts.n as f64;
    let dl = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
    for j in 0..n {
        for k in 0..n {
            for l in 0..n {
                for p in 0..n {
                    let mut a = 0.0;
                    let mut ffm = 0.0;
                    let mut ddm = 0.0;
                    let mut c = 0.0;
                    for m in 0..n {
                        a += ts.t(j, k, m) * ts.t(m, l, p) + ts.t(k, l, m) * ts.t(m, j, p) + ts.t(l, j, m) * ts.t(m, k, p);
                        if su {
                            ffm += ts.t(j, k, m) * ts.t(m, l, p);
                            ddm += ts.d(j, l, m) * ts.d(m, k, p) - ts.d(k, l, m) * ts.d(m, j, p);
                            c += ts.d(j, k, m) * ts.t(m, l, p)
                                + ts.d(k, l, m) * ts.t(m, j, p)
                                + ts.d(l, j, m) * ts.t(m, k, p);
                        }
                    }
                    jac = jac.max(a.abs());
                    if su {
                        let r = -4.0 * ffm + inv_n * (dl(j, l) * dl(k, p) - dl(k, l) * dl(j, p)) + 4.0 * ddm;
                        mixed = mixed.max(r.abs());
                        cyc = cyc.max(c.abs());
                    }
                }
            }
        }
    }
    Class1Residuals { jacobi: jac, mixed: su.then_some(mixed), cyclic: su.then_some(cyc) }
}

/// Evaluates index atoms at (j,k,p,q) through pair-indexed matrices.
struct AtomEval<'a> {
    ts: &'a TensorSet,
    /// cross[(j,k),(p,q)] = t_{jpr} t_{kqr}
    cross: DMatrix<f64>,
    /// dd[(j,k),(p,q)] = d_{jk·} d_{pq·}
    dd: DMatrix<f64>,
    /// cross², only built when a full quartic matrix is cheap enough.
    quartic: Option<DMatrix<f64>>,
}

impl<'a> AtomEval<'a> {
    fn new(ts: &'a TensorSet, want_quartic: bool) -> Self {
        let n = ts.dim;
        let n2 = n * n;
        let mut pairs = DMatrix::<f64>::zeros(n2, n);
        let mut cross = DMatrix::<f64>::zeros(n2, n2);
        for j in 0..n {
            for p in 0..n {
                for r in 0..n {
                    pairs[(j * n + p, r)] = ts.t(j, p, r);
                }
            }
        }
        // t_{jp·}·t_{kq·} for all (j,p),(k,q), then permuted into (j,k),(p,q).
        let g = &pairs * pairs.transpose();
        for j in 0..n {
            for p in 0..n {
                for k in 0..n {
                    for q in 0..n {
                        cross[(j * n + k, p * n + q)] = g[(j * n + p, k * n + q)];
                    }
                }
            }
        }
        let mut dm = DMatrix::<f64>::zeros(n2, ts.d_dim);
        for j in 0..n {
            for k in 0..n {
                for a in 0..ts.d_dim {
                    dm[(j * n + k, a)] = ts.d(j, k, a);
                }
            }
        }
        let dd = &dm * dm.transpose();
        let quartic = want_quartic.then(|| &cross * &cross);
        AtomEval { ts, cross, dd, quartic }
    }

    fn quartic_at(&self, jk: usize, pq: usize) -> f64 {
        match &self.quartic {
            Some(m) => m[(jk, pq)],
            None => self.cross.row(jk).dot(&self.cross.column(pq).transpose()),
        }
    }

    fn value(&self, atom: IndexAtom, j: usize, k: usize, p: usize, q: usize) -> f64 {
        use IndexAtom::*;
        let n = self.ts.dim;
        let dl = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
        match atom {
            Quartic => self.quartic_at(j * n + k, p * n + q),
            QuarticSwapped => self.quartic_at(j * n + k, q * n + p),
            Cross => self.cross[(j * n + k, p * n + q)],
            CrossSwapped => self.cross[(j * n + k, q * n + p)],
            SymUnit => dl(j, p) * dl(k, q) + dl(j, q) * dl(k, p),
            AltUnit => dl(j, p) * dl(k, q) - dl(j, q) * dl(k, p),
            Trace => dl(j, k) * dl(p, q),
            DD => self.dd[(j * n + k, p * n + q)],
            Adjoint => self.cross[(j * n + p, k * n + q)],
        }
    }

    fn sum(&self, terms: &[(IndexAtom, f64)], j: usize, k: usize, p: usize, q: usize) -> f64 {
        terms.iter().map(|(a, c)| c * self.value(*a, j, k, p, q)).sum()
    }

    fn matrix(&self, terms: &[(IndexAtom, f64)]) -> DMatrix<f64> {
        let n = self.ts.dim;
        DMatrix::from_fn(n * n, n * n, |jk, pq| self.sum(terms, jk / n, jk % n, pq / n, pq % n))
    }
}

fn to_f64(v: &[(IndexAtom, Rational)]) -> Vec<(IndexAtom, f64)> {
    v.iter().map(|(a, c)| (*a, c.to_f64().unwrap_or(f64::NAN))).collect()
}

fn needs_quartic(v: &[(IndexAtom, f64)]) -> bool {
    v.iter().any(|(a, _)| matches!(a, IndexAtom::Quartic | IndexAtom::QuarticSwapped))
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Verification {
    pub max_residual: f64,
    pub tuples: usize,
    pub exhaustive: bool,
    pub passed: bool,
}

/// Evaluates both sides of `id` on every (j,k,p,q), or on a seeded random
/// sample when the adjoint is larger than [`FULL_INDEX_LIMIT`].
pub fn verify_identity(ts: &TensorSet, id: &IndexIdentity, tol: f64) -> Result<Verification> {
    if id.tensor != ts.tensor_name() {
        return Err(Error::UnresolvedTensor(id.tensor.to_string()));
    }
    let mut terms = to_f64(&id.lhs);
    terms.extend(to_f64(&id.rhs).into_iter().map(|(a, c)| (a, -c)));
    let n = ts.dim;
    let exhaustive = n <= FULL_INDEX_LIMIT;
    let ev = AtomEval::new(ts, exhaustive && needs_quartic(&terms));
    let mut worst: f64 = 0.0;
    let tuples = if exhaustive {
        let m = ev.matrix(&terms);
        worst = m.amax();
        n * n * n * n
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        for _ in 0..SAMPLE_TUPLES {
            let (j, k, p, q) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            worst = worst.max(ev.sum(&terms, j, k, p, q).abs());
        }
        SAMPLE_TUPLES
    };
    Ok(Verification { max_residual: worst, tuples, exhaustive, passed: worst < tol })
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ProjectorCheck {
    /// max |(PᵢPⱼ − δᵢⱼPᵢ)v| over probe vectors v.
    pub product_residual: f64,
    /// max |tr Pᵢ − rankᵢ|.
    pub trace_residual: f64,
}

/// Numeric idempotence, mutual orthogonality and rank of index-form projectors,
/// each given with the dimension of the irrep it should project on.
pub fn projector_checks(ts: &TensorSet, projectors: &[(Vec<(IndexAtom, Rational)>, f64)]) -> ProjectorCheck {
    let n2 = ts.dim * ts.dim;
    let terms: Vec<Vec<(IndexAtom, f64)>> = projectors.iter().map(|(p, _)| to_f64(p)).collect();
    let ev = AtomEval::new(ts, terms.iter().any(|t| needs_quartic(t)));
    let mats: Vec<DMatrix<f64>> = terms.iter().map(|t| ev.matrix(t)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let probes: Vec<DVector<f64>> = (0..PROBE_VECTORS)
        .map(|_| {
            let v = DVector::from_fn(n2, |_, _| rng.gen_range(-1.0..1.0));
            let norm = v.norm();
            v / norm
        })
        .collect();
    let mut prod: f64 = 0.0;
    let mut tr: f64 = 0.0;
    for (i, pi) in mats.iter().enumerate() {
        tr = tr.max((pi.trace() - projectors[i].1).abs());
        for v in &probes {
            let piv = pi * v;
            for (j, pj) in mats.iter().enumerate() {
                let r = if i == j { pi * (pj * v) - &piv } else { pi * (pj * v) };
                prod = prod.max(r.amax());
            }
        }
    }
    ProjectorCheck { product_residual: prod, trace_residual: tr }
}

/// max over random unit vectors a of |tr F(a)⁴ − 2(a·a)² − (n/4) Σ_r (d_{rij}a_i a_j)²|
/// for su(n), with F(a)_{pq} = −i a_j f_{jpq}.
pub fn su_quartic_trace_residual(ts: &TensorSet, samples: usize) -> Result<f64> {
    if ts.family != MatrixFamily::SU {
        return Err(Error::UnsupportedSize(ts.n));
    }
    let n = ts.dim;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 4);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let a: DVector<f64> = DVector::from_fn(n, |_, _| rng.gen_range(-1.0..1.0));
        let a = &a / a.norm();
        // F is i·(real antisymmetric), so tr F⁴ = tr M⁴ with M_{pq} = a_j f_{jpq}.
        let m = DMatrix::from_fn(n, n, |p, q| (0..n).map(|j| a[j] * ts.t(j, p, q)).sum::<f64>());
        let m2 = &m * &m;
        let tr4 = (&m2 * &m2).trace();
        let mut dsq = 0.0;
        for r in 0..n {
            let mut s = 0.0;
            for i in 0..n {
                for j in 0..n {
                    s += ts.d(r, i, j) * a[i] * a[j];
                }
            }
            dsq += s * s;
        }
        worst = worst.max((tr4 - 2.0 - ts.n as f64 / 4.0 * dsq).abs());
    }
    Ok(worst)
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub identity: String,
    pub verification: Verification,
}

/// Every numeric check for one classical algebra.
#[derive(Clone, Debug, Serialize)]
pub struct AlgebraReport {
    pub algebra: String,
    pub family: MatrixFamily,
    pub n: usize,
    pub dim: usize,
    pub tol: f64,
    pub basis_defect: f64,
    pub killing_residual: f64,
    pub symmetry_defect: f64,
    pub class1: Class1Residuals,
    pub identities: Vec<IdentityCheck>,
    pub projectors: Vec<String>,
    pub projector_check: ProjectorCheck,
    pub passed: bool,
}

impl AlgebraReport {
    /// Largest residual among the class-2 identities and projector checks.
    pub fn class2_residual(&self) -> f64 {
        self.identities
            .iter()
            .map(|c| c.verification.max_residual)
            .fold(self.projector_check.product_residual.max(self.projector_check.trace_residual), f64::max)
    }

    pub fn class1_residual(&self) -> f64 {
        let c = &self.class1;
        c.jacobi.max(c.mixed.unwrap_or(0.0)).max(c.cyclic.unwrap_or(0.0))
    }
}

/// Builds the matrices for `id`, then checks the reduced L identity on the
/// symmetric part and on the full space, plus every emitted projector.
pub fn verify_algebra(id: AlgebraId, tol: f64) -> Result<AlgebraReport> {
    let (family, n) = matrix_family(id).ok_or_else(|| Error::UnsupportedFamily(id.to_string()))?;
    let b = basis(family, n)?;
    let ts = structure_constants(&b);
    let data = algebra_data(id)?;
    let table = default_spectrum_table(&data)?;
    let conv = family_conventions(&data)?;
    let sym = reduce_l_power(&table)?;
    let full = fold_antisymmetric(&sym, &table)?;
    let mut identities = Vec::new();
    for op in [&sym, &full] {
        let ix = index_identity(op, &table, &conv)?;
        let verification = verify_identity(&ts, &ix, tol)?;
        identities.push(IdentityCheck { identity: ix.render(Style::Text), verification });
    }
    let mut projectors = Vec::new();
    let mut forms = Vec::new();
    for p in all_projectors(&table)? {
        let rank: u128 = p.targets.iter().map(|&i| table.rows[i].dim).sum();
        projectors.push(p.label(&table));
        forms.push((projector_index(&p, &table, &conv)?, rank as f64));
    }
    let projector_check = projector_checks(&ts, &forms);
    let mut report = AlgebraReport {
        algebra: id.to_string(),
        family,
        n,
        dim: ts.dim,
        tol,
        basis_defect: b.defect(),
        killing_residual: ts.killing_residual(),
        symmetry_defect: ts.symmetry_defect(),
        class1: class1_checks(&ts),
        identities,
        projectors,
        projector_check,
        passed: false,
    };
    report.passed = [
        report.basis_defect,
        report.killing_residual,
        report.symmetry_defect,
        report.class1_residual(),
        report.class2_residual(),
    ]
    .iter()
    .all(|r| *r < tol);
    Ok(report)
}
