//! Acceptance suite: one PASS/FAIL line per criterion, run sequentially so that
//! the timing budget is measured without competing tests.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use lietrace_core::matreal::verify_algebra;
use lietrace_core::spectral::{
    all_projectors, default_spectrum_table, fold_antisymmetric, quartic_adjoint_trace, reduce_l_power, OpTerm,
    SpectralIdentity,
};
use lietrace_core::{
    adjoint_square_table, algebra_data, dimension, rat, square_split, weight_system, AlgebraData, AlgebraId, BasisKind,
    Error, Expr, Rational, RepKind, Series, Space, TraceContext, Weight,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use common::{check_line, context, golden_lines};

/// Exact criteria compare rationals; these are the only floating tolerances.
const CLASS2_TOL: f64 = 1e-9;
const JACOBI_TOL: f64 = 1e-10;
const CORPUS_BUDGET: Duration = Duration::from_secs(60);
const E6_POWER_SUM_BUDGET: Duration = Duration::from_secs(10);

const CORPUS: [&str; 14] = ["a2", "a3", "a4", "b2", "b3", "b4", "c2", "c3", "c4", "d3", "d4", "e6", "f4", "g2"];

type Outcome = Result<String, String>;

fn data(name: &str) -> AlgebraData {
    algebra_data(AlgebraId::parse(name).unwrap()).unwrap()
}

fn r(n: i64) -> Rational {
    rat(n, 1)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Every catalog algebra through rank 6, plus f4 and e6.
fn catalog() -> Vec<AlgebraId> {
    let mut v = Vec::new();
    for l in 1..=6 {
        v.push(AlgebraId::new(Series::A, l).unwrap());
    }
    for l in 2..=6 {
        v.push(AlgebraId::new(Series::B, l).unwrap());
        v.push(AlgebraId::new(Series::C, l).unwrap());
    }
    for l in 3..=6 {
        v.push(AlgebraId::new(Series::D, l).unwrap());
    }
    for s in ["g2", "f4", "e6"] {
        v.push(AlgebraId::parse(s).unwrap());
    }
    v
}

// ---------------------------------------------------------------------------
// 1. published relations

fn published_relations() -> Outcome {
    let mut failures = Vec::new();
    let (mut lines, mut exact, mut misprints) = (0, 0, 0);
    let mut contexts: BTreeMap<String, TraceContext> = BTreeMap::new();
    for g in golden_lines() {
        let ctx = contexts.entry(g.alg.clone()).or_insert_with(|| context(&g.alg));
        let v = check_line(ctx, &g);
        lines += 1;
        if g.misprint {
            misprints += 1;
            if v.holds {
                failures.push(format!("misprint holds: {} {}", g.alg, g.text));
            }
            continue;
        }
        if !v.holds {
            failures.push(format!("does not hold: {} {} {}", g.alg, g.kind, g.text));
        }
        match v.matches_engine {
            Some(true) => exact += 1,
            Some(false) => failures.push(format!("coefficients differ: {} {} {}", g.alg, g.kind, g.text)),
            None => {}
        }
    }
    for (alg, k, coeff) in [("f4", 10, rat(7, 41472)), ("a4", 12, rat(13799, 61440000)), ("g2", 8, rat(-2905, 319488))] {
        let ctx = &contexts[alg];
        let rel = if alg == "f4" { ctx.defining_relation(k) } else { ctx.self_relation_adjoint(k) }.unwrap();
        if !rel.terms.iter().any(|t| t.coeff == coeff) {
            failures.push(format!("{alg} degree {k} lacks coefficient {coeff}"));
        }
    }
    let f4 = contexts["f4"].defining_relation(10).unwrap();
    let got: Vec<Rational> = f4.terms.iter().map(|t| t.coeff.clone()).collect();
    if got != [rat(7, 41472), rat(-7, 144), rat(3, 8)] {
        failures.push(format!("f4 trA^10 coefficients {got:?}"));
    }
    ensure(failures.is_empty(), || failures.join("; "))?;
    Ok(format!("{lines} lines hold exactly, {exact} coefficient sets equal the engine, {misprints} misprints rejected"))
}

// ---------------------------------------------------------------------------
// 2. missing adjoint-self relations in a4

fn a4_non_relations() -> Outcome {
    let ctx = context("a4");
    for k in [4, 6, 8, 10] {
        match ctx.self_relation_adjoint(k) {
            Err(Error::NoRelation(_)) => {}
            other => return Err(format!("trF^{k}: expected no relation, got {other:?}")),
        }
    }
    let rel = ctx.self_relation_adjoint(12).map_err(|e| format!("trF^12: {e}"))?;
    ensure(rel.unique, || "trF^12 relation is not unique".into())?;
    Ok("no relation at 4, 6, 8, 10; unique relation at 12".into())
}

// ---------------------------------------------------------------------------
// 3. adjoint-square tables

struct Row {
    /// Irreps summed into one row when a generic piece splits at low rank.
    parts: Vec<Weight>,
    /// Occurrences in the symmetric and antisymmetric square; empty if absent.
    spaces: Vec<Space>,
    dim: Rational,
    casimir: Rational,
    /// L as printed.
    ell: Rational,
    /// Correct L where the printed one is a misprint.
    corrected: Option<Rational>,
}

fn lam(rank: usize, terms: &[(usize, i64)]) -> Weight {
    let mut w = vec![0; rank];
    for &(i, c) in terms {
        w[i - 1] += c;
    }
    Weight(w)
}

fn labels(w: &[i64]) -> Weight {
    Weight(w.to_vec())
}

fn row(parts: Vec<Weight>, spaces: &[Space], dim: Rational, casimir: Rational, ell: Rational) -> Row {
    Row { parts, spaces: spaces.to_vec(), dim, casimir, ell, corrected: None }
}

use Space::{Alt, Sym};

fn classical_rows(series: Series, rank: usize) -> Vec<Row> {
    let l = rank as i64;
    let q = |x: i64| r(x);
    let w = |t: &[(usize, i64)]| vec![lam(rank, t)];
    let zero = vec![Weight(vec![0; rank])];
    match series {
        Series::A => vec![
            row(zero, &[Sym], q(1), q(0), q(-1)),
            row(w(&[(1, 1), (rank, 1)]), &[Sym, Alt], q(l * (l + 2)), q(1), rat(-1, 2)),
            row(
                w(&[(2, 1), (rank - 1, 1)]),
                &[Sym],
                q((l + 1) * (l + 1) * (l + 2) * (l - 2)) / q(4),
                rat(2 * l, l + 1),
                rat(-1, l + 1),
            ),
            row(w(&[(1, 2), (rank, 2)]), &[Sym], q(l * (l + 1) * (l + 1) * (l + 4)) / q(4), rat(2 * (l + 2), l + 1), rat(1, l + 1)),
            row(w(&[(1, 2), (rank - 1, 1)]), &[Alt], q(l * (l + 2) * (l + 3) * (l - 1)) / q(4), q(2), q(0)),
            row(w(&[(2, 1), (rank, 2)]), &[Alt], q(l * (l + 2) * (l + 3) * (l - 1)) / q(4), q(2), q(0)),
        ],
        Series::B => {
            let (adj, two_adj, fourth, sixth): (Vec<i64>, Vec<i64>, Vec<i64>, Vec<i64>) = match rank {
                2 => (vec![0, 2], vec![0, 4], vec![1, 0], vec![1, 2]),
                3 => (vec![0, 1, 0], vec![0, 2, 0], vec![0, 0, 2], vec![1, 0, 2]),
                4 => (vec![0, 1, 0, 0], vec![0, 2, 0, 0], vec![0, 0, 0, 2], vec![1, 0, 1, 0]),
                _ => (lam(rank, &[(2, 1)]).0, lam(rank, &[(2, 2)]).0, lam(rank, &[(4, 1)]).0, lam(rank, &[(1, 1), (3, 1)]).0),
            };
            vec![
                row(zero, &[Sym], q(1), q(0), q(-1)),
                row(vec![labels(&adj)], &[Alt], q(l * (2 * l + 1)), q(1), rat(-1, 2)),
                row(
                    vec![labels(&two_adj)],
                    &[Sym],
                    q((l - 1) * (l + 1) * (2 * l + 1) * (2 * l + 3)) / q(3),
                    rat(4 * l, 2 * l - 1),
                    rat(1, 2 * l - 1),
                ),
                row(
                    vec![labels(&fourth)],
                    &[Sym],
                    q(l * (l - 1) * (2 * l - 1) * (2 * l + 1)) / q(6),
                    rat(2 * (2 * l - 3), 2 * l - 1),
                    rat(-2, 2 * l - 1),
                ),
                row(w(&[(1, 2)]), &[Sym], q(l * (2 * l + 3)), rat(2 * l + 1, 2 * l - 1), rat(-(2 * l - 3), 2 * (2 * l - 1))),
                row(vec![labels(&sixth)], &[Alt], q(l * (l - 1) * (2 * l + 1) * (2 * l + 3)) / q(2), q(2), q(0)),
            ]
        }
        Series::C => vec![
            row(zero, &[Sym], q(1), q(0), q(-1)),
            row(w(&[(1, 2)]), &[Alt], q(l * (2 * l + 1)), q(1), rat(-1, 2)),
            row(w(&[(1, 4)]), &[Sym], q(l * (l + 1) * (2 * l + 1) * (2 * l + 3)) / q(6), rat(2 * (l + 2), l + 1), rat(1, l + 1)),
            row(w(&[(2, 2)]), &[Sym], q(l * (l - 1) * (2 * l - 1) * (2 * l + 3)) / q(3), rat(2 * l + 1, l + 1), rat(-1, 2 * (l + 1))),
            row(w(&[(2, 1)]), &[Sym], q((l - 1) * (2 * l + 1)), rat(l, l + 1), rat(-(l + 2), 2 * (l + 1))),
            row(w(&[(1, 2), (2, 1)]), &[Alt], q(l * (l - 1) * (2 * l + 1) * (2 * l + 3)) / q(2), q(2), q(0)),
        ],
        Series::D => {
            let (adj, two_adj, fourth, sixth): (Vec<i64>, Vec<i64>, Vec<Vec<i64>>, Vec<Vec<i64>>) = match rank {
                3 => (vec![0, 1, 1], vec![0, 2, 2], vec![vec![0, 1, 1]], vec![vec![1, 0, 2], vec![1, 2, 0]]),
                4 => (
                    vec![0, 1, 0, 0],
                    vec![0, 2, 0, 0],
                    vec![vec![0, 0, 2, 0], vec![0, 0, 0, 2]],
                    vec![vec![1, 0, 1, 1]],
                ),
                5 => (vec![0, 1, 0, 0, 0], vec![0, 2, 0, 0, 0], vec![vec![0, 0, 0, 1, 1]], vec![vec![1, 0, 1, 0, 0]]),
                _ => (
                    lam(rank, &[(2, 1)]).0,
                    lam(rank, &[(2, 2)]).0,
                    vec![lam(rank, &[(4, 1)]).0],
                    vec![lam(rank, &[(1, 1), (3, 1)]).0],
                ),
            };
            vec![
                row(zero, &[Sym], q(1), q(0), q(-1)),
                row(vec![labels(&adj)], &[Alt], q(l * (2 * l - 1)), q(1), rat(-1, 2)),
                row(
                    vec![labels(&two_adj)],
                    &[Sym],
                    q(l * (l + 1) * (2 * l - 3) * (2 * l + 1)) / q(3),
                    rat(2 * l - 1, l - 1),
                    rat(1, 2 * (l - 1)),
                ),
                row(
                    fourth.iter().map(|v| labels(v)).collect(),
                    &[Sym],
                    q(l * (l - 1) * (2 * l - 3) * (2 * l - 1)) / q(6),
                    rat(2 * (l - 2), l - 1),
                    rat(-1, l - 1),
                ),
                row(w(&[(1, 2)]), &[Sym], q((l + 1) * (2 * l - 1)), rat(l, l - 1), rat(-(l - 2), 2 * (l - 1))),
                row(
                    sixth.iter().map(|v| labels(v)).collect(),
                    &[Alt],
                    q(l * (l + 1) * (2 * l - 3) * (2 * l - 1)) / q(2),
                    q(2),
                    q(0),
                ),
            ]
        }
        _ => unreachable!(),
    }
}

fn exceptional_rows(name: &str) -> Vec<Row> {
    let e = |w: &[i64], spaces: &[Space], d: i64, c: Rational, ell: Rational| row(vec![labels(w)], spaces, r(d), c, ell);
    match name {
        "g2" => {
            let mut seven = e(&[0, 1], &[], 7, rat(1, 2), rat(-3, 6));
            seven.corrected = Some(rat(-3, 4));
            vec![
                e(&[0, 0], &[Sym], 1, r(0), r(-1)),
                seven,
                e(&[1, 0], &[Alt], 14, r(1), rat(-1, 2)),
                e(&[0, 2], &[Sym], 27, rat(7, 6), rat(-5, 12)),
                e(&[2, 0], &[Sym], 77, rat(5, 2), rat(1, 4)),
                e(&[0, 3], &[Alt], 77, r(2), r(0)),
            ]
        }
        "f4" => vec![
            e(&[0, 0, 0, 0], &[Sym], 1, r(0), r(-1)),
            e(&[0, 0, 0, 1], &[], 26, rat(2, 3), rat(-2, 3)),
            e(&[1, 0, 0, 0], &[Alt], 52, r(1), rat(-1, 2)),
            e(&[0, 0, 0, 2], &[Sym], 324, rat(13, 9), rat(-5, 18)),
            e(&[2, 0, 0, 0], &[Sym], 1053, rat(20, 9), rat(1, 9)),
            e(&[0, 1, 0, 0], &[Alt], 1274, r(2), r(0)),
        ],
        "e6" => vec![
            e(&[0, 0, 0, 0, 0, 0], &[Sym], 1, r(0), r(-1)),
            e(&[1, 0, 0, 0, 0, 0], &[], 27, rat(13, 18), rat(-23, 36)),
            e(&[0, 0, 0, 0, 1, 0], &[], 27, rat(13, 18), rat(-23, 36)),
            e(&[0, 0, 0, 0, 0, 1], &[Alt], 78, r(1), rat(-1, 2)),
            e(&[1, 0, 0, 0, 1, 0], &[Sym], 650, rat(3, 2), rat(-1, 4)),
            e(&[0, 0, 0, 0, 0, 2], &[Sym], 2430, rat(13, 6), rat(1, 12)),
            e(&[0, 0, 1, 0, 0, 0], &[Alt], 2925, r(2), r(0)),
        ],
        _ => unreachable!(),
    }
}

/// (algebra, rows) for every table, classical ones at several ranks.
fn all_tables() -> Vec<(AlgebraId, Vec<Row>)> {
    let mut v = Vec::new();
    let ranks = [(Series::A, 3..=7), (Series::B, 2..=7), (Series::C, 2..=6), (Series::D, 3..=7)];
    for (s, rs) in ranks {
        for l in rs {
            v.push((AlgebraId::new(s, l).unwrap(), classical_rows(s, l)));
        }
    }
    for e in ["g2", "f4", "e6"] {
        v.push((AlgebraId::parse(e).unwrap(), exceptional_rows(e)));
    }
    v
}

fn space_key(s: Space) -> u8 {
    (s == Alt) as u8
}

fn adjoint_square_tables() -> Outcome {
    let mut failures = Vec::new();
    let (mut rows_checked, mut misprints) = (0, 0);
    for (id, rows) in all_tables() {
        let d = algebra_data(id).unwrap();
        let mut expected: Vec<(Vec<i64>, u8)> = Vec::new();
        for row in &rows {
            rows_checked += 1;
            let mut dim = r(0);
            for p in &row.parts {
                dim += r(dimension(&d, p).unwrap() as i64);
                let c = d.casimir(p).unwrap();
                if c != row.casimir {
                    failures.push(format!("{id} {:?}: C {c} != {}", p.0, row.casimir));
                }
                let ell = c / r(2) - r(1);
                match &row.corrected {
                    None if ell != row.ell => failures.push(format!("{id} {:?}: L {ell} != {}", p.0, row.ell)),
                    Some(fix) if ell == row.ell || &ell != fix => {
                        failures.push(format!("{id} {:?}: misprinted L {} not corrected to {ell}", p.0, row.ell))
                    }
                    Some(_) => misprints += 1,
                    None => {}
                }
                for s in &row.spaces {
                    expected.push((p.0.clone(), space_key(*s)));
                }
            }
            if dim != row.dim {
                failures.push(format!("{id} {:?}: dim {dim} != {}", row.parts[0].0, row.dim));
            }
        }
        let mut got: Vec<(Vec<i64>, u8)> =
            adjoint_square_table(&d).unwrap().into_iter().map(|t| (t.weight.0, space_key(t.space))).collect();
        got.sort();
        expected.sort();
        if got != expected {
            failures.push(format!("{id}: adjoint square {got:?} != table {expected:?}"));
        }
    }
    let d4 = data("d4");
    let split = square_split(&d4, &d4.adjoint()).unwrap();
    let sym: Vec<Vec<i64>> = split.sym.parts.iter().map(|p| p.weight.0.clone()).collect();
    let both = sym.contains(&vec![0, 0, 2, 0]) && sym.contains(&vec![0, 0, 0, 2]);
    if !both {
        failures.push(format!("d4 symmetric square {sym:?} lacks the split pair"));
    }
    ensure(failures.is_empty(), || failures.join("; "))?;
    Ok(format!("{rows_checked} rows over 25 algebras, {misprints} misprint confirmed (g2 7: L = -3/4)"))
}

// ---------------------------------------------------------------------------
// 4. spectral identities

fn coefficient_set(id: &SpectralIdentity, table: &lietrace_core::SpectrumTable) -> BTreeMap<String, Rational> {
    id.terms
        .iter()
        .filter(|(_, c)| *c != r(0))
        .map(|(t, c)| {
            let name = match t {
                OpTerm::Unit { space, power } => format!("L^{power}*1_{}", if *space == Sym { "S" } else { "A" }),
                OpTerm::Projector(j) => format!("P{:?}", table.rows[*j].weight.0),
            };
            (name, c.clone())
        })
        .collect()
}

fn unit(space: Space, power: u32) -> String {
    format!("L^{power}*1_{}", if space == Sym { "S" } else { "A" })
}

fn proj(w: Weight) -> String {
    format!("P{:?}", w.0)
}

fn expect_set(
    name: &str,
    full: bool,
    power: u32,
    want: Vec<(String, Rational)>,
    failures: &mut Vec<String>,
) -> Result<(), String> {
    let d = data(name);
    let t = default_spectrum_table(&d).map_err(|e| e.to_string())?;
    let sym = reduce_l_power(&t).map_err(|e| e.to_string())?;
    let id = if full { fold_antisymmetric(&sym, &t).map_err(|e| e.to_string())? } else { sym };
    if id.power != power {
        failures.push(format!("{name}: power {} != {power}", id.power));
    }
    if !id.spectral_test(&t) {
        failures.push(format!("{name}: identity fails the spectral test"));
    }
    let want: BTreeMap<String, Rational> = want.into_iter().filter(|(_, c)| *c != r(0)).collect();
    let got = coefficient_set(&id, &t);
    if got != want {
        failures.push(format!("{name}: {got:?} != {want:?}"));
    }
    Ok(())
}

fn spectral_identities() -> Outcome {
    let mut f = Vec::new();
    let z = |rank: usize| Weight(vec![0; rank]);
    expect_set(
        "a2",
        false,
        1,
        vec![(unit(Sym, 0), rat(1, 3)), (proj(z(2)), rat(-4, 3)), (proj(labels(&[1, 1])), rat(-5, 6))],
        &mut f,
    )?;
    expect_set(
        "a3",
        false,
        2,
        vec![(unit(Sym, 0), rat(1, 16)), (proj(z(3)), rat(15, 16)), (proj(labels(&[1, 0, 1])), rat(3, 16))],
        &mut f,
    )?;
    let mut count = 2;
    for l in 3..=5usize {
        let n = l as i64 + 1;
        expect_set(
            &format!("a{l}"),
            true,
            2,
            vec![
                (unit(Sym, 0), rat(1, n * n)),
                (proj(z(l)), rat(n * n - 1, n * n)),
                (proj(lam(l, &[(1, 1), (l, 1)])), rat(n * n - 4, 4 * n * n)),
                (unit(Alt, 1), rat(-1, 2)),
            ],
            &mut f,
        )?;
        let n = 2 * l as i64 + 1;
        expect_set(
            &format!("b{l}"),
            true,
            2,
            vec![
                (unit(Sym, 0), rat(2, (n - 2) * (n - 2))),
                (proj(z(l)), rat((n - 1) * (n - 4), (n - 2) * (n - 2))),
                (proj(lam(l, &[(1, 2)])), rat(n - 8, 4 * (n - 2))),
                (unit(Sym, 1), rat(-1, n - 2)),
                (unit(Alt, 1), rat(-1, 2)),
            ],
            &mut f,
        )?;
        let c = l - 1;
        let n = c as i64;
        expect_set(
            &format!("c{c}"),
            true,
            2,
            vec![
                (unit(Sym, 0), rat(1, 2 * (n + 1) * (n + 1))),
                (proj(z(c)), rat((2 * n + 1) * (n + 2), 2 * (n + 1) * (n + 1))),
                (proj(lam(c, &[(2, 1)])), rat(n + 4, 4 * (n + 1))),
                (unit(Sym, 1), rat(1, 2 * (n + 1))),
                (unit(Alt, 1), rat(-1, 2)),
            ],
            &mut f,
        )?;
        count += 3;
    }
    for (name, c0, c1) in [("g2", rat(5, 48), rat(35, 48)), ("f4", rat(5, 162), rat(65, 81)), ("e6", rat(1, 48), rat(13, 16))] {
        let rank = data(name).rank();
        expect_set(
            name,
            true,
            2,
            vec![(unit(Sym, 0), c0), (proj(z(rank)), c1), (unit(Sym, 1), rat(-1, 6)), (unit(Alt, 1), rat(-1, 2))],
            &mut f,
        )?;
        count += 1;
    }
    let mut projectors = 0;
    for name in CORPUS.iter().copied().chain(["a5", "b5", "c5", "d5", "d6"]) {
        let t = default_spectrum_table(&data(name)).map_err(|e| e.to_string())?;
        for p in all_projectors(&t).map_err(|e| format!("{name}: {e}"))? {
            projectors += 1;
            if !p.spectral_test(&t) {
                f.push(format!("{name}: projector {} fails", p.label(&t)));
            }
        }
    }
    ensure(f.is_empty(), || f.join("; "))?;
    Ok(format!("{count} coefficient sets exact, {projectors} projectors idempotent and orthogonal"))
}

// ---------------------------------------------------------------------------
// 5. quartic trace by the spectral route against the trace route

fn quartic_consistency() -> Outcome {
    let mut f = Vec::new();
    let sq = |c: Rational| Expr::atom("trF^2").pow(2).scale(&c);
    let named: BTreeMap<&str, Expr> =
        [("f4", sq(rat(5, 108))), ("g2", sq(rat(5, 32))), ("e6", sq(rat(1, 32)))].into_iter().collect();
    let names: Vec<&str> = CORPUS.iter().copied().chain(["a5", "b5", "c5", "d5", "d6"]).collect();
    for name in &names {
        let d = data(name);
        let t = default_spectrum_table(&d).map_err(|e| e.to_string())?;
        let spectral = quartic_adjoint_trace(&d, &t).map_err(|e| format!("{name}: {e}"))?;
        let ctx = TraceContext::new(&d).unwrap();
        let cross = ctx.cross_relation(4).map_err(|e| format!("{name}: {e}"))?;
        let lhs = ctx.eval_expr(&spectral).unwrap();
        if lhs != ctx.eval_expr(&cross.rhs_expr()).unwrap() {
            f.push(format!("{name}: spectral trF^4 differs from the trace route"));
        }
        if lhs != ctx.atom_poly("trF^4").unwrap() {
            f.push(format!("{name}: spectral trF^4 is not trF^4"));
        }
        if let Some(e) = named.get(name) {
            if &spectral != e {
                f.push(format!("{name}: {spectral:?}"));
            }
        }
    }
    ensure(f.is_empty(), || f.join("; "))?;
    Ok(format!("{} algebras agree exactly", names.len()))
}

// ---------------------------------------------------------------------------
// 6. numeric verification with matrices

fn numeric_verification() -> Outcome {
    let algs: Vec<String> = (3..=6)
        .map(|n| format!("su{n}"))
        .chain((5..=9).map(|n| format!("so{n}")))
        .chain([4, 6, 8].map(|n| format!("sp{n}")))
        .collect();
    let (mut worst2, mut worst1) = (0f64, 0f64);
    let mut f = Vec::new();
    for a in &algs {
        let rep = verify_algebra(AlgebraId::parse(a).unwrap(), CLASS2_TOL).map_err(|e| format!("{a}: {e}"))?;
        worst2 = worst2.max(rep.class2_residual());
        worst1 = worst1.max(rep.class1.jacobi);
        if !rep.passed {
            f.push(format!("{a}: class-2 residual {:.2e}", rep.class2_residual()));
        }
        if rep.class1.jacobi >= JACOBI_TOL {
            f.push(format!("{a}: Jacobi residual {:.2e}", rep.class1.jacobi));
        }
    }
    ensure(f.is_empty(), || f.join("; "))?;
    Ok(format!("{} algebras, max class-2 residual {worst2:.1e}, max Jacobi residual {worst1:.1e}", algs.len()))
}

// ---------------------------------------------------------------------------
// 7. property suites

fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn algebra_and_weight(algs: Vec<AlgebraId>, max_label: i64) -> impl Strategy<Value = (AlgebraId, Vec<i64>)> {
    prop::sample::select(algs).prop_flat_map(move |a| (Just(a), prop::collection::vec(0..=max_label, a.rank)))
}

/// Weights of moderate dimension, so that each case stays cheap.
fn small(d: &AlgebraData, w: &Weight, limit: u128) -> Option<u128> {
    let n = dimension(d, w).ok()?;
    (n <= limit).then_some(n)
}

fn suite_square_dims() -> Result<String, String> {
    for id in catalog() {
        let d = algebra_data(id).unwrap();
        let n = dimension(&d, &d.adjoint()).unwrap();
        let s = square_split(&d, &d.adjoint()).unwrap();
        ensure(s.sym.total_dim() == n * (n + 1) / 2 && s.alt.total_dim() == n * (n - 1) / 2, || format!("{id} adjoint"))?;
    }
    runner(96)
        .run(&algebra_and_weight(catalog(), 1), |(id, w)| {
            let d = algebra_data(id).unwrap();
            let w = Weight(w);
            let Some(n) = small(&d, &w, 300) else { return Ok(()) };
            let s = square_split(&d, &w).unwrap();
            prop_assert_eq!(s.sym.total_dim(), n * (n + 1) / 2, "{} {:?}", id, w.0);
            prop_assert_eq!(s.alt.total_dim(), n * (n - 1) / 2, "{} {:?}", id, w.0);
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok("(a) square dimensions".into())
}

fn suite_alt_spectrum() -> Result<String, String> {
    let allowed = [r(0), rat(-1, 2)];
    for id in catalog() {
        let d = algebra_data(id).unwrap();
        for t in adjoint_square_table(&d).unwrap() {
            ensure(t.space == Sym || allowed.contains(&t.ell), || format!("{id} {:?} L = {}", t.weight.0, t.ell))?;
        }
    }
    Ok("(b) antisymmetric L spectrum".into())
}

fn suite_weyl_freudenthal() -> Result<String, String> {
    let mut reps = 0;
    for (id, rows) in all_tables() {
        let d = algebra_data(id).unwrap();
        for p in rows.iter().flat_map(|r| &r.parts) {
            let total: u128 = weight_system(&d, p).unwrap().iter().map(|(_, m)| m as u128).sum();
            ensure(total == dimension(&d, p).unwrap(), || format!("{id} {:?}", p.0))?;
            reps += 1;
        }
    }
    runner(128)
        .run(&algebra_and_weight(catalog(), 2), |(id, w)| {
            let d = algebra_data(id).unwrap();
            let w = Weight(w);
            let Some(n) = small(&d, &w, 4000) else { return Ok(()) };
            let total: u128 = weight_system(&d, &w).unwrap().iter().map(|(_, m)| m as u128).sum();
            prop_assert_eq!(total, n, "{} {:?}", id, w.0);
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok(format!("(c) Weyl = Freudenthal on {reps} table irreps"))
}

/// γ ↦ Mγ with M a product of elementary integer row operations.
fn unimodular(rank: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec((0..rank, 0..rank, -2i64..=2), 1..8).prop_map(move |ops| {
        let mut m: Vec<Vec<i64>> = (0..rank).map(|i| (0..rank).map(|j| i64::from(i == j)).collect()).collect();
        for (i, j, c) in ops {
            if i != j {
                for k in 0..rank {
                    m[i][k] += c * m[j][k];
                }
            } else if c < 0 {
                m.swap(i, (i + 1) % rank);
            }
        }
        m
    })
}

fn determinant(m: &[Vec<i64>]) -> Rational {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.iter().map(|r| r.iter().map(|&x| rat(x, 1)).collect()).collect();
    let mut det = r(1);
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| a[i][c] != r(0)) else { return r(0) };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c].clone();
        for i in c + 1..n {
            let f = a[i][c].clone() / a[c][c].clone();
            for k in c..n {
                let t = a[c][k].clone() * f.clone();
                a[i][k] -= t;
            }
        }
    }
    det
}

fn suite_basis_invariance() -> Result<String, String> {
    let lines = golden_lines();
    let mut checks = 0;
    for alg in CORPUS {
        let base = context(alg);
        let mine: Vec<_> = lines.iter().filter(|g| g.alg == alg && !g.misprint).collect();
        let def_degree = if alg.starts_with('e') { 8 } else { 10 };
        let reference = base.defining_relation(def_degree).unwrap().rhs_expr();
        let mut r5 = runner(5);
        r5.run(&unimodular(base.rank()), |m| {
            let det = determinant(&m);
            prop_assert!(det == r(1) || det == r(-1), "det {}", det);
            let ctx = base.with_basis_change(&m).unwrap();
            for g in &mine {
                prop_assert!(ctx.holds(&g.lhs, &g.rhs).unwrap(), "{} {} under {:?}", g.alg, g.text, m);
            }
            prop_assert_eq!(ctx.defining_relation(def_degree).unwrap().rhs_expr(), reference.clone());
            Ok(())
        })
        .map_err(|e| format!("{alg}: {e}"))?;
        checks += 5 * (mine.len() + 1);
    }
    Ok(format!("(d) {checks} relation checks under unimodular changes"))
}

/// Σ m·⟨w,x⟩^k over the weights of an irrep, exactly.
fn odd_moment(d: &AlgebraData, w: &Weight, x: &[i64], k: u32) -> i128 {
    weight_system(d, w)
        .unwrap()
        .iter()
        .map(|(mu, m)| {
            let s: i128 = mu.0.iter().zip(x).map(|(a, b)| (*a as i128) * (*b as i128)).sum();
            m as i128 * s.pow(k)
        })
        .sum()
}

/// Diagram automorphism sending an irrep to its conjugate, as a label permutation.
fn conjugation(id: AlgebraId) -> Vec<usize> {
    let l = id.rank;
    match id.series {
        Series::A => (0..l).rev().collect(),
        Series::D if l % 2 == 1 => (0..l - 2).chain([l - 1, l - 2]).collect(),
        Series::E if l == 6 => vec![4, 3, 2, 1, 0, 5],
        _ => (0..l).collect(),
    }
}

fn suite_odd_power_sums() -> Result<String, String> {
    for id in catalog() {
        let ctx = TraceContext::new(&algebra_data(id).unwrap()).unwrap();
        for k in [1, 3, 5, 7] {
            ensure(ctx.power_sum(RepKind::Adjoint, k).unwrap().is_zero(), || format!("{id} adjoint p{k}"))?;
        }
    }
    let e6 = context("e6");
    for k in [1, 3] {
        ensure(e6.power_sum(RepKind::Defining, k).unwrap().is_zero(), || format!("e6 27 p{k}"))?;
    }
    ensure(!e6.power_sum(RepKind::Defining, 5).unwrap().is_zero(), || "e6 27 p5 vanishes".into())?;
    let algs = catalog();
    let strat = algebra_and_weight(algs, 2)
        .prop_flat_map(|(id, w)| (Just(id), Just(w), prop::collection::vec(-3i64..=3, id.rank)));
    runner(128)
        .run(&strat, |(id, w, x)| {
            let d = algebra_data(id).unwrap();
            let perm = conjugation(id);
            let sc: Vec<i64> = (0..w.len()).map(|i| w[i].max(w[perm[i]])).collect();
            let w = Weight(sc);
            if small(&d, &w, 3000).is_none() {
                return Ok(());
            }
            for k in [1, 3, 5] {
                prop_assert_eq!(odd_moment(&d, &w, &x, k), 0, "{} {:?} p{}", id, w.0, k);
            }
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok("(e) odd power sums".into())
}

fn suite_newton() -> Result<String, String> {
    let mut n = 0;
    for alg in ["a1", "a2"] {
        let base = context(alg);
        let cases = [
            (RepKind::Defining, BasisKind::Defining, "chiA"),
            (RepKind::Adjoint, BasisKind::Defining, "chiF"),
            (RepKind::Adjoint, BasisKind::AdjointSelf, "chiF"),
        ];
        runner(4)
            .run(&unimodular(base.rank()), |m| {
                let ctx = base.with_basis_change(&m).unwrap();
                for (rep, basis, atom) in cases {
                    let cp = ctx.char_poly(rep, basis, 14).unwrap();
                    prop_assert!(ctx.holds(&Expr::atom(atom), &cp.rhs_expr()).unwrap(), "{} {:?} {:?}", alg, rep, basis);
                }
                Ok(())
            })
            .map_err(|e| format!("{alg}: {e}"))?;
        n += 1;
    }
    Ok(format!("(f) Newton vs product on {n} algebras"))
}

fn property_suites() -> Outcome {
    let suites: [fn() -> Result<String, String>; 6] = [
        suite_square_dims,
        suite_alt_spectrum,
        suite_weyl_freudenthal,
        suite_basis_invariance,
        suite_odd_power_sums,
        suite_newton,
    ];
    let mut done = Vec::new();
    let mut f = Vec::new();
    for s in suites {
        match catch_unwind(s) {
            Ok(Ok(m)) => done.push(m),
            Ok(Err(e)) => f.push(e),
            Err(p) => f.push(panic_text(p)),
        }
    }
    ensure(f.is_empty(), || f.join("; "))?;
    Ok(done.join(", "))
}

// ---------------------------------------------------------------------------
// 8. performance

fn regenerate(alg: &str) -> Result<usize, String> {
    let d = data(alg);
    let ctx = TraceContext::new(&d).unwrap();
    let mut n = 0;
    let mut keep = |r: lietrace_core::Result<()>| match r {
        Ok(()) => {
            n += 1;
            Ok(())
        }
        Err(Error::NoRelation(_)) => Ok(()),
        Err(e) => Err(format!("{alg}: {e}")),
    };
    for k in 2..=14 {
        keep(ctx.defining_relation(k).map(drop))?;
        if k % 2 == 0 {
            keep(ctx.cross_relation(k).map(drop))?;
            if k >= 4 {
                keep(ctx.self_relation_adjoint(k).map(drop))?;
            }
        }
    }
    for (rep, basis) in [
        (RepKind::Defining, BasisKind::Defining),
        (RepKind::Adjoint, BasisKind::Defining),
        (RepKind::Adjoint, BasisKind::AdjointSelf),
    ] {
        if ctx.dim(rep).unwrap() <= 14 {
            keep(ctx.char_poly(rep, basis, 14).map(drop))?;
        }
    }
    Ok(n)
}

fn performance() -> Outcome {
    let t = Instant::now();
    let mut items = 0;
    for alg in CORPUS {
        items += regenerate(alg)?;
    }
    let corpus = t.elapsed();
    let t = Instant::now();
    let ctx = context("e6");
    for k in 2..=13 {
        ctx.power_sum(RepKind::Adjoint, k).unwrap();
    }
    let e6 = t.elapsed();
    ensure(corpus < CORPUS_BUDGET && e6 < E6_POWER_SUM_BUDGET, || {
        format!("corpus {corpus:.2?} (budget {CORPUS_BUDGET:?}), e6 power sums {e6:.2?} (budget {E6_POWER_SUM_BUDGET:?})")
    })?;
    Ok(format!("corpus regeneration ({items} items) in {corpus:.2?}, e6 adjoint power sums to 13 in {e6:.2?}"))
}

// ---------------------------------------------------------------------------

fn panic_text(p: Box<dyn std::any::Any + Send>) -> String {
    p.downcast_ref::<String>()
        .cloned()
        .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
        .unwrap_or_else(|| "panic".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("published relations", published_relations),
        ("a4 adjoint-self non-relations", a4_non_relations),
        ("adjoint-square tables", adjoint_square_tables),
        ("spectral identities", spectral_identities),
        ("quartic trace cross-check", quartic_consistency),
        ("numeric tensor identities", numeric_verification),
        ("property suites", property_suites),
        ("performance budget", performance),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| Err(panic_text(p)));
        let el = t.elapsed();
        match outcome {
            Ok(m) => println!("criterion {} {name}: PASS  {m} [{el:.2?}]", i + 1),
            Err(m) => {
                failed += 1;
                println!("criterion {} {name}: FAIL  {m} [{el:.2?}]", i + 1)
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
