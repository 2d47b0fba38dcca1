#![allow(dead_code)]

use std::collections::BTreeSet;

use lietrace_core::cartan::{algebra_data, AlgebraId};
use lietrace_core::traceid::expr::{parse_equation, Expr};
use lietrace_core::traceid::{BasisKind, RepKind, TraceContext};

pub const GOLDEN: &str = include_str!("../data/relations.golden");

#[derive(Clone, Debug)]
pub struct GoldenLine {
    pub alg: String,
    pub kind: String,
    pub misprint: bool,
    pub text: String,
    pub lhs: Expr,
    pub rhs: Expr,
}

pub fn golden_lines() -> Vec<GoldenLine> {
    GOLDEN
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let mut it = l.splitn(3, ' ');
            let alg = it.next().unwrap().to_string();
            let kind = it.next().unwrap().to_string();
            let text = it.next().unwrap().to_string();
            let (lhs, rhs) = parse_equation(&text).unwrap_or_else(|e| panic!("{l}: {e}"));
            let misprint = kind.ends_with('~');
            GoldenLine { alg, kind: kind.trim_end_matches('~').to_string(), misprint, text, lhs, rhs }
        })
        .collect()
}

pub fn context(alg: &str) -> TraceContext {
    TraceContext::new(&algebra_data(AlgebraId::parse(alg).unwrap()).unwrap()).unwrap()
}

fn degree_of(lhs: &Expr) -> u32 {
    let (m, _) = lhs.terms.iter().next().unwrap();
    let (name, _) = m.iter().next().unwrap();
    name.split('^').nth(1).unwrap().parse().unwrap()
}

fn atoms(e: &Expr) -> BTreeSet<String> {
    e.terms.keys().flat_map(|m| m.keys().cloned()).collect()
}

/// Outcome of checking one golden line against the engine.
#[derive(Debug)]
pub struct Verdict {
    /// Substituting the weights makes both sides agree.
    pub holds: bool,
    /// Engine output equals the listed right-hand side, when that comparison applies.
    pub matches_engine: Option<bool>,
}

pub fn check_line(ctx: &TraceContext, g: &GoldenLine) -> Verdict {
    let holds = ctx.holds(&g.lhs, &g.rhs).unwrap();
    let engine: Option<(Expr, bool, BTreeSet<String>)> = match g.kind.as_str() {
        "def" | "cross" | "self" => {
            let k = degree_of(&g.lhs);
            let rel = match g.kind.as_str() {
                "def" => ctx.defining_relation(k),
                "cross" => ctx.cross_relation(k),
                _ => ctx.self_relation_adjoint(k),
            }
            .unwrap();
            let (basis, cap) = if g.kind == "self" {
                (BasisKind::AdjointSelf, k.saturating_sub(2))
            } else {
                (BasisKind::Defining, k)
            };
            let names = ctx.generators(basis, cap).unwrap().into_iter().map(|g| g.name).collect();
            Some((rel.rhs_expr(), rel.unique, names))
        }
        "chi-def" | "chi-adj-def" | "chi-adj-self" => {
            let (rep, basis) = match g.kind.as_str() {
                "chi-def" => (RepKind::Defining, BasisKind::Defining),
                "chi-adj-def" => (RepKind::Adjoint, BasisKind::Defining),
                _ => (RepKind::Adjoint, BasisKind::AdjointSelf),
            };
            let cp = ctx.char_poly(rep, basis, 14).unwrap();
            let names = ctx.generators(basis, cp.degree).unwrap().into_iter().map(|g| g.name).collect();
            Some((cp.rhs_expr(), cp.unique, names))
        }
        other => panic!("unknown kind {other}"),
    };
    let matches_engine = engine.and_then(|(e, unique, mut names)| {
        names.insert("t".into());
        names.insert("detA".into());
        (unique && atoms(&g.rhs).is_subset(&names)).then(|| e == g.rhs)
    });
    Verdict { holds, matches_engine }
}
