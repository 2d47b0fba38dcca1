//! Argument handling and output formatting for the `lietrace` binary.
//!
//! [`run`] never touches the process streams; it returns what would be written
//! together with the exit code (0 success, 1 domain error, 2 usage error).

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use lietrace_core::cartan::AlgebraData;
use lietrace_core::matreal::{verify_algebra, AlgebraReport};
use lietrace_core::spectral::{
    all_projectors, default_spectrum_table, family_conventions, fold_antisymmetric, index_identity, projector_index,
    quartic_adjoint_trace, reduce_l_power, render_index_sum, FamilyConventions, OpTerm, SpectralIdentity, SpectrumTable,
};
use lietrace_core::traceid::{expr_terms, render_terms};
use lietrace_core::{
    algebra_data, adjoint_square_table, dimension, rat, rat_str, spectral, tensor_decompose, traceid, weight_system,
    AlgebraId, BasisKind, Error, RepKind, TraceContext, Weight,
};

/// Degree ceiling used when neither a flag nor the environment sets one.
pub const DEFAULT_MAX_DEGREE: u32 = 14;
/// Environment variable overriding [`DEFAULT_MAX_DEGREE`].
pub const MAX_DEGREE_ENV: &str = "LIETRACE_MAX_DEGREE";

#[derive(Parser, Debug)]
#[command(name = "lietrace", version, about = "Trace identities and adjoint-square spectra of simple Lie algebras")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum RepArg {
    Defining,
    Adjoint,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BasisArg {
    Defining,
    #[value(name = "self")]
    SelfAdj,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cartan matrix, primitive degrees, Weyl vector and highest root
    Info { algebra: String },
    /// Dimension and Casimir of an irrep, optionally with its weight system
    Rep {
        algebra: String,
        /// Dynkin labels such as 1,0,1
        #[arg(value_parser = parse_labels, allow_hyphen_values = true)]
        labels: Weight,
        #[arg(long)]
        weights: bool,
    },
    /// Decomposition of a tensor product of two irreps
    Tensor {
        algebra: String,
        #[arg(value_parser = parse_labels, allow_hyphen_values = true)]
        l1: Weight,
        #[arg(value_parser = parse_labels, allow_hyphen_values = true)]
        l2: Weight,
    },
    /// Irreps of the symmetric and antisymmetric adjoint square with C and L
    Adjsq { algebra: String },
    /// Relations among power traces up to a degree
    Traces {
        algebra: String,
        #[arg(long, value_enum, default_value_t = RepArg::Defining)]
        rep: RepArg,
        #[arg(long, value_enum, default_value_t = BasisArg::Defining)]
        basis: BasisArg,
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Characteristic polynomial with coefficients in basis invariants
    Charpoly {
        algebra: String,
        #[arg(long, value_enum, default_value_t = RepArg::Defining)]
        rep: RepArg,
        #[arg(long, value_enum, default_value_t = BasisArg::Defining)]
        basis: BasisArg,
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Spectral identities for L and the projectors of the adjoint square
    Projectors { algebra: String },
    /// Numeric checks against explicit matrices (classical families)
    Verify {
        algebra: String,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
}

fn parse_labels(s: &str) -> Result<Weight, String> {
    let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
    inner
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<i64>().map_err(|_| format!("bad Dynkin label {t:?}")))
        .collect::<Result<Vec<_>, _>>()
        .and_then(|v| if v.is_empty() { Err("empty label list".into()) } else { Ok(Weight(v)) })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Res<T> = std::result::Result<T, Failure>;

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code() as u8;
            let text = e.render().to_string();
            return if code == 0 {
                Output { code, stdout: text, stderr: String::new() }
            } else {
                Output { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(&cli) {
        Ok(stdout) => Output { code: 0, stdout, stderr: String::new() },
        Err(Failure::Usage(m)) => Output { code: 2, stdout: String::new(), stderr: format!("error: {m}\n") },
        Err(Failure::Domain(e)) => Output { code: 1, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn dispatch(cli: &Cli) -> Res<String> {
    let f = cli.format;
    match &cli.command {
        Command::Info { algebra } => info(&load(algebra)?, f),
        Command::Rep { algebra, labels, weights } => rep(&load(algebra)?, labels, *weights, f),
        Command::Tensor { algebra, l1, l2 } => tensor(&load(algebra)?, l1, l2, f),
        Command::Adjsq { algebra } => adjsq(&load(algebra)?, f),
        Command::Traces { algebra, rep, basis, max_degree } => {
            let k = match max_degree {
                Some(k) => *k,
                None => ceiling()?,
            };
            traces(&load(algebra)?, *rep, *basis, k, f)
        }
        Command::Charpoly { algebra, rep, basis, max_degree } => {
            let k = match max_degree {
                Some(k) => *k,
                None => ceiling()?,
            };
            charpoly(&load(algebra)?, *rep, *basis, k, f)
        }
        Command::Projectors { algebra } => projectors(&load(algebra)?, f),
        Command::Verify { algebra, tol } => verify(&load(algebra)?, *tol, f),
    }
}

fn load(name: &str) -> Res<AlgebraData> {
    Ok(algebra_data(AlgebraId::parse(name)?)?)
}

fn ceiling() -> Res<u32> {
    match std::env::var(MAX_DEGREE_ENV) {
        Ok(v) => v
            .trim()
            .parse::<u32>()
            .ok()
            .filter(|k| *k > 0)
            .ok_or_else(|| Failure::Usage(format!("{MAX_DEGREE_ENV} must be a positive integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_MAX_DEGREE),
    }
}

fn check_rank(data: &AlgebraData, w: &Weight) -> Res<()> {
    if w.0.len() != data.rank() {
        return Err(Failure::Usage(format!("{} needs {} Dynkin labels, got {}", data.id, data.rank(), w.0.len())));
    }
    Ok(())
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values always serialize");
    s.push('\n');
    s
}

fn dim_json(d: u128) -> Value {
    u64::try_from(d).map_or_else(|_| json!(d.to_string()), |x| json!(x))
}

fn latex_weight(w: &Weight) -> String {
    format!("({})", w.0.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

fn latex_rat(s: &str) -> String {
    match s.split_once('/') {
        Some((p, q)) => {
            let (sign, p) = p.strip_prefix('-').map_or(("", p), |p| ("-", p));
            format!("{sign}\\frac{{{p}}}{{{q}}}")
        }
        None => s.to_string(),
    }
}

fn info(data: &AlgebraData, f: Format) -> Res<String> {
    let adj_dim = dimension(data, &data.adjoint())?;
    let defining = match data.defining() {
        Some(w) => Some((dimension(data, &w)?, w)),
        None => None,
    };
    let degrees: Vec<String> = data.primitive_degrees.iter().map(|d| d.to_string()).collect();
    Ok(match f {
        Format::Json => pretty(&json!({
            "algebra": data.id.to_string(),
            "rank": data.rank(),
            "cartan_matrix": data.cartan_matrix,
            "primitive_degrees": data.primitive_degrees,
            "weyl_vector": data.weyl_vector,
            "highest_root": data.highest_root,
            "adjoint_dim": dim_json(adj_dim),
            "defining": defining.as_ref().map(|(d, w)| json!({"weight": w, "dim": dim_json(*d)})),
            "positive_roots": data.positive_roots.len(),
        })),
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "algebra: {} (rank {})", data.id, data.rank()).unwrap();
            writeln!(s, "cartan matrix:").unwrap();
            for row in &data.cartan_matrix {
                let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
                writeln!(s, " {}", cells.join("")).unwrap();
            }
            writeln!(s, "primitive degrees: {}", degrees.join(", ")).unwrap();
            writeln!(s, "weyl vector: {}", data.weyl_vector).unwrap();
            writeln!(s, "highest root: {}", data.highest_root).unwrap();
            writeln!(s, "positive roots: {}", data.positive_roots.len()).unwrap();
            writeln!(s, "adjoint dim: {adj_dim}").unwrap();
            if let Some((d, w)) = &defining {
                writeln!(s, "defining irrep: {w} dim {d}").unwrap();
            }
            s
        }
        Format::Latex => {
            let rows: Vec<String> = data
                .cartan_matrix
                .iter()
                .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" & "))
                .collect();
            let mut s = String::new();
            writeln!(s, "% {}", data.id).unwrap();
            writeln!(s, "A = \\pmatrix{{{}}}", rows.join("\\cr ")).unwrap();
            writeln!(s, "\\text{{degrees}}\\ {}", degrees.join(", ")).unwrap();
            writeln!(s, "\\delta = {},\\quad \\theta = {}", latex_weight(&data.weyl_vector), latex_weight(&data.highest_root))
                .unwrap();
            s
        }
    })
}

fn rep(data: &AlgebraData, hw: &Weight, weights: bool, f: Format) -> Res<String> {
    check_rank(data, hw)?;
    let dim = dimension(data, hw)?;
    let c = data.casimir(hw)?;
    let ws = if weights {
        let sys = weight_system(data, hw)?;
        let mut v: Vec<(Weight, u64, String)> =
            sys.iter().map(|(w, m)| (w.clone(), m, rat_str(&data.level(&hw.sub(w))))).collect();
        v.sort_by(|a, b| data.level(&hw.sub(&a.0)).cmp(&data.level(&hw.sub(&b.0))).then_with(|| b.0.cmp(&a.0)));
        Some(v)
    } else {
        None
    };
    Ok(match f {
        Format::Json => {
            let mut o = json!({
                "algebra": data.id.to_string(),
                "highest_weight": hw,
                "dim": dim_json(dim),
                "C": rat_str(&c),
            });
            if let Some(v) = &ws {
                o["weights"] =
                    v.iter().map(|(w, m, l)| json!({"weight": w, "multiplicity": m, "level": l})).collect();
            }
            pretty(&o)
        }
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "irrep {hw} of {}", data.id).unwrap();
            writeln!(s, "dim: {dim}").unwrap();
            writeln!(s, "C: {}", rat_str(&c)).unwrap();
            if let Some(v) = &ws {
                writeln!(s, "weights (level, weight, multiplicity):").unwrap();
                for (w, m, l) in v {
                    writeln!(s, "  {l:>3}  {w}  {m}").unwrap();
                }
            }
            s
        }
        Format::Latex => {
            let mut s = String::new();
            writeln!(s, "\\dim V{} = {dim},\\quad C = {}", latex_weight(hw), latex_rat(&rat_str(&c))).unwrap();
            if let Some(v) = &ws {
                for (w, m, _) in v {
                    writeln!(s, "{} & {m} \\\\", latex_weight(w)).unwrap();
                }
            }
            s
        }
    })
}

fn tensor(data: &AlgebraData, a: &Weight, b: &Weight, f: Format) -> Res<String> {
    check_rank(data, a)?;
    check_rank(data, b)?;
    let dec = tensor_decompose(data, a, b)?;
    Ok(match f {
        Format::Json => pretty(&json!({
            "algebra": data.id.to_string(),
            "factors": [a, b],
            "total_dim": dim_json(dec.total_dim()),
            "parts": dec.parts.iter().map(|p| json!({
                "weight": p.weight, "dim": dim_json(p.dim), "multiplicity": p.multiplicity
            })).collect::<Vec<_>>(),
        })),
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "{a} x {b} of {} (dim {})", data.id, dec.total_dim()).unwrap();
            for p in &dec.parts {
                let m = if p.multiplicity > 1 { format!("  x{}", p.multiplicity) } else { String::new() };
                writeln!(s, "  {:>8}  {}{m}", p.dim, p.weight).unwrap();
            }
            s
        }
        Format::Latex => {
            let parts: Vec<String> = dec
                .parts
                .iter()
                .map(|p| {
                    let m = if p.multiplicity > 1 { format!("{}\\,", p.multiplicity) } else { String::new() };
                    format!("{m}V{}", latex_weight(&p.weight))
                })
                .collect();
            format!("V{}\\otimes V{} = {}\n", latex_weight(a), latex_weight(b), parts.join(" \\oplus "))
        }
    })
}

fn adjsq(data: &AlgebraData, f: Format) -> Res<String> {
    let rows = adjoint_square_table(data)?;
    Ok(match f {
        Format::Json => pretty(&json!({
            "algebra": data.id.to_string(),
            "adjoint": data.adjoint(),
            "rows": rows.iter().map(|r| json!({
                "weight": r.weight,
                "space": r.space.to_string(),
                "dim": dim_json(r.dim),
                "C": rat_str(&r.casimir),
                "L": rat_str(&r.ell),
            })).collect::<Vec<_>>(),
        })),
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "adjoint square of {} (adjoint {})", data.id, data.adjoint()).unwrap();
            writeln!(s, "{:<5} {:<20} {:>8} {:>8} {:>8}", "space", "weight", "dim", "C", "L").unwrap();
            for r in &rows {
                writeln!(
                    s,
                    "{:<5} {:<20} {:>8} {:>8} {:>8}",
                    r.space.to_string(),
                    r.weight.to_string(),
                    r.dim,
                    rat_str(&r.casimir),
                    rat_str(&r.ell)
                )
                .unwrap();
            }
            s
        }
        Format::Latex => {
            let mut s = String::from("\\begin{tabular}{lrrr}\n");
            for r in &rows {
                writeln!(
                    s,
                    "${}_{}$ & {} & ${}$ & ${}$ \\\\",
                    latex_weight(&r.weight),
                    if r.space == lietrace_core::Space::Sym { "S" } else { "A" },
                    r.dim,
                    latex_rat(&rat_str(&r.casimir)),
                    latex_rat(&rat_str(&r.ell))
                )
                .unwrap();
            }
            s.push_str("\\end{tabular}\n");
            s
        }
    })
}

fn rep_kind(r: RepArg) -> RepKind {
    match r {
        RepArg::Defining => RepKind::Defining,
        RepArg::Adjoint => RepKind::Adjoint,
    }
}

fn basis_kind(b: BasisArg) -> BasisKind {
    match b {
        BasisArg::Defining => BasisKind::Defining,
        BasisArg::SelfAdj => BasisKind::AdjointSelf,
    }
}

fn trace_style(f: Format) -> traceid::Style {
    if f == Format::Latex {
        traceid::Style::Latex
    } else {
        traceid::Style::Text
    }
}

fn traces(data: &AlgebraData, rep: RepArg, basis: BasisArg, max_degree: u32, f: Format) -> Res<String> {
    let ctx = TraceContext::new(data)?;
    let (rk, bk) = (rep_kind(rep), basis_kind(basis));
    if rk == RepKind::Defining && bk == BasisKind::AdjointSelf {
        return Err(Error::UnsupportedFamily("defining traces in the adjoint basis".into()).into());
    }
    let prefix = if rk == RepKind::Defining { "trA" } else { "trF" };
    let gens: Vec<String> = ctx.generators(bk, max_degree)?.into_iter().map(|g| g.name).collect();
    let start = if bk == BasisKind::AdjointSelf { 4 } else { 2 };
    let mut found = Vec::new();
    for k in start..=max_degree {
        let target = format!("{prefix}^{k}");
        if bk == BasisKind::Defining && gens.contains(&target) {
            continue;
        }
        if ctx.power_sum(rk, k)?.is_zero() {
            continue;
        }
        let r = match (rk, bk) {
            (RepKind::Defining, _) => ctx.defining_relation(k),
            (RepKind::Adjoint, BasisKind::Defining) => ctx.cross_relation(k),
            (RepKind::Adjoint, BasisKind::AdjointSelf) => ctx.self_relation_adjoint(k),
        };
        match r {
            Ok(rel) => found.push((k, target, Some(rel))),
            Err(Error::NoRelation(_)) => found.push((k, target, None)),
            Err(e) => return Err(e.into()),
        }
    }
    let rep_name = if rk == RepKind::Defining { "defining" } else { "adjoint" };
    let basis_name = if bk == BasisKind::Defining { "defining" } else { "self" };
    Ok(match f {
        Format::Json => pretty(&json!({
            "algebra": data.id.to_string(),
            "rep": rep_name,
            "basis": basis_name,
            "max_degree": max_degree,
            "generators": gens,
            "relations": found.iter().map(|(k, t, r)| json!({
                "degree": k,
                "target": t,
                "relation": r.as_ref().map(|r| r.to_json()),
            })).collect::<Vec<_>>(),
        })),
        Format::Text | Format::Latex => {
            let style = trace_style(f);
            let mut s = String::new();
            let lead = if f == Format::Latex { "% " } else { "# " };
            writeln!(s, "{lead}{}: {rep_name} traces in the {basis_name} basis [{}]", data.id, gens.join(", ")).unwrap();
            for (_, t, r) in &found {
                match r {
                    Some(r) => {
                        let note = if r.unique { String::new() } else { format!("  (kernel dimension {})", r.kernel_dim) };
                        let end = if f == Format::Latex { " \\\\" } else { "" };
                        writeln!(s, "{}{end}{note}", r.render(style)).unwrap();
                    }
                    None => writeln!(s, "{lead}{t}: no relation").unwrap(),
                }
            }
            s
        }
    })
}

fn charpoly(data: &AlgebraData, rep: RepArg, basis: BasisArg, max_degree: u32, f: Format) -> Res<String> {
    let ctx = TraceContext::new(data)?;
    let cp = ctx.char_poly(rep_kind(rep), basis_kind(basis), max_degree)?;
    Ok(match f {
        Format::Json => {
            let mut v = cp.to_json();
            v["algebra"] = json!(data.id.to_string());
            pretty(&v)
        }
        _ => {
            let note = if cp.unique { "" } else { "  (coefficients not unique)" };
            format!("{}{note}\n", cp.render(trace_style(f)))
        }
    })
}

fn spectral_style(f: Format) -> spectral::Style {
    if f == Format::Latex {
        spectral::Style::Latex
    } else {
        spectral::Style::Text
    }
}

struct SpectralReport {
    table: SpectrumTable,
    conv: Option<FamilyConventions>,
    identities: Vec<SpectralIdentity>,
    quartic: Option<String>,
}

fn spectral_report(data: &AlgebraData) -> Res<SpectralReport> {
    let table = default_spectrum_table(data)?;
    let conv = family_conventions(data).ok();
    let sym = reduce_l_power(&table)?;
    let full = fold_antisymmetric(&sym, &table)?;
    let quartic = quartic_adjoint_trace(data, &table)
        .ok()
        .map(|e| format!("trF^4 = {}", render_terms(&expr_terms(&e), traceid::Style::Text)));
    Ok(SpectralReport { table, conv, identities: vec![sym, full], quartic })
}

fn projectors(data: &AlgebraData, f: Format) -> Res<String> {
    let rep = spectral_report(data)?;
    let (table, conv) = (&rep.table, rep.conv.as_ref());
    let style = spectral_style(f);
    let projs = all_projectors(table)?;
    let index_of_identity = |id: &SpectralIdentity| -> Option<String> {
        conv.and_then(|c| index_identity(id, table, c).ok()).map(|ix| ix.render(style))
    };
    let index_of_projector = |p| -> Option<String> {
        conv.and_then(|c| projector_index(p, table, c).ok().map(|v| render_index_sum(&v, c, style)))
    };
    Ok(match f {
        Format::Json => pretty(&json!({
            "algebra": data.id.to_string(),
            "spectrum": table.rows.iter().map(|r| json!({
                "label": r.label,
                "weight": r.weight,
                "space": r.space.to_string(),
                "dim": dim_json(r.dim),
                "C": rat_str(&r.casimir),
                "L": rat_str(&r.ell),
                "known": r.known,
            })).collect::<Vec<_>>(),
            "identities": rep.identities.iter().map(|id| json!({
                "operator": id.to_json(table),
                "text": id.render(table, spectral::Style::Text),
                "index": index_of_identity(id),
            })).collect::<Vec<_>>(),
            "projectors": projs.iter().map(|p| {
                let mut v = p.to_json(table);
                v["text"] = json!(p.render(table, spectral::Style::Text));
                v["index"] = json!(index_of_projector(p));
                v
            }).collect::<Vec<_>>(),
            "quartic_trace": rep.quartic,
        })),
        Format::Text | Format::Latex => {
            let lead = if f == Format::Latex { "% " } else { "# " };
            let mut s = String::new();
            writeln!(s, "{lead}{}: adjoint square spectrum, L = C/2 - 1", data.id).unwrap();
            for r in &table.rows {
                writeln!(
                    s,
                    "{lead}  {:<10} {:<5} {:<16} dim {:<8} L {:<7}{}",
                    r.label,
                    r.space.to_string(),
                    r.weight.to_string(),
                    r.dim,
                    rat_str(&r.ell),
                    if r.known { " known" } else { "" }
                )
                .unwrap();
            }
            let end = if f == Format::Latex { " \\\\" } else { "" };
            for id in &rep.identities {
                writeln!(s, "{}{end}", id.render(table, style)).unwrap();
                if let Some(ix) = index_of_identity(id) {
                    writeln!(s, "  {ix}{end}").unwrap();
                }
            }
            for p in &projs {
                let known = matches!(p.terms.as_slice(), [(OpTerm::Projector(_), c)] if *c == rat(1, 1));
                let ix = index_of_projector(p);
                match (known, ix) {
                    (true, Some(ix)) => {
                        let lhs = p.render(table, style);
                        let lhs = lhs.split(" = ").next().unwrap_or_default();
                        writeln!(s, "{lhs} = {ix}{end}").unwrap();
                    }
                    (_, ix) => {
                        writeln!(s, "{}{end}", p.render(table, style)).unwrap();
                        if let Some(ix) = ix {
                            writeln!(s, "  = {ix}{end}").unwrap();
                        }
                    }
                }
            }
            if let Some(q) = &rep.quartic {
                writeln!(s, "{lead}{q}").unwrap();
            }
            s
        }
    })
}

fn verify(data: &AlgebraData, tol: f64, f: Format) -> Res<String> {
    let r: AlgebraReport = verify_algebra(data.id, tol)?;
    let out = match f {
        Format::Json => pretty(&serde_json::to_value(&r).expect("report serializes")),
        _ => {
            let mut s = String::new();
            let lead = if f == Format::Latex { "% " } else { "" };
            writeln!(s, "{lead}{} as {}({}), adjoint dim {}, tolerance {:e}", r.algebra, r.family, r.n, r.dim, tol).unwrap();
            writeln!(s, "{lead}basis defect      {:.3e}", r.basis_defect).unwrap();
            writeln!(s, "{lead}killing residual  {:.3e}", r.killing_residual).unwrap();
            writeln!(s, "{lead}symmetry defect   {:.3e}", r.symmetry_defect).unwrap();
            writeln!(s, "{lead}jacobi            {:.3e}", r.class1.jacobi).unwrap();
            if let (Some(m), Some(c)) = (r.class1.mixed, r.class1.cyclic) {
                writeln!(s, "{lead}mixed jacobi      {m:.3e}").unwrap();
                writeln!(s, "{lead}fd cyclic         {c:.3e}").unwrap();
            }
            for c in &r.identities {
                let v = &c.verification;
                let how = if v.exhaustive { "all" } else { "sampled" };
                writeln!(s, "{lead}identity {:.3e} ({how} {} tuples): {}", v.max_residual, v.tuples, c.identity).unwrap();
            }
            writeln!(
                s,
                "{lead}projectors [{}]: products {:.3e}, traces {:.3e}",
                r.projectors.join(", "),
                r.projector_check.product_residual,
                r.projector_check.trace_residual
            )
            .unwrap();
            writeln!(s, "{lead}{}", if r.passed { "PASS" } else { "FAIL" }).unwrap();
            s
        }
    };
    if !r.passed {
        return Err(Failure::Domain(Error::InternalInconsistency(format!(
            "numeric verification failed at tolerance {tol:e}\n{out}"
        ))));
    }
    Ok(out)
}
