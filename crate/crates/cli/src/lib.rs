//! Registry-driven commands behind the `superlie` binary.

pub mod registry;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use superlie::element::AlgebraElement;
use superlie::homology::{homology, HomologyReport, RelationChain, Truncated};
use superlie::presentations::{
    check_relation_set, eval_expr, generated_span, parse_expr, BracketExpr, GenTable, RelationRecord, Status,
    VerificationReport,
};
use superlie::prolong::{
    generated_submodule, is_direct_sum, prolong_step, superdim, DimRow, GradedBasis, ProlongSpec,
};
use thiserror::Error;

pub use registry::{data_dir, Registry};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Engine(#[from] superlie::Error),
}

/// Rows whose class is not a bracket relation.
fn is_bracket_row(r: &RelationRecord) -> bool {
    !r.is_weight()
}

/// Checks every row of a side's relation files.
pub fn cmd_verify(reg: &Registry, id: &str, side: &str) -> Result<VerificationReport, CliError> {
    let alg = reg.algebra(id)?;
    let table = alg.file_table(side)?;
    let recs = alg.relations(side)?;
    Ok(check_relation_set(id, side, &recs, &table, &alg.entry.cartan)?)
}

/// The chain of `lhs − c·rhs` for a row that passed, evaluated with the
/// sign map it passed under.
fn relation_chain(rec: &RelationRecord, status: &Status, table: &GenTable) -> Result<Option<RelationChain>, CliError> {
    let (expr, table) = match status {
        Status::Exact => (rec.difference()?, table.clone()),
        Status::SignMap { flipped } => (rec.difference()?, table.with_signs(flipped)),
        Status::Scalar { c } => {
            let l = parse_expr(&rec.lhs)?;
            let r = parse_expr(&rec.rhs)?;
            (BracketExpr::Sum(vec![l, BracketExpr::Scale(-c, Box::new(r))]), table.clone())
        }
        Status::Failed { .. } => return Ok(None),
    };
    let mut pairs = Vec::new();
    for (c, a, b) in expr.top_brackets()? {
        pairs.push((c, eval_expr(&a, &table)?, eval_expr(&b, &table)?));
    }
    Ok(Some(RelationChain {
        label: format!("{} = {}", rec.lhs, rec.rhs),
        pairs,
    }))
}

/// H₁ and H₂ of the subalgebra generated by one side, through `max`.
pub fn cmd_h2(reg: &Registry, id: &str, side: &str, max: i64) -> Result<HomologyReport, CliError> {
    let alg = reg.algebra(id)?;
    let grading = alg.grading(None)?;
    let table = alg.generators(side)?;
    let gens: Vec<(String, AlgebraElement)> = table
        .names()
        .iter()
        .cloned()
        .zip(table.elements().iter().cloned())
        .collect();
    let t = Truncated::build(&gens, &grading, max)?;
    let recs: Vec<RelationRecord> = alg.relations(side)?.into_iter().filter(is_bracket_row).collect();
    let verified = check_relation_set(id, side, &recs, &table, &[])?;
    let mut chains = Vec::new();
    let mut failed = Vec::new();
    for (rec, row) in recs.iter().zip(&verified.rows) {
        match relation_chain(rec, &row.status, &table)? {
            Some(c) => chains.push(c),
            None => failed.push(format!("{} = {}: fails", rec.lhs, rec.rhs)),
        }
    }
    let mut report = homology(&t, &chains)?;
    report.skipped.extend(failed);
    Ok(report)
}

/// A named `g_0`-submodule of `g_1`.
#[derive(Clone, Debug, Serialize)]
pub struct ModuleRow {
    pub name: String,
    pub generator: String,
    pub even: usize,
    pub odd: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProlongReport {
    pub algebra: String,
    pub grading: String,
    /// Dimensions of `g_−`, `g_0` and the full prolong.
    pub dims: Vec<DimRow>,
    pub negative: DimRow,
    /// Submodules of `g_1` and whether `g_1` is their direct sum.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub modules: Vec<ModuleRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub direct_sum: Option<bool>,
    /// Dimensions of the partial prolong from the registered seed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partial: Option<Vec<DimRow>>,
}

/// Degree-0 part of the algebra generated by every registered generator.
fn generated_zero(gens: &[AlgebraElement], grading: &superlie::grading::Grading, window: i64) -> Result<Vec<AlgebraElement>, CliError> {
    let span = generated_span(gens, grading, window)?;
    Ok(span.get(&0).cloned().unwrap_or_default())
}

/// Prolongs `(g_−, g_0)` inside the ambient realization. `g_−` is the
/// ambient's negative part and `g_0` the degree-0 part generated by the
/// registered generators.
pub fn cmd_prolong(reg: &Registry, id: &str, r: Option<&str>, max: i64) -> Result<ProlongReport, CliError> {
    let alg = reg.algebra(id)?;
    let label = r.unwrap_or(&alg.entry.default_grading).to_string();
    let grading = alg.grading(Some(&label))?;
    let ambient = alg.built.ambient();
    let mut spec = ProlongSpec::standard(ambient, grading.clone(), Vec::new())?;
    let depth = -spec.negative.keys().next().copied().unwrap_or(-1);
    let mut basis = GradedBasis::new();
    for (k, v) in &spec.negative {
        basis.insert(*k, v.clone());
    }
    let mut report = ProlongReport {
        algebra: id.to_string(),
        grading: label,
        dims: Vec::new(),
        negative: DimRow {
            degree: -depth,
            even: 0,
            odd: 0,
        },
        modules: Vec::new(),
        direct_sum: None,
        partial: None,
    };
    let (e, o) = basis.negative_superdim()?;
    report.negative.even = e;
    report.negative.odd = o;
    if max >= 0 {
        spec.zero = generated_zero(&alg.all_generators()?, &grading, 2 * depth)?;
        basis.insert(0, spec.zero.clone());
    }
    for k in 1..=max {
        let c = prolong_step(&spec, k, &basis)?;
        basis.insert(k, c);
    }
    report.dims = basis.dims()?;
    if let (Some(p), Some(g1)) = (&alg.entry.partial, basis.get(1)) {
        let mut parts = Vec::new();
        let mut named: BTreeMap<&str, Vec<AlgebraElement>> = BTreeMap::new();
        for (name, expr) in &p.modules {
            let seed = alg.built.element(None, expr)?;
            let m = generated_submodule(&spec.zero, &[seed])?;
            let (even, odd) = superdim(&m)?;
            report.modules.push(ModuleRow {
                name: name.clone(),
                generator: expr.clone(),
                even,
                odd,
            });
            parts.push(m.clone());
            named.insert(name, m);
        }
        report.direct_sum = Some(is_direct_sum(&parts, g1));
        let mut seed = Vec::new();
        for s in &p.seed {
            seed.extend(
                named
                    .get(s.as_str())
                    .ok_or_else(|| CliError::Usage(format!("unknown seed module `{s}`")))?
                    .iter()
                    .cloned(),
            );
        }
        let partial = spec.clone().with_seed(seed);
        let mut h = partial.base();
        for k in 1..=max {
            let c = superlie::prolong::partial_prolong_step(&partial, k, &h)?;
            h.insert(k, c);
        }
        report.partial = Some(h.dims()?.into_iter().filter(|d| d.degree > 0).collect());
    }
    Ok(report)
}

fn dim_table(out: &mut String, rows: &[DimRow]) {
    let _ = writeln!(out, "  degree  even  odd");
    for d in rows {
        let _ = writeln!(out, "  {:>6}  {:>4}  {:>3}", d.degree, d.even, d.odd);
    }
}

pub fn pretty_verify(r: &VerificationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}: {} exact, {} scalar, {} sign-mapped, {} failed", r.algebra, r.side, r.exact, r.scalar, r.sign_mapped, r.failed);
    if !r.sign_map.is_empty() {
        let _ = writeln!(out, "table sign map: negate {}", r.sign_map.join(", "));
    }
    for row in &r.rows {
        let status = match &row.status {
            Status::Exact => "exact".to_string(),
            Status::Scalar { c } => format!("scalar {c}"),
            Status::SignMap { flipped } => format!("sign map {}", flipped.join(",")),
            Status::Failed { residual } => format!("FAILED residual {residual}"),
        };
        let _ = writeln!(out, "  [{}] {} = {}  {}", row.class, row.lhs, row.rhs, status);
    }
    out
}

pub fn pretty_h2(id: &str, side: &str, r: &HomologyReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{id} {side}: homology through degree {}", r.max_degree);
    let _ = writeln!(out, "  degree  H1  H2  printed  independent");
    for row in &r.rows {
        let _ = writeln!(out, "  {:>6}  {:>2}  {:>2}  {:>7}  {:>11}", row.degree, row.h1, row.h2, row.printed, row.independent);
        for rep in &row.representatives {
            let _ = writeln!(out, "          uncovered: {rep}");
        }
    }
    for s in &r.skipped {
        let _ = writeln!(out, "  skipped: {s}");
    }
    out
}

pub fn pretty_prolong(r: &ProlongReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} (grading {}): dim g_- = {}|{}", r.algebra, r.grading, r.negative.even, r.negative.odd);
    dim_table(&mut out, &r.dims);
    if !r.modules.is_empty() {
        let _ = writeln!(out, "g_1 submodules:");
        for m in &r.modules {
            let _ = writeln!(out, "  {} generated by {}: {}|{}", m.name, m.generator, m.even, m.odd);
        }
        if let Some(d) = r.direct_sum {
            let _ = writeln!(out, "  direct sum of g_1: {d}");
        }
    }
    if let Some(p) = &r.partial {
        let _ = writeln!(out, "partial prolong:");
        dim_table(&mut out, p);
    }
    out
}
