//! Nested-bracket expressions over a table of named generators: parsing,
//! evaluation, relation checking with sign and scalar diagnostics,
//! generated dimensions and Cartan weights.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::element::{AlgebraElement, Key};
use crate::error::{Error, Result};
use crate::grading::{degree_of, Grading};
use crate::linalg::{axpy, Echelon, SparseVec};
use crate::parse::{Lexer, Tok};
use crate::rational::Q;
use crate::superpoly::Parity;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BracketExpr {
    Gen(String),
    Bracket(Box<BracketExpr>, Box<BracketExpr>),
    Scale(Q, Box<BracketExpr>),
    Sum(Vec<BracketExpr>),
    AdPower {
        base: Box<BracketExpr>,
        k: u32,
        target: Box<BracketExpr>,
    },
}

impl BracketExpr {
    pub fn zero() -> BracketExpr {
        BracketExpr::Sum(Vec::new())
    }

    pub fn bracket(a: BracketExpr, b: BracketExpr) -> BracketExpr {
        BracketExpr::Bracket(Box::new(a), Box::new(b))
    }

    /// Expands `ad` powers into nested brackets.
    pub fn desugar(&self) -> BracketExpr {
        match self {
            BracketExpr::Gen(_) => self.clone(),
            BracketExpr::Bracket(a, b) => BracketExpr::bracket(a.desugar(), b.desugar()),
            BracketExpr::Scale(c, e) => BracketExpr::Scale(c.clone(), Box::new(e.desugar())),
            BracketExpr::Sum(v) => BracketExpr::Sum(v.iter().map(BracketExpr::desugar).collect()),
            BracketExpr::AdPower { base, k, target } => {
                let b = base.desugar();
                (0..*k).fold(target.desugar(), |acc, _| BracketExpr::bracket(b.clone(), acc))
            }
        }
    }

    /// Writes the expression as `Σ c·(bracket monomial)`, distributing
    /// brackets over sums.
    pub fn expand(&self) -> Vec<(Q, Monomial)> {
        let raw = match self {
            BracketExpr::Gen(g) => vec![(Q::one(), Monomial::Gen(g.clone()))],
            BracketExpr::Scale(c, e) => e.expand().into_iter().map(|(d, m)| (&d * c, m)).collect(),
            BracketExpr::Sum(v) => v.iter().flat_map(BracketExpr::expand).collect(),
            BracketExpr::Bracket(a, b) => {
                let (ea, eb) = (a.expand(), b.expand());
                let mut out = Vec::new();
                for (ca, ma) in &ea {
                    for (cb, mb) in &eb {
                        out.push((ca * cb, Monomial::Bracket(Box::new(ma.clone()), Box::new(mb.clone()))));
                    }
                }
                out
            }
            BracketExpr::AdPower { .. } => return self.desugar().expand(),
        };
        let mut merged: Vec<(Q, Monomial)> = Vec::new();
        for (c, m) in raw {
            if let Some(e) = merged.iter_mut().find(|(_, x)| *x == m) {
                e.0 += &c;
            } else {
                merged.push((c, m));
            }
        }
        merged.retain(|(c, _)| !c.is_zero());
        merged
    }

    /// The top-level bracket pairs `Σ c·[A, B]` of the expression.
    pub fn top_brackets(&self) -> Result<Vec<(Q, BracketExpr, BracketExpr)>> {
        match self {
            BracketExpr::Gen(g) => Err(Error::Config(format!("`{g}` is not a bracket"))),
            BracketExpr::Bracket(a, b) => Ok(vec![(Q::one(), (**a).clone(), (**b).clone())]),
            BracketExpr::Scale(c, e) => Ok(e.top_brackets()?.into_iter().map(|(d, a, b)| (&d * c, a, b)).collect()),
            BracketExpr::Sum(v) => {
                let mut out = Vec::new();
                for e in v {
                    out.extend(e.top_brackets()?);
                }
                Ok(out)
            }
            BracketExpr::AdPower { .. } => self.desugar().top_brackets(),
        }
    }

    pub fn generators(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_gens(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_gens(&self, out: &mut Vec<String>) {
        match self {
            BracketExpr::Gen(g) => out.push(g.clone()),
            BracketExpr::Bracket(a, b) => {
                a.collect_gens(out);
                b.collect_gens(out);
            }
            BracketExpr::Scale(_, e) => e.collect_gens(out),
            BracketExpr::Sum(v) => v.iter().for_each(|e| e.collect_gens(out)),
            BracketExpr::AdPower { base, target, .. } => {
                base.collect_gens(out);
                target.collect_gens(out);
            }
        }
    }
}

impl fmt::Display for BracketExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BracketExpr::Gen(g) => f.write_str(g),
            BracketExpr::Bracket(a, b) => write!(f, "[{a},{b}]"),
            BracketExpr::Scale(c, e) => write!(f, "{c}*{e}"),
            BracketExpr::Sum(v) if v.is_empty() => f.write_str("0"),
            BracketExpr::Sum(v) => {
                let parts: Vec<String> = v.iter().map(|e| e.to_string()).collect();
                write!(f, "{}", parts.join(" + "))
            }
            BracketExpr::AdPower { base, k, target } => write!(f, "ad({base},{k},{target})"),
        }
    }
}

/// A bracket monomial in the generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Monomial {
    Gen(String),
    Bracket(Box<Monomial>, Box<Monomial>),
}

impl Monomial {
    fn count(&self, name: &str) -> usize {
        match self {
            Monomial::Gen(g) => usize::from(g == name),
            Monomial::Bracket(a, b) => a.count(name) + b.count(name),
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Monomial::Gen(g) => f.write_str(g),
            Monomial::Bracket(a, b) => write!(f, "[{a},{b}]"),
        }
    }
}

fn parse_sum(lx: &mut Lexer) -> Result<BracketExpr> {
    let mut terms = Vec::new();
    let mut neg = lx.eat('-');
    if !neg {
        lx.eat('+');
    }
    loop {
        let t = parse_term(lx)?;
        terms.push(if neg { BracketExpr::Scale(Q::from_int(-1), Box::new(t)) } else { t });
        if lx.eat('+') {
            neg = false;
        } else if lx.eat('-') {
            neg = true;
        } else {
            break;
        }
    }
    Ok(if terms.len() == 1 {
        terms.pop().expect("one term")
    } else {
        BracketExpr::Sum(terms)
    })
}

fn parse_term(lx: &mut Lexer) -> Result<BracketExpr> {
    if matches!(lx.peek(), Some(Tok::Num(_))) {
        let c = lx.rational()?;
        lx.eat('*');
        let starts_atom = matches!(lx.peek(), Some(Tok::Sym('[')) | Some(Tok::Sym('(')) | Some(Tok::Ident(_)));
        if !starts_atom {
            return Ok(if c.is_zero() {
                BracketExpr::zero()
            } else {
                return Err(lx.err("a bare nonzero number is not an element"));
            });
        }
        let a = parse_atom(lx)?;
        return Ok(BracketExpr::Scale(c, Box::new(a)));
    }
    parse_atom(lx)
}

fn parse_atom(lx: &mut Lexer) -> Result<BracketExpr> {
    match lx.peek().cloned() {
        Some(Tok::Sym('[')) => {
            lx.next();
            let a = parse_sum(lx)?;
            lx.expect(',')?;
            let b = parse_sum(lx)?;
            lx.expect(']')?;
            Ok(BracketExpr::bracket(a, b))
        }
        Some(Tok::Sym('(')) => {
            lx.next();
            let e = parse_sum(lx)?;
            lx.expect(')')?;
            Ok(e)
        }
        Some(Tok::Ident(name)) => {
            lx.next();
            if name == "ad" && lx.eat('(') {
                let base = parse_sum(lx)?;
                lx.expect(',')?;
                let k = match lx.next() {
                    Some(Tok::Num(n)) => n.parse().map_err(|_| lx.err("bad ad exponent"))?,
                    _ => return Err(lx.err("expected ad exponent")),
                };
                lx.expect(',')?;
                let target = parse_sum(lx)?;
                lx.expect(')')?;
                return Ok(BracketExpr::AdPower {
                    base: Box::new(base),
                    k,
                    target: Box::new(target),
                });
            }
            Ok(BracketExpr::Gen(name))
        }
        _ => Err(lx.err("expected `[`, `(`, `ad(` or a generator name")),
    }
}

/// Parses `[X1,[X2,Z]]`, `4*[Z2,[X1,Z1]]`, `ad(X4,2,X3)`, sums and `0`.
pub fn parse_expr(s: &str) -> Result<BracketExpr> {
    let mut lx = Lexer::new(s)?;
    let e = parse_sum(&mut lx)?;
    if !lx.at_end() {
        return Err(lx.err("trailing input"));
    }
    Ok(e)
}

/// Named generators of one realization.
#[derive(Clone, Debug, Default)]
pub struct GenTable {
    names: Vec<String>,
    elems: Vec<AlgebraElement>,
}

impl GenTable {
    pub fn new() -> GenTable {
        GenTable::default()
    }

    pub fn insert(&mut self, name: &str, el: AlgebraElement) {
        if let Some(i) = self.names.iter().position(|n| n == name) {
            self.elems[i] = el;
        } else {
            self.names.push(name.to_string());
            self.elems.push(el);
        }
    }

    pub fn get(&self, name: &str) -> Result<&AlgebraElement> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| &self.elems[i])
            .ok_or_else(|| Error::UnresolvedGenerator(name.to_string()))
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn elements(&self) -> &[AlgebraElement] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn zero(&self) -> Result<AlgebraElement> {
        self.elems
            .first()
            .map(AlgebraElement::zero_like)
            .ok_or_else(|| Error::Config("empty generator table".into()))
    }

    /// A copy with the named generators negated.
    pub fn with_signs(&self, flipped: &[String]) -> GenTable {
        let mut t = self.clone();
        for (n, e) in t.names.iter().zip(t.elems.iter_mut()) {
            if flipped.contains(n) {
                *e = e.neg();
            }
        }
        t
    }

    /// Union of two tables; names of `other` win.
    pub fn merged(&self, other: &GenTable) -> GenTable {
        let mut t = self.clone();
        for (n, e) in other.names.iter().zip(&other.elems) {
            t.insert(n, e.clone());
        }
        t
    }
}

fn eval_monomial(m: &Monomial, table: &GenTable, memo: &mut HashMap<Monomial, AlgebraElement>) -> Result<AlgebraElement> {
    if let Some(e) = memo.get(m) {
        return Ok(e.clone());
    }
    let v = match m {
        Monomial::Gen(g) => table.get(g)?.clone(),
        Monomial::Bracket(a, b) => {
            let x = eval_monomial(a, table, memo)?;
            let y = eval_monomial(b, table, memo)?;
            x.bracket(&y)?
        }
    };
    memo.insert(m.clone(), v.clone());
    Ok(v)
}

/// Evaluates an expression in the realization of `table`.
pub fn eval_expr(e: &BracketExpr, table: &GenTable) -> Result<AlgebraElement> {
    let mut memo = HashMap::new();
    eval_with(e, table, &mut memo)
}

fn eval_with(e: &BracketExpr, table: &GenTable, memo: &mut HashMap<Monomial, AlgebraElement>) -> Result<AlgebraElement> {
    Ok(match e {
        BracketExpr::Gen(g) => table.get(g)?.clone(),
        BracketExpr::Bracket(a, b) => eval_with(a, table, memo)?.bracket(&eval_with(b, table, memo)?)?,
        BracketExpr::Scale(c, x) => eval_with(x, table, memo)?.scale(c),
        BracketExpr::Sum(v) => {
            let mut acc = table.zero()?;
            for x in v {
                acc = acc.add(&eval_with(x, table, memo)?)?;
            }
            acc
        }
        BracketExpr::AdPower { .. } => eval_with(&e.desugar(), table, memo)?,
    })
}

/// One row of a relation table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationRecord {
    pub algebra: String,
    pub side: String,
    pub class: String,
    pub lhs: String,
    #[serde(default = "zero_string")]
    pub rhs: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn zero_string() -> String {
    "0".into()
}

impl RelationRecord {
    pub fn is_weight(&self) -> bool {
        self.class == "weight"
    }

    /// `lhs − rhs` as one expression.
    pub fn difference(&self) -> Result<BracketExpr> {
        let l = parse_expr(&self.lhs)?;
        let r = parse_expr(&self.rhs)?;
        Ok(BracketExpr::Sum(vec![l, BracketExpr::Scale(Q::from_int(-1), Box::new(r))]))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Status {
    Exact,
    /// `lhs = c·rhs`.
    Scalar { c: Q },
    /// Holds exactly after negating the listed generators.
    SignMap { flipped: Vec<String> },
    Failed { residual: String },
}

impl Status {
    pub fn passed(&self, allow_scalar: bool) -> bool {
        match self {
            Status::Exact | Status::SignMap { .. } => true,
            Status::Scalar { .. } => allow_scalar,
            Status::Failed { .. } => false,
        }
    }
}

/// A relation prepared for repeated checks under sign maps: the distinct
/// bracket monomials of `lhs − rhs`, evaluated once.
struct Prepared {
    terms: Vec<(Q, SparseVec<Key>, Vec<usize>)>,
}

impl Prepared {
    fn new(expr: &BracketExpr, table: &GenTable, memo: &mut HashMap<Monomial, AlgebraElement>) -> Result<Prepared> {
        let mut terms = Vec::new();
        for (c, m) in expr.expand() {
            let v = eval_monomial(&m, table, memo)?.coords();
            let counts = table.names().iter().map(|n| m.count(n)).collect();
            terms.push((c, v, counts));
        }
        Ok(Prepared { terms })
    }

    /// The residual when generator `i` is negated for each set bit of `mask`.
    fn residual(&self, mask: u64) -> SparseVec<Key> {
        let mut acc: SparseVec<Key> = Vec::new();
        for (c, v, counts) in &self.terms {
            let odd = counts
                .iter()
                .enumerate()
                .filter(|(i, _)| (mask >> i) & 1 == 1)
                .map(|(_, k)| k)
                .sum::<usize>()
                % 2
                == 1;
            acc = axpy(&acc, &(c * &Q::sign(odd)), v);
        }
        acc
    }

    fn involved(&self) -> Vec<usize> {
        let n = self.terms.first().map(|t| t.2.len()).unwrap_or(0);
        (0..n).filter(|&i| self.terms.iter().any(|t| t.2[i] > 0)).collect()
    }
}

/// Checks `lhs = rhs`: exactly, then as `lhs = c·rhs`, then up to negating
/// some of the generators involved (at most nine of them).
pub fn check_relation(rec: &RelationRecord, table: &GenTable) -> Result<Status> {
    let l = eval_expr(&parse_expr(&rec.lhs)?, table)?;
    let r = eval_expr(&parse_expr(&rec.rhs)?, table)?;
    let diff = l.sub(&r)?;
    if diff.is_zero() {
        return Ok(Status::Exact);
    }
    if let Some(c) = scalar_ratio(&l, &r) {
        return Ok(Status::Scalar { c });
    }
    let mut memo = HashMap::new();
    let prep = Prepared::new(&rec.difference()?, table, &mut memo)?;
    if let Some(mask) = search_signs(&[&prep], &prep.involved(), 9) {
        return Ok(Status::SignMap {
            flipped: mask_names(table, mask),
        });
    }
    Ok(Status::Failed {
        residual: format!("{diff}"),
    })
}

fn scalar_ratio(l: &AlgebraElement, r: &AlgebraElement) -> Option<Q> {
    let (lc, rc) = (l.coords(), r.coords());
    if rc.is_empty() || lc.is_empty() {
        return None;
    }
    let c = &lc[0].1 / &rc[0].1;
    let scaled: SparseVec<Key> = rc.iter().map(|(k, x)| (k.clone(), x * &c)).collect();
    (scaled == lc).then_some(c)
}

fn mask_names(table: &GenTable, mask: u64) -> Vec<String> {
    table
        .names()
        .iter()
        .enumerate()
        .filter(|(i, _)| (mask >> i) & 1 == 1)
        .map(|(_, n)| n.clone())
        .collect()
}

/// Smallest sign map over the `free` generators annihilating every residual.
fn search_signs(preps: &[&Prepared], free: &[usize], max_bits: usize) -> Option<u64> {
    if free.len() > max_bits {
        return None;
    }
    let mut masks: Vec<u64> = (0u64..(1 << free.len()))
        .map(|bits| {
            free.iter()
                .enumerate()
                .filter(|(j, _)| (bits >> j) & 1 == 1)
                .fold(0u64, |m, (_, &i)| m | (1 << i))
        })
        .collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    masks.into_iter().find(|&m| preps.iter().all(|p| p.residual(m).is_empty()))
}

/// Outcome of one row.
#[derive(Clone, Debug, Serialize)]
pub struct RowReport {
    pub class: String,
    pub lhs: String,
    pub rhs: String,
    #[serde(flatten)]
    pub status: Status,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct VerificationReport {
    pub algebra: String,
    pub side: String,
    /// Generators negated for the whole table, if a single map fixes it.
    pub sign_map: Vec<String>,
    pub rows: Vec<RowReport>,
    pub exact: usize,
    pub scalar: usize,
    pub sign_mapped: usize,
    pub failed: usize,
}

impl VerificationReport {
    pub fn passed(&self, allow_scalar: bool) -> bool {
        self.rows.iter().all(|r| r.status.passed(allow_scalar))
    }
}

/// Checks a whole table. Failing rows are first retried under the single
/// sign map shared by the table that satisfies the most rows (searched over
/// at most `2^12` maps); rows still failing get the per-row scalar and
/// sign searches.
pub fn check_relation_set(
    algebra: &str,
    side: &str,
    records: &[RelationRecord],
    table: &GenTable,
    cartan: &[String],
) -> Result<VerificationReport> {
    let mut report = VerificationReport {
        algebra: algebra.to_string(),
        side: side.to_string(),
        ..VerificationReport::default()
    };
    if records.is_empty() {
        return Ok(report);
    }
    let mut memo = HashMap::new();
    let mut preps = Vec::new();
    let mut weights = Vec::new();
    for rec in records {
        if rec.is_weight() {
            weights.push(Some(weight_check(rec, table, cartan)?));
            preps.push(None);
        } else {
            preps.push(Some(Prepared::new(&rec.difference()?, table, &mut memo)?));
            weights.push(None);
        }
    }
    let holds = |i: usize, mask: u64| -> bool {
        match (&preps[i], &weights[i]) {
            (Some(p), _) => p.residual(mask).is_empty(),
            (None, Some(w)) => w.holds(mask),
            _ => false,
        }
    };
    let all_exact = (0..records.len()).all(|i| holds(i, 0));
    let mut global = 0u64;
    if !all_exact {
        let free: Vec<usize> = (0..table.len()).collect();
        if free.len() <= 12 {
            let mut masks: Vec<u64> = (0u64..(1 << free.len())).collect();
            masks.sort_by_key(|m| (m.count_ones(), *m));
            let score = |m: u64| (0..records.len()).filter(|&i| holds(i, m)).count();
            let base = score(0);
            let mut best = (base, 0u64);
            for m in masks {
                let s = score(m);
                if s > best.0 {
                    best = (s, m);
                }
                if s == records.len() {
                    break;
                }
            }
            global = best.1;
        }
    }
    report.sign_map = mask_names(table, global);
    for (i, rec) in records.iter().enumerate() {
        let status = if holds(i, 0) {
            Status::Exact
        } else if global != 0 && holds(i, global) {
            Status::SignMap {
                flipped: mask_names(table, global),
            }
        } else if let Some(w) = &weights[i] {
            w.fallback(table)
        } else {
            check_relation(rec, table)?
        };
        match &status {
            Status::Exact => report.exact += 1,
            Status::Scalar { .. } => report.scalar += 1,
            Status::SignMap { .. } => report.sign_mapped += 1,
            Status::Failed { .. } => report.failed += 1,
        }
        report.rows.push(RowReport {
            class: rec.class.clone(),
            lhs: rec.lhs.clone(),
            rhs: rec.rhs.clone(),
            status,
        });
    }
    Ok(report)
}

/// A weight row: generator `lhs` has weight `rhs` (space separated) with
/// respect to `cartan`.
struct WeightCheck {
    computed: Vec<Q>,
    printed: Vec<Q>,
    cartan: Vec<usize>,
}

fn weight_check(rec: &RelationRecord, table: &GenTable, cartan: &[String]) -> Result<WeightCheck> {
    let printed: Vec<Q> = rec
        .rhs
        .split_whitespace()
        .map(|s| s.parse::<Q>().map_err(|_| Error::Config(format!("bad weight `{s}`"))))
        .collect::<Result<_>>()?;
    if printed.len() != cartan.len() {
        return Err(Error::Config(format!("weight of `{}` has the wrong length", rec.lhs)));
    }
    let hs: Vec<AlgebraElement> = cartan.iter().map(|h| table.get(h).cloned()).collect::<Result<_>>()?;
    let name = rec.lhs.trim();
    let v = table.get(name)?;
    let idx = |n: &str| table.names().iter().position(|x| x == n).expect("looked up above");
    Ok(WeightCheck {
        computed: cartan_weight(&hs, v)?,
        printed,
        cartan: cartan.iter().map(|h| idx(h)).collect(),
    })
}

impl WeightCheck {
    /// Negating `h` negates its weights; negating the generator does not.
    fn holds(&self, mask: u64) -> bool {
        self.computed.iter().zip(&self.printed).zip(&self.cartan).all(|((c, p), &h)| {
            let s = Q::sign((mask >> h) & 1 == 1);
            &(c * &s) == p
        })
    }

    fn fallback(&self, table: &GenTable) -> Status {
        let free: Vec<usize> = self.cartan.clone();
        for bits in 0u64..(1 << free.len()) {
            let mask = free
                .iter()
                .enumerate()
                .filter(|(j, _)| (bits >> j) & 1 == 1)
                .fold(0u64, |m, (_, &i)| m | (1 << i));
            if self.holds(mask) {
                return Status::SignMap {
                    flipped: mask_names(table, mask),
                };
            }
        }
        let s: Vec<String> = self.computed.iter().map(|q| q.to_string()).collect();
        Status::Failed {
            residual: format!("computed weight ({})", s.join(" ")),
        }
    }
}

/// Eigenvalues of `ad h` on `v` for each `h`.
pub fn cartan_weight(hs: &[AlgebraElement], v: &AlgebraElement) -> Result<Vec<Q>> {
    let vc = v.coords();
    if vc.is_empty() {
        return Err(Error::NotEigenvector("0".into()));
    }
    hs.iter()
        .map(|h| {
            let w = h.bracket(v)?.coords();
            if w.is_empty() {
                return Ok(Q::zero());
            }
            let c = &w[0].1 / &vc.iter().find(|(k, _)| *k == w[0].0).map(|x| x.1.clone()).ok_or_else(|| Error::NotEigenvector(v.to_string()))?;
            let scaled: SparseVec<Key> = vc.iter().map(|(k, x)| (k.clone(), x * &c)).collect();
            if scaled == w {
                Ok(c)
            } else {
                Err(Error::NotEigenvector(v.to_string()))
            }
        })
        .collect()
}

/// Superdimensions, per degree, of the span of iterated brackets of the
/// generators, keeping degrees with `|deg| ≤ max_degree`.
pub fn generated_dims(gens: &[AlgebraElement], grading: &Grading, max_degree: i64) -> Result<BTreeMap<i64, (usize, usize)>> {
    let span = generated_span(gens, grading, max_degree)?;
    Ok(span
        .into_iter()
        .map(|(d, els)| {
            let odd = els.iter().filter(|e| e.parity().map(|p| p == Parity::Odd).unwrap_or(false)).count();
            (d, (els.len() - odd, odd))
        })
        .collect())
}

/// A basis, per degree, of the subalgebra generated by `gens`, truncated
/// to `|deg| ≤ max_degree`.
pub fn generated_span(gens: &[AlgebraElement], grading: &Grading, max_degree: i64) -> Result<BTreeMap<i64, Vec<AlgebraElement>>> {
    let mut basis: BTreeMap<i64, (Echelon<Key>, Vec<AlgebraElement>)> = BTreeMap::new();
    let mut queue: Vec<AlgebraElement> = Vec::new();
    let push = |el: AlgebraElement, basis: &mut BTreeMap<i64, (Echelon<Key>, Vec<AlgebraElement>)>, queue: &mut Vec<AlgebraElement>| -> Result<()> {
        let d = match degree_of(&el, grading)? {
            Some(d) if d.abs() <= max_degree => d,
            _ => return Ok(()),
        };
        el.parity()?;
        let entry = basis.entry(d).or_insert_with(|| (Echelon::new(), Vec::new()));
        if entry.0.insert(&el.coords()).is_ok() {
            entry.1.push(el.clone());
            queue.push(el);
        }
        Ok(())
    };
    for g in gens {
        push(g.clone(), &mut basis, &mut queue)?;
    }
    while let Some(y) = queue.pop() {
        for g in gens {
            let b = g.bracket(&y)?;
            if !b.is_zero() {
                push(b, &mut basis, &mut queue)?;
            }
        }
    }
    Ok(basis.into_iter().map(|(d, (_, v))| (d, v)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superpoly::Ring;
    use crate::vfield::VectorField;

    fn table() -> GenTable {
        let r = Ring::from_names(&[("x1", false), ("x2", false), ("x3", false)]).unwrap();
        let mut t = GenTable::new();
        t.insert("X1", AlgebraElement::Field(VectorField::parse(&r, "x1*d/dx2").unwrap()));
        t.insert("X2", AlgebraElement::Field(VectorField::parse(&r, "x2*d/dx3").unwrap()));
        t.insert("X3", AlgebraElement::Field(VectorField::parse(&r, "x1*d/dx3").unwrap()));
        t.insert("X4", AlgebraElement::Field(VectorField::parse(&r, "x2*d/dx1").unwrap()));
        t
    }

    #[test]
    fn grammar() {
        let e = parse_expr("[X1,[X2,Z]]").unwrap();
        assert_eq!(e.to_string(), "[X1,[X2,Z]]");
        let e = parse_expr("4*[Z2,[X1,Z1]]").unwrap();
        assert!(matches!(e, BracketExpr::Scale(ref c, _) if *c == Q::from_int(4)));
        let e = parse_expr("ad(X4,2,X3)").unwrap();
        assert_eq!(e.desugar(), parse_expr("[X4,[X4,X3]]").unwrap());
        assert_eq!(parse_expr("1/2*[a,b] - c").unwrap().expand().len(), 2);
        assert!(parse_expr("[a,").is_err());
        assert!(parse_expr("0").unwrap().expand().is_empty());
    }

    #[test]
    fn evaluation_and_checks() {
        let t = table();
        let e = eval_expr(&parse_expr("[X1,X2]").unwrap(), &t).unwrap();
        assert_eq!(e.to_string(), "x1*d/dx3");
        let rec = |lhs: &str, rhs: &str| RelationRecord {
            algebra: "t".into(),
            side: "+".into(),
            class: "S".into(),
            lhs: lhs.into(),
            rhs: rhs.into(),
            note: None,
        };
        assert_eq!(check_relation(&rec("ad(X1,2,X2)", "0"), &t).unwrap(), Status::Exact);
        assert!(matches!(check_relation(&rec("[X1,X2]", "0"), &t).unwrap(), Status::Failed { .. }));
        assert_eq!(
            check_relation(&rec("[X1,X2]", "2*[X1,X2]"), &t).unwrap(),
            Status::Scalar { c: Q::new(1, 2) }
        );
        assert_eq!(
            check_relation(&rec("[X1,X2] + X4", "X4 - X3"), &t).unwrap(),
            Status::SignMap { flipped: vec!["X1".into()] }
        );
        assert!(matches!(eval_expr(&parse_expr("[X1,W]").unwrap(), &t), Err(Error::UnresolvedGenerator(_))));
        let rep = check_relation_set("t", "+", &[], &t, &[]).unwrap();
        assert!(rep.rows.is_empty());
    }

    #[test]
    fn weights() {
        let r = Ring::from_names(&[("x1", false), ("x2", false)]).unwrap();
        let h = AlgebraElement::Field(VectorField::parse(&r, "x1*d/dx1 - x2*d/dx2").unwrap());
        let v = AlgebraElement::Field(VectorField::parse(&r, "x1*d/dx2").unwrap());
        assert_eq!(cartan_weight(&[h.clone()], &v).unwrap(), vec![Q::from_int(2)]);
        assert_eq!(cartan_weight(&[h.clone()], &h).unwrap(), vec![Q::zero()]);
        let w = AlgebraElement::Field(VectorField::parse(&r, "x1*d/dx2 + d/dx1").unwrap());
        assert!(cartan_weight(&[h], &w).is_err());
    }

    #[test]
    fn generated_dimensions() {
        let t = table();
        let g = Grading::uniform(1);
        let dims = generated_dims(t.elements(), &g, 4).unwrap();
        assert_eq!(dims[&0], (5, 0));
        let two = generated_dims(&t.elements()[..2], &g, 4).unwrap();
        assert_eq!(two[&0], (3, 0));
    }
}
