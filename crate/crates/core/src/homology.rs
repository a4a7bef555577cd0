//! H₁ and H₂ with trivial coefficients of the subalgebra generated by a
//! set of homogeneous elements, truncated at an internal degree.
//!
//! Every generator is homogeneous for a torus of weights on the coordinate
//! slots, and the chain complex splits by torus weight. Each weight space
//! is handled separately: `dim H₂ = dim C₂ − rank d₁ − rank d₂`.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::element::{AlgebraElement, Key};
use crate::error::{Error, Result};
use crate::grading::{degree_of, Grading};
use crate::linalg::{axpy, kernel, normalize, Echelon, ModEchelon, SparseVec, PRIME};
use crate::rational::Q;
use crate::superpoly::Parity;

/// Multidegree: internal degree first, then torus weights.
pub type MultiDegree = Vec<i64>;

/// Integer weights on the slots that make every generator homogeneous.
fn torus_lattice(gens: &[AlgebraElement]) -> Result<Vec<Vec<i64>>> {
    let first = gens.first().ok_or_else(|| Error::Config("no generators".into()))?;
    let n = first
        .weight_slots()
        .ok_or_else(|| Error::Realization("homology needs a coordinate realization".into()))?;
    let mut rows: Vec<Vec<i64>> = first.weight_constraints()?;
    for g in gens {
        let tv = g.term_vectors()?;
        if let Some(v0) = tv.first() {
            for v in &tv[1..] {
                rows.push(v.iter().zip(v0).map(|(a, b)| a - b).collect());
            }
        }
    }
    let columns: Vec<SparseVec<usize>> = (0..n)
        .map(|j| {
            normalize(
                rows.iter()
                    .enumerate()
                    .filter(|(_, r)| r[j] != 0)
                    .map(|(i, r)| (i, Q::from_int(r[j])))
                    .collect(),
            )
        })
        .collect();
    let mut out = Vec::new();
    for k in kernel(&columns) {
        let mut scale = Q::one();
        for (_, c) in &k {
            let d = (c * &scale).denom();
            scale = &scale * &Q::from_big(num_rational::BigRational::from_integer(d));
        }
        let mut v = vec![0i64; n];
        for (j, c) in &k {
            v[*j] = (c * &scale)
                .to_i64()
                .ok_or_else(|| Error::Config("torus weight overflow".into()))?;
        }
        out.push(v);
    }
    Ok(out)
}

/// One weight space of the truncated algebra.
pub struct Component {
    pub mdeg: MultiDegree,
    pub basis: Vec<AlgebraElement>,
    /// Bracket words producing the basis elements.
    pub words: Vec<String>,
    pub parities: Vec<Parity>,
    ech: Echelon<Key>,
    slots: Vec<Option<usize>>,
    offset: usize,
}

impl Component {
    fn new(mdeg: MultiDegree) -> Component {
        Component {
            mdeg,
            basis: Vec::new(),
            words: Vec::new(),
            parities: Vec::new(),
            ech: Echelon::with_transform(),
            slots: Vec::new(),
            offset: 0,
        }
    }

    pub fn degree(&self) -> i64 {
        self.mdeg[0]
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn try_add(&mut self, el: AlgebraElement, word: String) -> Result<bool> {
        let p = el.parity()?;
        let ok = self.ech.insert(&el.coords()).is_ok();
        if ok {
            self.slots.push(Some(self.basis.len()));
            self.basis.push(el);
            self.words.push(word);
            self.parities.push(p);
        } else {
            self.slots.push(None);
        }
        Ok(ok)
    }

    /// Coordinates of `v` over the basis, as global element ids.
    fn express(&self, v: &SparseVec<Key>) -> Option<SparseVec<usize>> {
        let comb = self.ech.express(v)?;
        Some(
            comb.into_iter()
                .map(|(i, c)| (self.offset + self.slots[i].expect("only basis vectors enter rows"), c))
                .collect(),
        )
    }
}

/// The subalgebra generated by `gens`, truncated to `s·deg ≤ max` where
/// `s` is the common sign of the generator degrees.
pub struct Truncated {
    pub comps: Vec<Component>,
    index: HashMap<MultiDegree, usize>,
    weights: Vec<i64>,
    lattice: Vec<Vec<i64>>,
    sign: i64,
    max: i64,
    /// Global element id → (component, position).
    elems: Vec<(usize, usize)>,
    /// Names and multidegrees of the generators.
    pub generators: Vec<(String, MultiDegree)>,
    /// Global ids of the generators, or `None` if one of them is dependent.
    gen_ids: Option<Vec<usize>>,
}

impl Truncated {
    pub fn build(gens: &[(String, AlgebraElement)], grading: &Grading, max: i64) -> Result<Truncated> {
        let elems: Vec<AlgebraElement> = gens.iter().map(|(_, e)| e.clone()).collect();
        let lattice = torus_lattice(&elems)?;
        let weights = grading.slot_weights(&elems[0])?;
        let mut degs = Vec::new();
        for (name, g) in gens {
            match degree_of(g, grading)? {
                Some(d) => degs.push(d),
                None => return Err(Error::Config(format!("generator `{name}` is zero"))),
            }
        }
        let sign = if degs.iter().all(|&d| d >= 0) {
            1
        } else if degs.iter().all(|&d| d <= 0) {
            -1
        } else {
            return Err(Error::Config("generator degrees have mixed signs".into()));
        };
        let mut t = Truncated {
            comps: Vec::new(),
            index: HashMap::new(),
            weights,
            lattice,
            sign,
            max,
            elems: Vec::new(),
            generators: Vec::new(),
            gen_ids: Some(Vec::new()),
        };

        let mut independent = true;
        let mut comps: BTreeMap<MultiDegree, Component> = BTreeMap::new();
        let mut queue: Vec<(MultiDegree, usize)> = Vec::new();
        let mut gen_mdeg = Vec::new();
        for (name, g) in gens {
            let m = t.mdeg_of(g)?.expect("nonzero generator");
            gen_mdeg.push(m.clone());
            t.generators.push((name.clone(), m.clone()));
            if sign * m[0] > max {
                continue;
            }
            let c = comps.entry(m.clone()).or_insert_with(|| Component::new(m.clone()));
            if c.try_add(g.clone(), name.clone())? {
                queue.push((m, c.dim() - 1));
            } else {
                independent = false;
            }
        }
        let mut head = 0;
        while head < queue.len() {
            let (m, i) = queue[head].clone();
            head += 1;
            let (y, wy) = {
                let c = &comps[&m];
                (c.basis[i].clone(), c.words[i].clone())
            };
            for ((name, g), gm) in gens.iter().zip(&gen_mdeg) {
                let mu: MultiDegree = m.iter().zip(gm).map(|(a, b)| a + b).collect();
                if sign * mu[0] > max {
                    continue;
                }
                let b = g.bracket(&y)?;
                if b.is_zero() {
                    continue;
                }
                let c = comps.entry(mu.clone()).or_insert_with(|| Component::new(mu.clone()));
                if c.try_add(b, format!("[{name},{wy}]"))? {
                    queue.push((mu, c.dim() - 1));
                }
            }
        }
        let mut list: Vec<Component> = comps.into_values().filter(|c| c.dim() > 0).collect();
        list.sort_by(|a, b| (sign * a.degree(), &a.mdeg).cmp(&(sign * b.degree(), &b.mdeg)));
        let mut offset = 0;
        for (ci, c) in list.iter_mut().enumerate() {
            c.offset = offset;
            for k in 0..c.dim() {
                t.elems.push((ci, k));
                if let (Some(ids), false) = (&mut t.gen_ids, c.words[k].contains('[')) {
                    ids.push(offset + k);
                }
            }
            offset += c.dim();
            t.index.insert(c.mdeg.clone(), ci);
        }
        t.comps = list;
        if !independent {
            t.gen_ids = None;
        }

        Ok(t)
    }

    /// Multidegree of a nonzero homogeneous element.
    pub fn mdeg_of(&self, el: &AlgebraElement) -> Result<Option<MultiDegree>> {
        let tv = el.term_vectors()?;
        let mut out: Option<MultiDegree> = None;
        for v in &tv {
            let dot = |w: &[i64]| -> i64 { w.iter().zip(v).map(|(a, b)| a * b).sum() };
            let mut m = vec![dot(&self.weights)];
            m.extend(self.lattice.iter().map(|w| dot(w)));
            match &out {
                None => out = Some(m),
                Some(o) if *o != m => return Err(Error::InhomogeneousDegree),
                _ => {}
            }
        }
        Ok(out)
    }

    pub fn dim(&self) -> usize {
        self.elems.len()
    }

    fn parity(&self, g: usize) -> Parity {
        let (c, k) = self.elems[g];
        self.comps[c].parities[k]
    }

    fn element(&self, g: usize) -> &AlgebraElement {
        let (c, k) = self.elems[g];
        &self.comps[c].basis[k]
    }

    fn word(&self, g: usize) -> &str {
        let (c, k) = self.elems[g];
        &self.comps[c].words[k]
    }

    fn mdeg(&self, g: usize) -> &MultiDegree {
        &self.comps[self.elems[g].0].mdeg
    }

    /// Expresses a homogeneous element over the basis.
    pub fn express(&self, el: &AlgebraElement) -> Result<Option<(MultiDegree, SparseVec<usize>)>> {
        let m = match self.mdeg_of(el)? {
            Some(m) => m,
            None => return Ok(Some((Vec::new(), Vec::new()))),
        };
        let Some(&ci) = self.index.get(&m) else {
            return Ok(None);
        };
        Ok(self.comps[ci].express(&el.coords()).map(|v| (m, v)))
    }

    /// `d_1 d_2 (e_x ∧ e_y ∧ e_z)` over the basis ids `0..dim()`; always
    /// zero when the triple lies within the truncation.
    pub fn boundary_of_boundary(&self, x: usize, y: usize, z: usize) -> Result<SparseVec<usize>> {
        let mut br = Brackets {
            t: self,
            memo: HashMap::new(),
            memo_p: HashMap::new(),
        };
        let chain = br.d2(x, y, z)?;
        br.d1(&chain)
    }

    /// Whether `e_x ∧ e_y ∧ e_z` lies within the truncation.
    pub fn triple_within(&self, x: usize, y: usize, z: usize) -> bool {
        let mu = Truncated::add_mdeg(&Truncated::add_mdeg(self.mdeg(x), self.mdeg(y)), self.mdeg(z));
        self.within(&mu)
    }

    /// Superdimension per internal degree.
    pub fn dims(&self) -> BTreeMap<i64, (usize, usize)> {
        let mut out: BTreeMap<i64, (usize, usize)> = BTreeMap::new();
        for c in &self.comps {
            let e = out.entry(c.degree()).or_default();
            for p in &c.parities {
                if p.is_odd() {
                    e.1 += 1;
                } else {
                    e.0 += 1;
                }
            }
        }
        out
    }

    fn add_mdeg(a: &[i64], b: &[i64]) -> MultiDegree {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    fn within(&self, m: &[i64]) -> bool {
        self.sign * m[0] <= self.max
    }
}

/// Canonical `u∧v` with `u ≤ v`; `None` when it vanishes.
fn wedge2(t: &Truncated, u: usize, v: usize) -> Option<((usize, usize), Q)> {
    match u.cmp(&v) {
        std::cmp::Ordering::Less => Some(((u, v), Q::one())),
        std::cmp::Ordering::Equal => t.parity(u).is_odd().then(|| ((u, u), Q::one())),
        std::cmp::Ordering::Greater => {
            let both = t.parity(u).both_odd(t.parity(v));
            Some(((v, u), Q::sign(!both)))
        }
    }
}

struct Brackets<'a> {
    t: &'a Truncated,
    memo: HashMap<(usize, usize), SparseVec<usize>>,
    memo_p: HashMap<(usize, usize), Option<Vec<(usize, u64)>>>,
}

impl<'a> Brackets<'a> {
    /// `[e_u, e_v]` over the basis.
    fn get(&mut self, u: usize, v: usize) -> Result<SparseVec<usize>> {
        if let Some(r) = self.memo.get(&(u, v)) {
            return Ok(r.clone());
        }
        let t = self.t;
        let b = t.element(u).bracket(t.element(v))?;
        let r = if b.is_zero() {
            Vec::new()
        } else {
            let mu = Truncated::add_mdeg(t.mdeg(u), t.mdeg(v));
            let ci = t.index.get(&mu).ok_or_else(|| Error::Window(format!("bracket outside the generated span at {mu:?}")))?;
            t.comps[*ci]
                .express(&b.coords())
                .ok_or_else(|| Error::Window(format!("bracket outside the generated span at {mu:?}")))?
        };
        self.memo.insert((u, v), r.clone());
        Ok(r)
    }

    fn d1(&mut self, chain: &SparseVec<(usize, usize)>) -> Result<SparseVec<usize>> {
        let mut acc = Vec::new();
        for ((u, v), c) in chain {
            acc = axpy(&acc, c, &self.get(*u, *v)?);
        }
        Ok(acc)
    }

    /// `d(x∧y∧z) = [x,y]∧z − (−1)^{p(y)p(z)}[x,z]∧y + (−1)^{p(x)(p(y)+p(z))}[y,z]∧x`.
    fn d2(&mut self, x: usize, y: usize, z: usize) -> Result<SparseVec<(usize, usize)>> {
        let t = self.t;
        let (px, py, pz) = (t.parity(x), t.parity(y), t.parity(z));
        let terms = [
            (Q::one(), x, y, z),
            (-Q::sign(py.both_odd(pz)), x, z, y),
            (Q::sign(px.both_odd(py + pz)), y, z, x),
        ];
        let mut out: Vec<((usize, usize), Q)> = Vec::new();
        for (s, a, b, w) in terms {
            for (k, c) in self.get(a, b)? {
                if let Some((key, e)) = wedge2(t, k, w) {
                    out.push((key, &(&c * &s) * &e));
                }
            }
        }
        Ok(normalize(out))
    }
}

impl Brackets<'_> {
    /// `[e_u, e_v]` reduced modulo the prime, if its coefficients allow it.
    fn get_p(&mut self, u: usize, v: usize) -> Result<Option<Vec<(usize, u64)>>> {
        if let Some(r) = self.memo_p.get(&(u, v)) {
            return Ok(r.clone());
        }
        let exact = self.get(u, v)?;
        let r: Option<Vec<(usize, u64)>> = exact.iter().map(|(k, c)| c.residue(PRIME).map(|x| (*k, x))).collect();
        let r = r.map(|mut v| {
            v.retain(|(_, x)| *x != 0);
            v
        });
        self.memo_p.insert((u, v), r.clone());
        Ok(r)
    }

    /// `d(x∧y∧z)` modulo the prime.
    fn d2_p(&mut self, x: usize, y: usize, z: usize) -> Result<Option<Vec<((usize, usize), u64)>>> {
        let t = self.t;
        let (px, py, pz) = (t.parity(x), t.parity(y), t.parity(z));
        let terms = [
            (false, x, y, z),
            (!py.both_odd(pz), x, z, y),
            (px.both_odd(py + pz), y, z, x),
        ];
        let mut out: Vec<((usize, usize), u64)> = Vec::new();
        for (neg, a, b, w) in terms {
            let Some(img) = self.get_p(a, b)? else {
                return Ok(None);
            };
            for (k, c) in img {
                if let Some((key, e)) = wedge2(t, k, w) {
                    let flip = neg != e.is_negative();
                    out.push((key, if flip { PRIME - c } else { c }));
                }
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<((usize, usize), u64)> = Vec::with_capacity(out.len());
        for (k, c) in out {
            match merged.last_mut() {
                Some((lk, lc)) if *lk == k => *lc = (*lc + c) % PRIME,
                _ => merged.push((k, c)),
            }
        }
        merged.retain(|(_, c)| *c != 0);
        Ok(Some(merged))
    }
}

/// Basis triples whose boundaries span `im d_2` in multidegree `mu`.
///
/// Every basis element beyond the generators is `[g, w]` with `g` a
/// generator, and `d_2 d_3 (g∧w∧y∧z) = 0` rewrites `d_2([g,w]∧y∧z)` through
/// triples containing `g` or the shorter `w`. So triples with a generator
/// factor suffice when the generators are part of the basis.
fn boundary_triples(
    t: &Truncated,
    pairs: &BTreeMap<MultiDegree, Vec<(usize, usize)>>,
    comps: &[(usize, usize, usize)],
    mu: &[i64],
) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    if let Some(ids) = &t.gen_ids {
        for &g in ids {
            let nu: MultiDegree = mu.iter().zip(t.mdeg(g)).map(|(a, b)| a - b).collect();
            for &(y, z) in pairs.get(&nu).into_iter().flatten() {
                out.push((g, y, z));
            }
        }
        return out;
    }
    for &(a, b, c) in comps {
        let (ca, cb, cc) = (&t.comps[a], &t.comps[b], &t.comps[c]);
        for i in 0..ca.dim() {
            let jstart = if a == b { i } else { 0 };
            for j in jstart..cb.dim() {
                let kstart = if b == c { j } else { 0 };
                for k in kstart..cc.dim() {
                    let (x, y, z) = (ca.offset + i, cb.offset + j, cc.offset + k);
                    if (x == y && !t.parity(x).is_odd()) || (y == z && !t.parity(y).is_odd()) {
                        continue;
                    }
                    out.push((x, y, z));
                }
            }
        }
    }
    out
}

/// Whether the boundaries modulo the prime already fill `ker d_1`. The
/// modular rank bounds the rational one from below, and the rational rank
/// is at most `dim ker d_1`, so `true` means `H_2 = 0` exactly.
fn boundaries_fill(
    brackets: &mut Brackets<'_>,
    list: &[(usize, usize)],
    triples: &[(usize, usize, usize)],
    dimker: usize,
) -> Result<bool> {
    let col: HashMap<(usize, usize), usize> = list.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let mut span = ModEchelon::new(list.len());
    let mut v = Vec::new();
    for &(x, y, z) in triples {
        let Some(img) = brackets.d2_p(x, y, z)? else {
            return Ok(false);
        };
        v.clear();
        v.extend(img.iter().map(|(k, c)| (col[k], *c)));
        span.insert(&v);
        if span.rank() == dimker {
            return Ok(true);
        }
    }
    Ok(false)
}

/// A printed relation as the 2-chain `Σ c·A∧B` of its top-level brackets.
#[derive(Clone, Debug)]
pub struct RelationChain {
    pub label: String,
    pub pairs: Vec<(Q, AlgebraElement, AlgebraElement)>,
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct DegreeRow {
    pub degree: i64,
    pub h1: usize,
    pub h2: usize,
    /// Printed relations of this degree, and how many are independent in H₂.
    pub printed: usize,
    pub independent: usize,
    /// H₂ classes not spanned by the printed relations, as bracket cycles.
    pub representatives: Vec<String>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct HomologyReport {
    pub max_degree: i64,
    pub rows: Vec<DegreeRow>,
    /// Relations whose chain is not a cycle or lies beyond the bound.
    pub skipped: Vec<String>,
}

impl HomologyReport {
    pub fn row(&self, degree: i64) -> Option<&DegreeRow> {
        self.rows.iter().find(|r| r.degree == degree)
    }

    /// Every H₂ class within the bound comes from a printed relation.
    pub fn complete(&self) -> bool {
        self.rows.iter().all(|r| r.independent == r.h2)
    }
}

/// Component triples `a ≤ b ≤ c` (by index) grouped by their sum.
fn triples(t: &Truncated) -> HashMap<MultiDegree, Vec<(usize, usize, usize)>> {
    let n = t.comps.len();
    let sd = |i: usize| t.sign * t.comps[i].degree();
    let mut out: HashMap<MultiDegree, Vec<(usize, usize, usize)>> = HashMap::new();
    for a in 0..n {
        for b in a..n {
            if sd(a) + sd(b) + sd(b) > t.max {
                break;
            }
            for c in b..n {
                if sd(a) + sd(b) + sd(c) > t.max {
                    break;
                }
                let mu = Truncated::add_mdeg(&Truncated::add_mdeg(&t.comps[a].mdeg, &t.comps[b].mdeg), &t.comps[c].mdeg);
                out.entry(mu).or_default().push((a, b, c));
            }
        }
    }
    out
}

/// Computes H₁ and H₂ per internal degree and compares H₂ with the span of
/// the printed relations.
pub fn homology(t: &Truncated, relations: &[RelationChain]) -> Result<HomologyReport> {
    let mut report = HomologyReport {
        max_degree: t.max,
        ..HomologyReport::default()
    };
    let n = t.comps.len();
    let sd = |i: usize| t.sign * t.comps[i].degree();

    // Pairs of basis elements grouped by total multidegree.
    let mut pairs: BTreeMap<MultiDegree, Vec<(usize, usize)>> = BTreeMap::new();
    for a in 0..n {
        for b in a..n {
            if sd(a) + sd(b) > t.max {
                break;
            }
            let (ca, cb) = (&t.comps[a], &t.comps[b]);
            let mu = Truncated::add_mdeg(&ca.mdeg, &cb.mdeg);
            let bucket = pairs.entry(mu).or_default();
            for i in 0..ca.dim() {
                for j in 0..cb.dim() {
                    let (u, v) = (ca.offset + i, cb.offset + j);
                    if a == b && (j < i || (j == i && !ca.parities[i].is_odd())) {
                        continue;
                    }
                    bucket.push((u, v));
                }
            }
        }
    }
    let comp_triples = if t.gen_ids.is_none() { triples(t) } else { HashMap::new() };
    let mut brackets = Brackets {
        t,
        memo: HashMap::new(),
        memo_p: HashMap::new(),
    };

    // Relation chains split by multidegree.
    let mut rel_parts: BTreeMap<MultiDegree, Vec<(usize, SparseVec<(usize, usize)>)>> = BTreeMap::new();
    let mut rel_degree: Vec<Option<i64>> = vec![None; relations.len()];
    'rels: for (ri, r) in relations.iter().enumerate() {
        let mut parts: BTreeMap<MultiDegree, Vec<((usize, usize), Q)>> = BTreeMap::new();
        for (c, a, b) in &r.pairs {
            let (ea, eb) = match (t.express(a)?, t.express(b)?) {
                (Some(x), Some(y)) => (x, y),
                _ => {
                    report.skipped.push(format!("{}: beyond degree {}", r.label, t.max));
                    continue 'rels;
                }
            };
            if ea.1.is_empty() || eb.1.is_empty() {
                continue;
            }
            let mu = Truncated::add_mdeg(&ea.0, &eb.0);
            if !t.within(&mu) {
                report.skipped.push(format!("{}: beyond degree {}", r.label, t.max));
                continue 'rels;
            }
            let e = parts.entry(mu).or_default();
            for (u, cu) in &ea.1 {
                for (v, cv) in &eb.1 {
                    if let Some((key, s)) = wedge2(t, *u, *v) {
                        e.push((key, &(&(c * cu) * cv) * &s));
                    }
                }
            }
        }
        let mut any = false;
        for (mu, chain) in parts {
            let chain = normalize(chain);
            if chain.is_empty() {
                continue;
            }
            if !brackets.d1(&chain)?.is_empty() {
                report.skipped.push(format!("{}: not a cycle", r.label));
                continue 'rels;
            }
            rel_degree[ri] = Some(mu[0]);
            rel_parts.entry(mu).or_default().push((ri, chain));
            any = true;
        }
        if !any {
            report.skipped.push(format!("{}: trivial chain", r.label));
        }
    }

    let mut rows: BTreeMap<i64, DegreeRow> = BTreeMap::new();
    for c in &t.comps {
        rows.entry(c.degree()).or_default().h1 += c.dim();
    }
    for mu in pairs.keys().chain(rel_parts.keys()) {
        rows.entry(mu[0]).or_default();
    }
    for d in rel_degree.iter().flatten() {
        rows.entry(*d).or_default().printed += 1;
    }

    for (mu, list) in &pairs {
        let deg = mu[0];
        let mut im1: Echelon<usize> = Echelon::new();
        let mut images = Vec::with_capacity(list.len());
        for &(u, v) in list {
            let img = brackets.get(u, v)?;
            let _ = im1.insert(&img);
            images.push(img);
        }
        let rank1 = im1.rank();
        let dimker = list.len() - rank1;
        rows.get_mut(&deg).expect("row exists").h1 -= rank1;
        if dimker == 0 {
            continue;
        }
        let no_triples = Vec::new();
        let tr = boundary_triples(t, &pairs, comp_triples.get(mu).unwrap_or(&no_triples), mu);
        if boundaries_fill(&mut brackets, list, &tr, dimker)? {
            continue;
        }
        let mut span: Echelon<(usize, usize)> = Echelon::new();
        for &(x, y, z) in &tr {
            let img = brackets.d2(x, y, z)?;
            if !img.is_empty() {
                let _ = span.insert(&img);
            }
            if span.rank() == dimker {
                break;
            }
        }
        let rank2 = span.rank();
        let h2 = dimker - rank2;
        let row = rows.get_mut(&deg).expect("row exists");
        row.h2 += h2;
        if h2 == 0 {
            continue;
        }
        let mut gained = 0;
        if let Some(parts) = rel_parts.get(mu) {
            for (_, chain) in parts {
                if span.insert(chain).is_ok() {
                    gained += 1;
                }
            }
        }
        row.independent += gained;
        if gained < h2 {
            for kv in kernel(&images) {
                let chain: SparseVec<(usize, usize)> = normalize(kv.iter().map(|(i, c)| (list[*i], c.clone())).collect());
                if span.insert(&chain).is_ok() {
                    row.representatives.push(render_chain(t, &chain));
                }
            }
        }
    }
    report.rows = rows
        .into_iter()
        .map(|(d, mut r)| {
            r.degree = d;
            r
        })
        .collect();
    if t.sign < 0 {
        report.rows.reverse();
    }
    Ok(report)
}

fn render_chain(t: &Truncated, chain: &SparseVec<(usize, usize)>) -> String {
    let parts: Vec<String> = chain
        .iter()
        .map(|((u, v), c)| {
            let b = format!("[{},{}]", t.word(*u), t.word(*v));
            if c.is_one() {
                b
            } else {
                format!("{c}*{b}")
            }
        })
        .collect();
    format!("{} = 0", parts.join(" + "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genfun::{ContactRealization, Pairing};
    use crate::superpoly::{Ring, SuperPoly};
    use crate::vfield::VectorField;
    use std::sync::Arc;

    fn po2() -> Vec<(String, AlgebraElement)> {
        let r = Arc::new(ContactRealization::hamiltonian(1, 0, Pairing::Theta).unwrap());
        ["p1", "q1"]
            .iter()
            .map(|n| (n.to_string(), AlgebraElement::gen(&r, SuperPoly::parse(r.ring(), n).unwrap())))
            .collect()
    }

    #[test]
    fn heisenberg() {
        let g = Grading::uniform(1).with_offset(2);
        let t = Truncated::build(&po2(), &g, 4).unwrap();
        assert_eq!(t.dim(), 3);
        let rep = homology(&t, &[]).unwrap();
        let h1: usize = rep.rows.iter().map(|r| r.h1).sum();
        let h2: usize = rep.rows.iter().map(|r| r.h2).sum();
        assert_eq!((h1, h2), (2, 2));
        assert_eq!(rep.row(-3).unwrap().h2, 2);
        assert_eq!(rep.row(-3).unwrap().representatives.len(), 2);
    }

    #[test]
    fn abelian() {
        let r = Ring::from_names(&[("x1", false), ("x2", false)]).unwrap();
        let gens: Vec<(String, AlgebraElement)> = ["d/dx1", "d/dx2"]
            .iter()
            .enumerate()
            .map(|(i, s)| (format!("D{}", i + 1), AlgebraElement::Field(VectorField::parse(&r, s).unwrap())))
            .collect();
        let t = Truncated::build(&gens, &Grading::uniform(1), 8).unwrap();
        let rel = RelationChain {
            label: "[D1,D2]".into(),
            pairs: vec![(Q::one(), gens[0].1.clone(), gens[1].1.clone())],
        };
        let rep = homology(&t, &[rel]).unwrap();
        let row = rep.row(-2).unwrap();
        assert_eq!((row.h2, row.printed, row.independent), (1, 1, 1));
        assert!(rep.complete());
    }

    #[test]
    fn odd_generator_squares() {
        // A single odd generator with [D,D] = 0: H₂ is spanned by D∧D.
        let r = Ring::from_names(&[("th", true)]).unwrap();
        let gens = vec![("D".to_string(), AlgebraElement::Field(VectorField::parse(&r, "d/dth").unwrap()))];
        let t = Truncated::build(&gens, &Grading::uniform(1), 4).unwrap();
        let rep = homology(&t, &[]).unwrap();
        assert_eq!(rep.row(-2).unwrap().h2, 1);
    }

    fn k12_negative() -> Vec<(String, AlgebraElement)> {
        let r = Arc::new(ContactRealization::contact(1, 2, Pairing::Theta).unwrap());
        ["p1", "q1", "theta1", "theta2"]
            .iter()
            .map(|n| (n.to_string(), AlgebraElement::gen(&r, SuperPoly::parse(r.ring(), n).unwrap())))
            .collect()
    }

    fn vect21_positive() -> Vec<(String, AlgebraElement)> {
        let r = Ring::from_names(&[("x", false), ("y", false), ("th", true)]).unwrap();
        ["x^2*d/dy", "y^2*d/dx", "x*th*d/dth", "x*y*d/dth", "th*y*d/dx"]
            .iter()
            .enumerate()
            .map(|(i, s)| (format!("G{i}"), AlgebraElement::Field(VectorField::parse(&r, s).unwrap())))
            .collect()
    }

    fn grading_for(which: usize) -> (Vec<(String, AlgebraElement)>, Grading, i64) {
        match which {
            0 => (k12_negative(), Grading::uniform(1).set("t", 2), 4),
            _ => (vect21_positive(), Grading::uniform(1), 3),
        }
    }

    proptest::proptest! {
        #![proptest_config(proptest::test_runner::Config::with_cases(200))]

        #[test]
        fn boundaries_are_cycles(which in 0usize..2, a in 0usize..1000, b in 0usize..1000, c in 0usize..1000) {
            let (gens, g, max) = grading_for(which);
            let t = Truncated::build(&gens, &g, max).unwrap();
            let n = t.dim();
            let (x, y, z) = (a % n, b % n, c % n);
            proptest::prop_assume!(t.triple_within(x, y, z));
            proptest::prop_assert!(t.boundary_of_boundary(x, y, z).unwrap().is_empty());
        }
    }

    #[test]
    fn generator_triples_span_the_boundaries() {
        for which in 0..2 {
            let (gens, g, max) = grading_for(which);
            let mut t = Truncated::build(&gens, &g, max).unwrap();
            let fast = homology(&t, &[]).unwrap();
            t.gen_ids = None;
            let full = homology(&t, &[]).unwrap();
            assert_eq!(fast.rows, full.rows);
            assert!(fast.rows.iter().any(|r| r.h2 > 0));
        }
    }

    #[test]
    fn independent_of_generator_order() {
        for which in 0..2 {
            let (mut gens, g, max) = grading_for(which);
            let a = homology(&Truncated::build(&gens, &g, max).unwrap(), &[]).unwrap();
            gens.reverse();
            let b = homology(&Truncated::build(&gens, &g, max).unwrap(), &[]).unwrap();
            let counts = |r: &HomologyReport| r.rows.iter().map(|x| (x.degree, x.h1, x.h2)).collect::<Vec<_>>();
            assert_eq!(counts(&a), counts(&b));
        }
    }
}
