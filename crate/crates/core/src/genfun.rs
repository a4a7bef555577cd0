//! Generating functions of contact, pericontact, Hamiltonian and periplectic
//! vector fields and the brackets they induce.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formsreal::OneForm;
use crate::linalg::Echelon;
use crate::rational::Q;
use crate::superpoly::{Monomial, Parity, Ring, RingRef, SuperPoly};
use crate::vfield::VectorField;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RealizationKind {
    /// Contact: `K_f` on `(t, p, q, θ)`.
    K,
    /// Pericontact: `M_f` on `(q, ξ, τ)`.
    M,
    /// Poisson functions with Hamiltonian fields `H_f` on `(p, q, θ)`.
    Po,
    /// Periplectic: `Le_f` on `(q, ξ)`.
    Le,
}

/// How the odd coordinates of a contact or Poisson realization pair up.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Pairing {
    /// `θ_1, …, θ_m` with `Σ θ dθ`.
    Theta,
    /// `ξ_i, η_i` pairs, plus a single `θ` when `m` is odd.
    XiEta,
}

/// A coordinate system for one of the generating-function realizations.
#[derive(Clone, Debug, PartialEq)]
pub struct ContactRealization {
    pub kind: RealizationKind,
    pub pairing: Pairing,
    /// Number of `(p, q)` pairs, or of `(q, ξ)` pairs for `M` and `Le`.
    pub n: usize,
    /// Number of odd coordinates besides `ξ` for `M`/`Le` (always 0 there).
    pub m: usize,
    ring: RingRef,
    t: Option<usize>,
    p: Vec<usize>,
    q: Vec<usize>,
    xi: Vec<usize>,
    eta: Vec<usize>,
    theta: Vec<usize>,
}

fn sign(p: Parity) -> Q {
    Q::sign(p.is_odd())
}

/// Runs `op` on each parity part of `f` and sums the results.
fn by_parity<T>(f: &SuperPoly, zero: T, add: impl Fn(T, T) -> T, op: impl Fn(&SuperPoly, Parity) -> T) -> T {
    let mut acc = zero;
    for p in [Parity::Even, Parity::Odd] {
        let part = f.parity_part(p);
        if !part.is_zero() {
            acc = add(acc, op(&part, p));
        }
    }
    acc
}

impl ContactRealization {
    /// `k(2n+1|m)` with coordinates `t, p_i, q_i` and the odd ones.
    pub fn contact(n: usize, m: usize, pairing: Pairing) -> Result<ContactRealization> {
        Self::build(RealizationKind::K, n, m, pairing, 1)
    }

    /// `po(2n|m)` / `h(2n|m)`.
    pub fn hamiltonian(n: usize, m: usize, pairing: Pairing) -> Result<ContactRealization> {
        Self::build(RealizationKind::Po, n, m, pairing, 1)
    }

    /// `m(n)` with coordinates `q_b, …, ξ_b, …, τ` indexed from `base`.
    pub fn pericontact(n: usize, base: usize) -> Result<ContactRealization> {
        Self::build(RealizationKind::M, n, 0, Pairing::Theta, base)
    }

    /// `le(n)` with coordinates `q_b, …, ξ_b, …` indexed from `base`.
    pub fn periplectic(n: usize, base: usize) -> Result<ContactRealization> {
        Self::build(RealizationKind::Le, n, 0, Pairing::Theta, base)
    }

    pub fn build(kind: RealizationKind, n: usize, m: usize, pairing: Pairing, base: usize) -> Result<ContactRealization> {
        let mut names: Vec<(String, bool)> = Vec::new();
        let mut r = ContactRealization {
            kind,
            pairing,
            n,
            m,
            ring: Ring::from_names(&[])?,
            t: None,
            p: vec![],
            q: vec![],
            xi: vec![],
            eta: vec![],
            theta: vec![],
        };
        let push = |name: String, odd: bool, names: &mut Vec<(String, bool)>| {
            names.push((name, odd));
            names.len() - 1
        };
        match kind {
            RealizationKind::K | RealizationKind::Po => {
                if kind == RealizationKind::K {
                    r.t = Some(push("t".into(), false, &mut names));
                }
                for i in 0..n {
                    r.p.push(push(format!("p{}", i + base), false, &mut names));
                }
                for i in 0..n {
                    r.q.push(push(format!("q{}", i + base), false, &mut names));
                }
                match pairing {
                    Pairing::Theta => {
                        for i in 0..m {
                            r.theta.push(push(format!("theta{}", i + base), true, &mut names));
                        }
                    }
                    Pairing::XiEta => {
                        for i in 0..m / 2 {
                            r.xi.push(push(format!("xi{}", i + base), true, &mut names));
                        }
                        for i in 0..m / 2 {
                            r.eta.push(push(format!("eta{}", i + base), true, &mut names));
                        }
                        if m % 2 == 1 {
                            r.theta.push(push("theta".into(), true, &mut names));
                        }
                    }
                }
            }
            RealizationKind::M | RealizationKind::Le => {
                for i in 0..n {
                    r.q.push(push(format!("q{}", i + base), false, &mut names));
                }
                for i in 0..n {
                    r.xi.push(push(format!("xi{}", i + base), true, &mut names));
                }
                if kind == RealizationKind::M {
                    r.t = Some(push("tau".into(), true, &mut names));
                }
            }
        }
        let spec: Vec<(&str, bool)> = names.iter().map(|(s, o)| (s.as_str(), *o)).collect();
        r.ring = Ring::from_names(&spec)?;
        Ok(r)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    /// Index of `t` (contact) or `τ` (pericontact).
    pub fn tau(&self) -> usize {
        self.t.expect("realization has no t/τ coordinate")
    }

    pub fn t_index(&self) -> Option<usize> {
        self.t
    }

    /// Parity of the field generated by a function of parity `p`.
    pub fn field_parity(&self, p: Parity) -> Parity {
        match self.kind {
            RealizationKind::K | RealizationKind::Po => p,
            RealizationKind::M | RealizationKind::Le => p.flip(),
        }
    }

    /// `E(f)` with `E` the Euler operator on all coordinates except `t`/`τ`.
    pub fn euler(&self, f: &SuperPoly) -> SuperPoly {
        let ex: Vec<usize> = self.t.into_iter().collect();
        VectorField::euler(&self.ring, &ex).apply(f)
    }

    /// `(2 − E)(f)`.
    pub fn two_minus_e(&self, f: &SuperPoly) -> SuperPoly {
        f.scale(&Q::from_int(2)).sub(&self.euler(f))
    }

    fn d(&self, f: &SuperPoly, i: usize) -> SuperPoly {
        f.partial(i)
    }

    /// `H_f`; derivatives in `t` are ignored.
    pub fn hamilton_field(&self, f: &SuperPoly) -> Result<VectorField> {
        if !matches!(self.kind, RealizationKind::K | RealizationKind::Po) {
            return Err(Error::Realization("H_f needs a contact or Poisson realization".into()));
        }
        let ring = &self.ring;
        Ok(by_parity(f, VectorField::zero(ring), |a, b| a.add(&b), |f, pf| {
            let mut c: Vec<SuperPoly> = (0..ring.len()).map(|_| SuperPoly::zero(ring)).collect();
            for (&p, &q) in self.p.iter().zip(&self.q) {
                c[q] = c[q].add(&self.d(f, p));
                c[p] = c[p].sub(&self.d(f, q));
            }
            let s = -sign(pf);
            for (&x, &y) in self.xi.iter().zip(&self.eta) {
                c[y] = c[y].add_scaled(&s, &self.d(f, x));
                c[x] = c[x].add_scaled(&s, &self.d(f, y));
            }
            for &th in &self.theta {
                c[th] = c[th].add_scaled(&s, &self.d(f, th));
            }
            VectorField::from_components(ring, c).expect("same ring")
        }))
    }

    /// `K_f = (2 − E)(f) ∂_t − H_f + ∂f/∂t · E`.
    pub fn contact_field(&self, f: &SuperPoly) -> Result<VectorField> {
        if self.kind != RealizationKind::K {
            return Err(Error::Realization("K_f needs a contact realization".into()));
        }
        let t = self.tau();
        let e = VectorField::euler(&self.ring, &[t]);
        let mut k = VectorField::from_component(&self.ring, t, self.two_minus_e(f));
        k = k.sub(&self.hamilton_field(f)?);
        k = k.add(&e.mul_left(&f.partial(t)));
        Ok(k)
    }

    /// `Le_f = Σ(∂f/∂q_i ∂_{ξ_i} + (−1)^{p(f)} ∂f/∂ξ_i ∂_{q_i})`.
    pub fn le_field(&self, f: &SuperPoly) -> Result<VectorField> {
        if !matches!(self.kind, RealizationKind::M | RealizationKind::Le) {
            return Err(Error::Realization("Le_f needs a pericontact or periplectic realization".into()));
        }
        let ring = &self.ring;
        Ok(by_parity(f, VectorField::zero(ring), |a, b| a.add(&b), |f, pf| {
            let mut c: Vec<SuperPoly> = (0..ring.len()).map(|_| SuperPoly::zero(ring)).collect();
            let s = sign(pf);
            for (&q, &x) in self.q.iter().zip(&self.xi) {
                c[x] = c[x].add(&self.d(f, q));
                c[q] = c[q].add_scaled(&s, &self.d(f, x));
            }
            VectorField::from_components(ring, c).expect("same ring")
        }))
    }

    /// `M_f = (2 − E)(f) ∂_τ − Le_f − (−1)^{p(f)} ∂f/∂τ · E`.
    pub fn pericontact_field(&self, f: &SuperPoly) -> Result<VectorField> {
        if self.kind != RealizationKind::M {
            return Err(Error::Realization("M_f needs a pericontact realization".into()));
        }
        let tau = self.tau();
        let e = VectorField::euler(&self.ring, &[tau]);
        Ok(by_parity(f, VectorField::zero(&self.ring), |a, b| a.add(&b), |f, pf| {
            let mut m = VectorField::from_component(&self.ring, tau, self.two_minus_e(f));
            m = m.sub(&self.le_field(f).expect("kind checked"));
            m.sub(&e.mul_left(&f.partial(tau)).scale(&sign(pf)))
        }))
    }

    /// The field generated by `f` in this realization.
    pub fn field(&self, f: &SuperPoly) -> Result<VectorField> {
        match self.kind {
            RealizationKind::K => self.contact_field(f),
            RealizationKind::M => self.pericontact_field(f),
            RealizationKind::Po => self.hamilton_field(f),
            RealizationKind::Le => self.le_field(f),
        }
    }

    /// Poisson bracket on functions of `(p, q, θ)`.
    pub fn poisson(&self, f: &SuperPoly, g: &SuperPoly) -> Result<SuperPoly> {
        if !matches!(self.kind, RealizationKind::K | RealizationKind::Po) {
            return Err(Error::Realization("Poisson bracket needs a contact or Poisson realization".into()));
        }
        Ok(by_parity(f, SuperPoly::zero(&self.ring), |a, b| a.add(&b), |f, pf| {
            let mut acc = SuperPoly::zero(&self.ring);
            for (&p, &q) in self.p.iter().zip(&self.q) {
                acc = acc.add(&f.partial(p).mul(&g.partial(q)));
                acc = acc.sub(&f.partial(q).mul(&g.partial(p)));
            }
            let mut odd = SuperPoly::zero(&self.ring);
            for (&x, &y) in self.xi.iter().zip(&self.eta) {
                odd = odd.add(&f.partial(x).mul(&g.partial(y)));
                odd = odd.add(&f.partial(y).mul(&g.partial(x)));
            }
            for &th in &self.theta {
                odd = odd.add(&f.partial(th).mul(&g.partial(th)));
            }
            acc.add_scaled(&-sign(pf), &odd)
        }))
    }

    /// Buttin bracket `Σ(∂f/∂q_i ∂g/∂ξ_i + (−1)^{p(f)} ∂f/∂ξ_i ∂g/∂q_i)`.
    pub fn buttin(&self, f: &SuperPoly, g: &SuperPoly) -> Result<SuperPoly> {
        if !matches!(self.kind, RealizationKind::M | RealizationKind::Le) {
            return Err(Error::Realization("Buttin bracket needs a pericontact or periplectic realization".into()));
        }
        Ok(by_parity(f, SuperPoly::zero(&self.ring), |a, b| a.add(&b), |f, pf| {
            let mut acc = SuperPoly::zero(&self.ring);
            for (&q, &x) in self.q.iter().zip(&self.xi) {
                acc = acc.add(&f.partial(q).mul(&g.partial(x)));
                acc = acc.add_scaled(&sign(pf), &f.partial(x).mul(&g.partial(q)));
            }
            acc
        }))
    }

    /// Contact bracket `(2−E)(f) ∂g/∂t − ∂f/∂t (2−E)(g) − {f, g}_{P.b.}`.
    pub fn kb(&self, f: &SuperPoly, g: &SuperPoly) -> Result<SuperPoly> {
        if self.kind != RealizationKind::K {
            return Err(Error::Realization("contact bracket needs a contact realization".into()));
        }
        let t = self.tau();
        let a = self.two_minus_e(f).mul(&g.partial(t));
        let b = f.partial(t).mul(&self.two_minus_e(g));
        Ok(a.sub(&b).sub(&self.poisson(f, g)?))
    }

    /// Pericontact bracket `(2−E)(f) ∂g/∂τ + (−1)^{p(f)} ∂f/∂τ (2−E)(g) − {f, g}_{B.b.}`.
    pub fn mb(&self, f: &SuperPoly, g: &SuperPoly) -> Result<SuperPoly> {
        if self.kind != RealizationKind::M {
            return Err(Error::Realization("pericontact bracket needs a pericontact realization".into()));
        }
        let tau = self.tau();
        let bb = self.buttin(f, g)?;
        Ok(by_parity(f, SuperPoly::zero(&self.ring), |a, b| a.add(&b), |f, pf| {
            let a = self.two_minus_e(f).mul(&g.partial(tau));
            let b = f.partial(tau).mul(&self.two_minus_e(g));
            a.add_scaled(&sign(pf), &b)
        })
        .sub(&bb))
    }

    /// The bracket of generating functions matching the realization.
    pub fn bracket(&self, f: &SuperPoly, g: &SuperPoly) -> Result<SuperPoly> {
        match self.kind {
            RealizationKind::K => self.kb(f, g),
            RealizationKind::M => self.mb(f, g),
            RealizationKind::Po => self.poisson(f, g),
            RealizationKind::Le => self.buttin(f, g),
        }
    }

    /// `Δ = Σ ∂²/∂q_i∂ξ_i`.
    pub fn odd_laplacian(&self, f: &SuperPoly) -> SuperPoly {
        let mut acc = SuperPoly::zero(&self.ring);
        for (&q, &x) in self.q.iter().zip(&self.xi) {
            acc = acc.add(&f.partial(x).partial(q));
        }
        acc
    }

    /// The form preserved by the fields: for `K`,
    /// `dt − Σ(p dq − q dp) − Σ(ξ dη + η dξ) − Σ θ dθ`, so that
    /// `L_{K_f} α = 2 ∂f/∂t · α`; for `M`, `dτ − Σ(ξ dq + q dξ)`, so that
    /// `L_{M_f} α = −(−1)^{p(f)} 2 ∂f/∂τ · α`.
    pub fn contact_form(&self) -> Result<OneForm> {
        let ring = &self.ring;
        let v = |i: usize| SuperPoly::var(ring, i);
        let one = SuperPoly::one(ring);
        match self.kind {
            RealizationKind::K => {
                let mut a = OneForm::zero(ring).with(self.tau(), one);
                for (&p, &q) in self.p.iter().zip(&self.q) {
                    a = a.with(q, v(p).neg()).with(p, v(q));
                }
                for (&x, &y) in self.xi.iter().zip(&self.eta) {
                    a = a.with(y, v(x).neg()).with(x, v(y).neg());
                }
                for &th in &self.theta {
                    a = a.with(th, v(th).neg());
                }
                Ok(a)
            }
            RealizationKind::M => {
                let mut a = OneForm::zero(ring).with(self.tau(), one);
                // ξ dq = −dq ξ.
                for (&q, &x) in self.q.iter().zip(&self.xi) {
                    a = a.with(q, v(x)).with(x, v(q).neg());
                }
                Ok(a)
            }
            _ => Err(Error::Realization("no contact form for this realization".into())),
        }
    }

    /// Linear conditions on a weight `ψ` of the coordinates (plus one
    /// extra slot at index `ring.len()`) under which every generating
    /// function monomial `x^a` gives a torus weight `ψ(a) − ψ(anchor)`.
    pub fn weight_constraints(&self) -> Vec<Vec<i64>> {
        let n = self.ring.len() + 1;
        let anchor = self.weight_anchor();
        let mut rows = Vec::new();
        let mut row = |pairs: &[(usize, i64)]| {
            let mut r = vec![0i64; n];
            for &(i, c) in pairs {
                r[i] += c;
            }
            rows.push(r);
        };
        for (&p, &q) in self.p.iter().zip(&self.q) {
            row(&[(p, 1), (q, 1), (anchor, -1)]);
        }
        match self.kind {
            RealizationKind::K | RealizationKind::Po => {
                for (&x, &y) in self.xi.iter().zip(&self.eta) {
                    row(&[(x, 1), (y, 1), (anchor, -1)]);
                }
                for &th in &self.theta {
                    row(&[(th, 2), (anchor, -1)]);
                }
            }
            RealizationKind::M | RealizationKind::Le => {
                for (&q, &x) in self.q.iter().zip(&self.xi) {
                    row(&[(q, 1), (x, 1), (anchor, -1)]);
                }
            }
        }
        if anchor != n - 1 {
            row(&[(n - 1, 1)]);
        }
        rows
    }

    /// Slot whose weight is subtracted from a monomial's: `t`, `τ`, or the
    /// extra slot `ring.len()` when there is neither.
    pub fn weight_anchor(&self) -> usize {
        self.t.unwrap_or(self.ring.len())
    }

    /// A generating function `f` with `field(f) = d`, if one exists.
    pub fn recover(&self, d: &VectorField) -> Result<Option<SuperPoly>> {
        let ring = &self.ring;
        let mut cands: Vec<Monomial> = Vec::new();
        for (j, c) in d.terms() {
            for (m, _) in c.terms() {
                cands.push(*m);
                for i in 0..ring.len() {
                    let x = SuperPoly::var(ring, i);
                    let mono = SuperPoly::monomial(ring, *m, Q::one()).mul(&x);
                    if let Some((mm, _)) = mono.terms().first() {
                        cands.push(*mm);
                    }
                }
            }
            let _ = j;
        }
        cands.sort();
        cands.dedup();
        let mut ech = Echelon::with_transform();
        for m in &cands {
            let img = self.field(&SuperPoly::monomial(ring, *m, Q::one()))?;
            let _ = ech.insert(&field_coords(&img));
        }
        Ok(ech.express(&field_coords(d)).map(|comb| {
            let terms = comb.into_iter().map(|(i, c)| (cands[i], c)).collect();
            SuperPoly::from_terms(ring, terms)
        }))
    }
}

/// Sparse coordinates of a field keyed by `(coordinate, monomial)`.
pub(crate) fn field_coords(d: &VectorField) -> Vec<((u32, Monomial), Q)> {
    let mut out = Vec::new();
    for (j, c) in d.terms() {
        for (m, q) in c.terms() {
            out.push(((j as u32, *m), q.clone()));
        }
    }
    out
}

/// A generating function together with its realization.
#[derive(Clone, Debug, PartialEq)]
pub struct GenFunction {
    pub realization: Arc<ContactRealization>,
    pub f: SuperPoly,
}

impl GenFunction {
    pub fn new(realization: Arc<ContactRealization>, f: SuperPoly) -> GenFunction {
        GenFunction { realization, f }
    }

    pub fn parity(&self) -> Result<Parity> {
        Ok(self.realization.field_parity(self.f.parity()?))
    }

    pub fn field(&self) -> Result<VectorField> {
        self.realization.field(&self.f)
    }

    pub fn bracket(&self, o: &GenFunction) -> Result<GenFunction> {
        if *self.realization != *o.realization {
            return Err(Error::RingMismatch);
        }
        Ok(GenFunction::new(self.realization.clone(), self.realization.bracket(&self.f, &o.f)?))
    }
}
