//! Polynomial differential forms and the e(5|10) realization: divergence-free
//! fields on five even coordinates plus closed 2-forms, the bracket of two
//! 2-forms being their product read as a field through the volume form.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::Echelon;
use crate::rational::Q;
use crate::superpoly::{fmt_signed_terms, same_ring, Monomial, Parity, RingRef, SuperPoly};
use crate::vfield::VectorField;

/// A 1-form `Σ dx_j · a_j` over a ring of any parity, with `p(dx) = p(x) + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneForm {
    ring: RingRef,
    comps: Vec<SuperPoly>,
}

impl OneForm {
    pub fn zero(ring: &RingRef) -> OneForm {
        OneForm {
            ring: ring.clone(),
            comps: vec![SuperPoly::zero(ring); ring.len()],
        }
    }

    /// Sets the coefficient standing to the right of `dx_j`.
    pub fn with(mut self, j: usize, a: SuperPoly) -> OneForm {
        self.comps[j] = self.comps[j].add(&a);
        self
    }

    pub fn component(&self, j: usize) -> &SuperPoly {
        &self.comps[j]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(SuperPoly::is_zero)
    }

    /// `df = Σ dx_j ∂f/∂x_j`.
    pub fn differential(f: &SuperPoly) -> OneForm {
        let ring = f.ring();
        OneForm {
            ring: ring.clone(),
            comps: (0..ring.len()).map(|j| f.partial(j)).collect(),
        }
    }

    /// Right multiplication by a function.
    pub fn mul_right(&self, g: &SuperPoly) -> OneForm {
        OneForm {
            ring: self.ring.clone(),
            comps: self.comps.iter().map(|a| a.mul(g)).collect(),
        }
    }

    /// Left multiplication `g·α` for homogeneous `g`.
    pub fn mul_left(&self, g: &SuperPoly) -> Result<OneForm> {
        let pg = g.parity()?;
        Ok(OneForm {
            ring: self.ring.clone(),
            comps: self
                .comps
                .iter()
                .enumerate()
                .map(|(j, a)| {
                    let s = Q::sign(pg.both_odd(self.ring.parity(j).flip()));
                    g.mul(a).scale(&s)
                })
                .collect(),
        })
    }

    pub fn scale(&self, c: &Q) -> OneForm {
        OneForm {
            ring: self.ring.clone(),
            comps: self.comps.iter().map(|a| a.scale(c)).collect(),
        }
    }

    pub fn sub(&self, o: &OneForm) -> OneForm {
        OneForm {
            ring: self.ring.clone(),
            comps: self.comps.iter().zip(&o.comps).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    /// `L_D α` from `L_D(df) = (−1)^{p(D)} d(D f)` and the Leibniz rule.
    pub fn lie_derivative(&self, d: &VectorField) -> Result<OneForm> {
        let pd = d.parity()?;
        let s = Q::sign(pd.is_odd());
        let ring = &self.ring;
        let mut out = OneForm::zero(ring);
        for (j, a) in self.comps.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let ddj = OneForm::differential(d.component(j)).mul_right(a).scale(&s);
            out = OneForm {
                ring: ring.clone(),
                comps: out.comps.iter().zip(&ddj.comps).map(|(x, y)| x.add(y)).collect(),
            };
            let pdx = ring.parity(j).flip();
            let sj = Q::sign(pd.both_odd(pdx));
            out.comps[j] = out.comps[j].add_scaled(&sj, &d.apply(a));
        }
        Ok(out)
    }
}

/// A differential form over a ring of even coordinates, stored as
/// `Σ f_I dx_I` with `I` an increasing index set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DiffForm {
    ring: RingRef,
    terms: BTreeMap<u32, SuperPoly>,
}

fn merge_sign(a: u32, b: u32) -> bool {
    let mut neg = false;
    let mut bb = b;
    while bb != 0 {
        let j = bb.trailing_zeros();
        bb &= bb - 1;
        if (a >> (j + 1)).count_ones() % 2 == 1 {
            neg = !neg;
        }
    }
    neg
}

impl DiffForm {
    pub fn zero(ring: &RingRef) -> Result<DiffForm> {
        if ring.n_odd() > 0 {
            return Err(Error::Realization("differential forms need even coordinates".into()));
        }
        Ok(DiffForm {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        })
    }

    /// `f dx_{i_1} ∧ ⋯ ∧ dx_{i_k}` in the given order.
    pub fn term(f: SuperPoly, idx: &[usize]) -> Result<DiffForm> {
        let mut out = DiffForm::zero(f.ring())?;
        let mut mask = 0u32;
        let mut neg = false;
        for &i in idx {
            let b = 1u32 << i;
            if mask & b != 0 {
                return Ok(out);
            }
            if merge_sign(mask, b) {
                neg = !neg;
            }
            mask |= b;
        }
        if !f.is_zero() {
            out.terms.insert(mask, if neg { f.neg() } else { f });
        }
        Ok(out)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &SuperPoly)> {
        self.terms.iter().map(|(m, f)| (*m, f))
    }

    fn insert(&mut self, mask: u32, f: SuperPoly) {
        let e = self.terms.entry(mask).or_insert_with(|| SuperPoly::zero(f.ring()));
        *e = e.add(&f);
        if e.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn add(&self, o: &DiffForm) -> DiffForm {
        assert!(same_ring(&self.ring, &o.ring), "ring mismatch");
        let mut out = self.clone();
        for (m, f) in &o.terms {
            out.insert(*m, f.clone());
        }
        out
    }

    pub fn scale(&self, c: &Q) -> DiffForm {
        let mut out = DiffForm {
            ring: self.ring.clone(),
            terms: BTreeMap::new(),
        };
        if !c.is_zero() {
            for (m, f) in &self.terms {
                out.terms.insert(*m, f.scale(c));
            }
        }
        out
    }

    pub fn sub(&self, o: &DiffForm) -> DiffForm {
        self.add(&o.scale(&Q::from_int(-1)))
    }

    /// Form degree if homogeneous.
    pub fn degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| m.count_ones());
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn wedge(&self, o: &DiffForm) -> DiffForm {
        let mut out = DiffForm {
            ring: self.ring.clone(),
            terms: BTreeMap::new(),
        };
        for (ma, fa) in &self.terms {
            for (mb, fb) in &o.terms {
                if ma & mb != 0 {
                    continue;
                }
                let f = fa.mul(fb);
                out.insert(ma | mb, if merge_sign(*ma, *mb) { f.neg() } else { f });
            }
        }
        out
    }

    /// `d(f dx_I) = Σ ∂f/∂x_j dx_j ∧ dx_I`.
    pub fn ext_d(&self) -> DiffForm {
        let mut out = DiffForm {
            ring: self.ring.clone(),
            terms: BTreeMap::new(),
        };
        for (m, f) in &self.terms {
            for j in 0..self.ring.len() {
                let b = 1u32 << j;
                if m & b != 0 {
                    continue;
                }
                let g = f.partial(j);
                if g.is_zero() {
                    continue;
                }
                out.insert(m | b, if merge_sign(b, *m) { g.neg() } else { g });
            }
        }
        out
    }

    /// `d` of a function.
    pub fn d_function(f: &SuperPoly) -> Result<DiffForm> {
        Ok(DiffForm::term(f.clone(), &[])?.ext_d())
    }

    /// `L_D ω` for an even field `D`.
    pub fn lie_derivative(&self, d: &VectorField) -> Result<DiffForm> {
        if d.parity()? != Parity::Even {
            return Err(Error::Realization("forms over even coordinates need an even field".into()));
        }
        let mut out = DiffForm {
            ring: self.ring.clone(),
            terms: BTreeMap::new(),
        };
        for (m, f) in &self.terms {
            let df = d.apply(f);
            if !df.is_zero() {
                out.insert(*m, df);
            }
            // Replace one dx_i at a time by d(D_i).
            let idx: Vec<usize> = (0..self.ring.len()).filter(|j| m >> j & 1 == 1).collect();
            for s in 0..idx.len() {
                let ddi = DiffForm::d_function(d.component(idx[s]))?;
                let before = DiffForm::term(f.clone(), &idx[..s])?;
                let after = DiffForm::term(SuperPoly::one(&self.ring), &idx[s + 1..])?;
                out = out.add(&before.wedge(&ddi).wedge(&after));
            }
        }
        Ok(out)
    }

    /// Reads a top-minus-one form as a field:
    /// `dx_i dx_j dx_k dx_l ↦ sign(ijklm) ∂/∂x_m`.
    pub fn vol_identify(&self) -> Result<VectorField> {
        let n = self.ring.len();
        let mut out = VectorField::zero(&self.ring);
        for (mask, f) in &self.terms {
            if mask.count_ones() as usize + 1 != n {
                return Err(Error::Realization(format!(
                    "volume identification needs a {}-form",
                    n.saturating_sub(1)
                )));
            }
            let full = (1u32 << n) - 1;
            let m = (full & !mask).trailing_zeros() as usize;
            // (i j k l m) reaches the identity after n-1-m transpositions.
            let neg = (n - 1 - m) % 2 == 1;
            let g = if neg { f.neg() } else { f.clone() };
            out = out.add(&VectorField::from_component(&self.ring, m, g));
        }
        Ok(out)
    }

    /// A 1-form `ω` with `dω = self` among forms whose coefficients have
    /// degree at most one more than those of `self`, if one exists.
    pub fn primitive(&self) -> Result<Option<DiffForm>> {
        let Some(k) = self.degree() else {
            return Ok(Some(DiffForm::zero(&self.ring)?));
        };
        if k == 0 {
            return Ok(None);
        }
        let maxdeg = self.terms.values().filter_map(|f| f.max_degree()).max().unwrap_or(0) + 1;
        let n = self.ring.len();
        let mut cands: Vec<DiffForm> = Vec::new();
        for mask in 0u32..(1 << n) {
            if mask.count_ones() != k - 1 {
                continue;
            }
            for m in monomials_upto(&self.ring, maxdeg) {
                let idx: Vec<usize> = (0..n).filter(|j| mask >> j & 1 == 1).collect();
                cands.push(DiffForm::term(SuperPoly::monomial(&self.ring, m, Q::one()), &idx)?);
            }
        }
        let mut ech = Echelon::with_transform();
        for c in &cands {
            let _ = ech.insert(&c.ext_d().coords());
        }
        Ok(ech.express(&self.coords()).map(|comb| {
            comb.iter()
                .fold(DiffForm::zero(&self.ring).expect("even ring"), |acc, (i, c)| {
                    acc.add(&cands[*i].scale(c))
                })
        }))
    }

    pub(crate) fn coords(&self) -> Vec<((u32, Monomial), Q)> {
        let mut out = Vec::new();
        for (mask, f) in &self.terms {
            for (m, c) in f.terms() {
                out.push(((*mask, *m), c.clone()));
            }
        }
        out
    }

    /// Parses `x5*dx4^dx5 - dx1^dx2`.
    pub fn parse(ring: &RingRef, s: &str) -> Result<DiffForm> {
        let mut out = DiffForm::zero(ring)?;
        for t in crate::parse::parse_geom(ring, s)? {
            if t.deriv.is_some() {
                return Err(Error::Parse {
                    pos: 0,
                    msg: "d/dx in a differential form".into(),
                });
            }
            out = out.add(&DiffForm::term(t.coeff, &t.diffs)?);
        }
        Ok(out)
    }
}

fn monomials_upto(ring: &RingRef, maxdeg: u32) -> Vec<Monomial> {
    let n = ring.len();
    let mut out = Vec::new();
    let mut e = vec![0u32; n];
    fn rec(i: usize, left: u32, e: &mut Vec<u32>, ring: &RingRef, out: &mut Vec<Monomial>) {
        if i == e.len() {
            if let Some(m) = ring.monomial(e) {
                out.push(m);
            }
            return;
        }
        let cap = if ring.parity(i).is_odd() { left.min(1) } else { left };
        for k in 0..=cap {
            e[i] = k;
            rec(i + 1, left - k, e, ring, out);
        }
        e[i] = 0;
    }
    rec(0, maxdeg, &mut e, ring, &mut out);
    out
}

impl fmt::Display for DiffForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut items = Vec::new();
        for (mask, g) in &self.terms {
            let diffs: Vec<String> = (0..self.ring.len())
                .filter(|j| mask >> j & 1 == 1)
                .map(|j| format!("d{}", self.ring.var(j).name))
                .collect();
            let wedge = diffs.join("^");
            for (m, c) in g.terms() {
                let mono = SuperPoly::monomial(&self.ring, *m, Q::one()).to_string();
                let body = match (mono.as_str(), wedge.is_empty()) {
                    ("1", true) => String::new(),
                    ("1", false) => wedge.clone(),
                    (_, true) => mono,
                    (_, false) => format!("{mono}*{wedge}"),
                };
                items.push((c.clone(), body));
            }
        }
        f.write_str(&fmt_signed_terms(items))
    }
}

impl fmt::Debug for DiffForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiffForm({self})")
    }
}

/// An element of e(5|10): a divergence-free field plus a closed 2-form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct E510Element {
    pub even: VectorField,
    pub odd: DiffForm,
}

impl E510Element {
    pub fn new(even: VectorField, odd: DiffForm) -> Result<E510Element> {
        if !same_ring(even.ring(), odd.ring()) {
            return Err(Error::RingMismatch);
        }
        if !odd.is_zero() && odd.degree() != Some(2) {
            return Err(Error::Realization("odd part must be a 2-form".into()));
        }
        Ok(E510Element { even, odd })
    }

    pub fn zero(ring: &RingRef) -> Result<E510Element> {
        Ok(E510Element {
            even: VectorField::zero(ring),
            odd: DiffForm::zero(ring)?,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.even.is_zero() && self.odd.is_zero()
    }

    pub fn parity(&self) -> Result<Parity> {
        match (self.even.is_zero(), self.odd.is_zero()) {
            (_, true) => Ok(Parity::Even),
            (true, false) => Ok(Parity::Odd),
            (false, false) => Err(Error::Inhomogeneous),
        }
    }

    pub fn add(&self, o: &E510Element) -> E510Element {
        E510Element {
            even: self.even.add(&o.even),
            odd: self.odd.add(&o.odd),
        }
    }

    pub fn scale(&self, c: &Q) -> E510Element {
        E510Element {
            even: self.even.scale(c),
            odd: self.odd.scale(c),
        }
    }

    /// Checks `Div = 0` on the even part and exactness of the odd part.
    pub fn is_valid(&self) -> Result<bool> {
        Ok(self.even.divergence().is_zero() && self.odd.primitive()?.is_some())
    }

    pub fn bracket(&self, o: &E510Element) -> Result<E510Element> {
        let even = self.even.bracket(&o.even).add(&self.odd.wedge(&o.odd).vol_identify_or_zero()?);
        let odd = o.odd.lie_derivative(&self.even)?.sub(&self.odd.lie_derivative(&o.even)?);
        Ok(E510Element { even, odd })
    }
}

impl DiffForm {
    fn vol_identify_or_zero(&self) -> Result<VectorField> {
        if self.is_zero() {
            Ok(VectorField::zero(&self.ring))
        } else {
            self.vol_identify()
        }
    }
}

impl fmt::Display for E510Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.even.is_zero(), self.odd.is_zero()) {
            (true, true) => f.write_str("0"),
            (false, true) => write!(f, "{}", self.even),
            (true, false) => write!(f, "{}", self.odd),
            (false, false) => write!(f, "{} + ({})", self.even, self.odd),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superpoly::Ring;

    fn ring5() -> RingRef {
        Ring::from_names(&[("x1", false), ("x2", false), ("x3", false), ("x4", false), ("x5", false)]).unwrap()
    }

    fn form(r: &RingRef, s: &str) -> DiffForm {
        DiffForm::parse(r, s).unwrap()
    }

    fn vf(r: &RingRef, s: &str) -> VectorField {
        VectorField::parse(r, s).unwrap()
    }

    #[test]
    fn wedge_signs() {
        let r = ring5();
        assert_eq!(form(&r, "dx1").wedge(&form(&r, "dx2")), form(&r, "dx1^dx2"));
        assert_eq!(form(&r, "dx2").wedge(&form(&r, "dx1")), form(&r, "-dx1^dx2"));
        assert_eq!(form(&r, "dx2^dx1"), form(&r, "-dx1^dx2"));
        let z = form(&r, "x5*dx4^dx5");
        assert!(z.wedge(&z).is_zero());
        assert!(form(&r, "dx1").wedge(&form(&r, "dx1")).is_zero());
    }

    #[test]
    fn exterior_derivative() {
        let r = ring5();
        assert_eq!(form(&r, "x4*x5*dx5").ext_d(), form(&r, "x5*dx4^dx5"));
        assert!(form(&r, "dx1").ext_d().is_zero());
        assert_eq!(form(&r, "x1").ext_d(), form(&r, "dx1"));
    }

    #[test]
    fn lie_derivatives() {
        let r = ring5();
        assert_eq!(form(&r, "x1*dx2").lie_derivative(&vf(&r, "d/dx1")).unwrap(), form(&r, "dx2"));
        assert_eq!(form(&r, "dx1").lie_derivative(&vf(&r, "x1*d/dx1")).unwrap(), form(&r, "dx1"));
        let w = form(&r, "x2*x3*dx1^dx4");
        let d = vf(&r, "x1*x5*d/dx2 + x3*d/dx4");
        assert_eq!(w.ext_d().lie_derivative(&d).unwrap(), w.lie_derivative(&d).unwrap().ext_d());
    }

    #[test]
    fn volume_identification() {
        let r = ring5();
        assert_eq!(form(&r, "dx1^dx2^dx3^dx4").vol_identify().unwrap(), vf(&r, "d/dx5"));
        assert_eq!(form(&r, "dx2^dx1^dx3^dx4").vol_identify().unwrap(), vf(&r, "-d/dx5"));
        assert_eq!(form(&r, "x1*dx1^dx2^dx3^dx5").vol_identify().unwrap(), vf(&r, "-x1*d/dx4"));
        assert!(form(&r, "dx1^dx2").vol_identify().is_err());
    }

    #[test]
    fn e510_brackets() {
        let r = ring5();
        let z = E510Element::new(VectorField::zero(&r), form(&r, "x5*dx4^dx5")).unwrap();
        assert!(z.bracket(&z).unwrap().is_zero());
        let x = E510Element::new(vf(&r, "x1*d/dx2"), DiffForm::zero(&r).unwrap()).unwrap();
        let w = E510Element::new(VectorField::zero(&r), form(&r, "dx2^dx3")).unwrap();
        assert_eq!(x.bracket(&w).unwrap().odd, form(&r, "dx1^dx3"));
        let a = E510Element::new(VectorField::zero(&r), form(&r, "dx1^dx2")).unwrap();
        let b = E510Element::new(VectorField::zero(&r), form(&r, "dx3^dx4")).unwrap();
        assert_eq!(a.bracket(&b).unwrap().even, vf(&r, "d/dx5"));
    }

    #[test]
    fn exactness() {
        let r = ring5();
        let w = form(&r, "x5*dx4^dx5");
        let p = w.primitive().unwrap().unwrap();
        assert_eq!(p.ext_d(), w);
        assert!(form(&r, "x1*dx1^dx2").primitive().unwrap().is_some());
        assert!(form(&r, "x3*dx1^dx2").primitive().unwrap().is_none());
    }

    #[test]
    fn one_form_lie_derivative() {
        let r = Ring::from_names(&[("u", false), ("xi", true)]).unwrap();
        let alpha = OneForm::zero(&r).with(0, SuperPoly::one(&r));
        let d = VectorField::parse(&r, "u*d/du").unwrap();
        assert_eq!(alpha.lie_derivative(&d).unwrap(), alpha);
    }
}
