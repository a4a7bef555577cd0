//! Supercommutative polynomials over ℚ.
//!
//! Even indeterminates carry exponents; odd indeterminates appear at most
//! once and are kept in declaration order, with the sign of every reordering
//! absorbed into the coefficient. Derivatives act from the left.

use std::collections::HashMap;
use std::fmt;
use std::ops::Add;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::rational::Q;

/// Upper bound on even indeterminates per ring (exponents live inline).
pub const MAX_EVEN: usize = 12;
/// Upper bound on odd indeterminates per ring (one bit each).
pub const MAX_ODD: usize = 64;

/// A ℤ/2 grade.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bool(odd: bool) -> Parity {
        if odd {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// Product of two parities in the sign exponent `p(a)p(b)`.
    pub fn both_odd(self, o: Parity) -> bool {
        self.is_odd() && o.is_odd()
    }

    pub fn flip(self) -> Parity {
        Parity::from_bool(!self.is_odd())
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, o: Parity) -> Parity {
        Parity::from_bool(self.is_odd() != o.is_odd())
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.is_odd() { "odd" } else { "even" })
    }
}

/// Result of [`SuperPoly::parity_of`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyParity {
    Homogeneous(Parity),
    Inhomogeneous,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Indeterminate {
    pub name: String,
    pub parity: Parity,
}

/// A declared list of indeterminates.
#[derive(Debug, PartialEq, Eq)]
pub struct Ring {
    vars: Vec<Indeterminate>,
    /// Position of each variable among the evens or among the odds.
    slot: Vec<usize>,
    evens: Vec<usize>,
    odds: Vec<usize>,
    by_name: HashMap<String, usize>,
}

pub type RingRef = Arc<Ring>;

impl std::hash::Hash for Ring {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.vars.hash(h);
    }
}

impl Ring {
    pub fn new(vars: Vec<Indeterminate>) -> Result<RingRef> {
        let mut by_name = HashMap::new();
        let mut slot = Vec::with_capacity(vars.len());
        let (mut evens, mut odds) = (Vec::new(), Vec::new());
        for (i, v) in vars.iter().enumerate() {
            if by_name.insert(v.name.clone(), i).is_some() {
                return Err(Error::DuplicateVariable(v.name.clone()));
            }
            if v.parity.is_odd() {
                slot.push(odds.len());
                odds.push(i);
            } else {
                slot.push(evens.len());
                evens.push(i);
            }
        }
        if evens.len() > MAX_EVEN {
            return Err(Error::RingTooLarge {
                kind: "even",
                count: evens.len(),
                limit: MAX_EVEN,
            });
        }
        if odds.len() > MAX_ODD {
            return Err(Error::RingTooLarge {
                kind: "odd",
                count: odds.len(),
                limit: MAX_ODD,
            });
        }
        Ok(Arc::new(Ring {
            vars,
            slot,
            evens,
            odds,
            by_name,
        }))
    }

    /// Convenience constructor from `(name, is_odd)` pairs.
    pub fn from_names(spec: &[(&str, bool)]) -> Result<RingRef> {
        Ring::new(
            spec.iter()
                .map(|(n, o)| Indeterminate {
                    name: n.to_string(),
                    parity: Parity::from_bool(*o),
                })
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn vars(&self) -> &[Indeterminate] {
        &self.vars
    }

    pub fn var(&self, i: usize) -> &Indeterminate {
        &self.vars[i]
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.vars[i].parity
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.by_name
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn n_even(&self) -> usize {
        self.evens.len()
    }

    pub fn n_odd(&self) -> usize {
        self.odds.len()
    }

    /// Exponent of variable `i` in `m` (0 or 1 for odd variables).
    pub fn exponent(&self, m: &Monomial, i: usize) -> u32 {
        let s = self.slot[i];
        if self.vars[i].parity.is_odd() {
            ((m.odd >> s) & 1) as u32
        } else {
            m.exps[s] as u32
        }
    }

    /// The exponent vector of `m` indexed by variable.
    pub fn exponents(&self, m: &Monomial) -> Vec<u32> {
        (0..self.len()).map(|i| self.exponent(m, i)).collect()
    }

    /// Monomial with the given per-variable exponents, or `None` if an odd
    /// exponent exceeds 1. Odd factors are assumed to be in declaration order.
    pub fn monomial(&self, exps: &[u32]) -> Option<Monomial> {
        let mut m = Monomial::one();
        for (i, &e) in exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let s = self.slot[i];
            if self.vars[i].parity.is_odd() {
                if e > 1 {
                    return None;
                }
                m.odd |= 1 << s;
            } else {
                m.exps[s] = u8::try_from(e).ok()?;
            }
        }
        m.deg = exps.iter().sum::<u32>() as u16;
        Some(m)
    }
}

/// A monomial: even exponents plus a mask of odd factors.
///
/// The derived order compares total degree first, then even exponents,
/// then the odd mask.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    deg: u16,
    exps: [u8; MAX_EVEN],
    odd: u64,
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial {
            deg: 0,
            exps: [0; MAX_EVEN],
            odd: 0,
        }
    }

    pub fn degree(&self) -> u32 {
        self.deg as u32
    }

    pub fn odd_mask(&self) -> u64 {
        self.odd
    }

    pub fn even_exponents(&self) -> &[u8; MAX_EVEN] {
        &self.exps
    }

    pub fn parity(&self) -> Parity {
        Parity::from_bool(self.odd.count_ones() % 2 == 1)
    }

    /// Product with the Sign-Rule sign, or `None` if an odd factor repeats.
    pub fn mul(&self, o: &Monomial) -> Option<(Monomial, bool)> {
        if self.odd & o.odd != 0 {
            return None;
        }
        let mut neg = false;
        let mut b = o.odd;
        while b != 0 {
            let j = b.trailing_zeros();
            b &= b - 1;
            let above = if j >= 63 { 0 } else { self.odd >> (j + 1) };
            if above.count_ones() % 2 == 1 {
                neg = !neg;
            }
        }
        let mut exps = self.exps;
        for (e, f) in exps.iter_mut().zip(o.exps.iter()) {
            *e = e.checked_add(*f).expect("exponent overflow");
        }
        Some((
            Monomial {
                deg: self.deg + o.deg,
                exps,
                odd: self.odd | o.odd,
            },
            neg,
        ))
    }
}

/// A polynomial in a declared supercommutative ring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SuperPoly {
    ring: RingRef,
    /// Sorted by monomial, no zero coefficients.
    terms: Vec<(Monomial, Q)>,
}

pub(crate) fn same_ring(a: &RingRef, b: &RingRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl SuperPoly {
    pub fn zero(ring: &RingRef) -> SuperPoly {
        SuperPoly {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &RingRef, c: Q) -> SuperPoly {
        SuperPoly::from_terms(ring, vec![(Monomial::one(), c)])
    }

    pub fn one(ring: &RingRef) -> SuperPoly {
        SuperPoly::constant(ring, Q::one())
    }

    /// The indeterminate with index `i`.
    pub fn var(ring: &RingRef, i: usize) -> SuperPoly {
        let mut e = vec![0; ring.len()];
        e[i] = 1;
        let m = ring.monomial(&e).expect("single variable");
        SuperPoly::from_terms(ring, vec![(m, Q::one())])
    }

    pub fn var_named(ring: &RingRef, name: &str) -> Result<SuperPoly> {
        Ok(SuperPoly::var(ring, ring.index(name)?))
    }

    pub fn monomial(ring: &RingRef, m: Monomial, c: Q) -> SuperPoly {
        SuperPoly::from_terms(ring, vec![(m, c)])
    }

    /// Builds a polynomial from unsorted terms, combining duplicates.
    pub fn from_terms(ring: &RingRef, mut terms: Vec<(Monomial, Q)>) -> SuperPoly {
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Monomial, Q)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += &c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        SuperPoly {
            ring: ring.clone(),
            terms: out,
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Q)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of monomial `m`.
    pub fn coeff(&self, m: &Monomial) -> Q {
        match self.terms.binary_search_by(|t| t.0.cmp(m)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Q::zero(),
        }
    }

    /// Constant term.
    pub fn constant_term(&self) -> Q {
        self.coeff(&Monomial::one())
    }

    fn merge(&self, o: &SuperPoly, sign: &Q) -> SuperPoly {
        assert!(same_ring(&self.ring, &o.ring), "ring mismatch");
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &o.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((b[j].0, &b[j].1 * sign));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = &a[i].1 + &(&b[j].1 * sign);
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (*m, c * sign)));
        SuperPoly {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn add(&self, o: &SuperPoly) -> SuperPoly {
        self.merge(o, &Q::one())
    }

    pub fn sub(&self, o: &SuperPoly) -> SuperPoly {
        self.merge(o, &Q::from_int(-1))
    }

    /// `self + c·o`.
    pub fn add_scaled(&self, c: &Q, o: &SuperPoly) -> SuperPoly {
        if c.is_zero() {
            return self.clone();
        }
        self.merge(o, c)
    }

    pub fn neg(&self) -> SuperPoly {
        self.scale(&Q::from_int(-1))
    }

    pub fn scale(&self, c: &Q) -> SuperPoly {
        if c.is_zero() {
            return SuperPoly::zero(&self.ring);
        }
        SuperPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    /// Supercommutative product; panics when the rings differ.
    pub fn mul(&self, o: &SuperPoly) -> SuperPoly {
        assert!(same_ring(&self.ring, &o.ring), "ring mismatch");
        if self.is_zero() || o.is_zero() {
            return SuperPoly::zero(&self.ring);
        }
        let mut acc: Vec<(Monomial, Q)> = Vec::with_capacity(self.terms.len() * o.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                if let Some((m, neg)) = ma.mul(mb) {
                    let c = ca * cb;
                    acc.push((m, if neg { -c } else { c }));
                }
            }
        }
        SuperPoly::from_terms(&self.ring, acc)
    }

    /// Product that reports mismatched rings instead of panicking.
    pub fn checked_mul(&self, o: &SuperPoly) -> Result<SuperPoly> {
        if !same_ring(&self.ring, &o.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(self.mul(o))
    }

    /// Left partial derivative with respect to variable `i`.
    pub fn partial(&self, i: usize) -> SuperPoly {
        let s = self.ring.slot[i];
        let odd = self.ring.vars[i].parity.is_odd();
        let mut out = Vec::new();
        for (m, c) in &self.terms {
            if odd {
                if m.odd >> s & 1 == 0 {
                    continue;
                }
                let passed = (m.odd & ((1u64 << s) - 1)).count_ones();
                let mut nm = *m;
                nm.odd &= !(1u64 << s);
                nm.deg -= 1;
                out.push((nm, if passed % 2 == 1 { -c } else { c.clone() }));
            } else {
                let e = m.exps[s];
                if e == 0 {
                    continue;
                }
                let mut nm = *m;
                nm.exps[s] -= 1;
                nm.deg -= 1;
                out.push((nm, c * &Q::from_int(e as i64)));
            }
        }
        // Removing a factor preserves the relative order of the survivors.
        SuperPoly::from_terms(&self.ring, out)
    }

    /// Rational combination `Σ cᵢ·pᵢ` over a common ring.
    pub fn linear_combine(ring: &RingRef, coeffs: &[Q], polys: &[SuperPoly]) -> Result<SuperPoly> {
        let mut acc = SuperPoly::zero(ring);
        for (c, p) in coeffs.iter().zip(polys) {
            if !same_ring(ring, &p.ring) {
                return Err(Error::RingMismatch);
            }
            acc = acc.add_scaled(c, p);
        }
        Ok(acc)
    }

    pub fn parity_of(&self) -> PolyParity {
        let mut it = self.terms.iter().map(|(m, _)| m.parity());
        let first = match it.next() {
            Some(p) => p,
            None => return PolyParity::Homogeneous(Parity::Even),
        };
        if it.all(|p| p == first) {
            PolyParity::Homogeneous(first)
        } else {
            PolyParity::Inhomogeneous
        }
    }

    /// Parity of a homogeneous polynomial.
    pub fn parity(&self) -> Result<Parity> {
        match self.parity_of() {
            PolyParity::Homogeneous(p) => Ok(p),
            PolyParity::Inhomogeneous => Err(Error::Inhomogeneous),
        }
    }

    /// The part made of monomials of parity `p`.
    pub fn parity_part(&self, p: Parity) -> SuperPoly {
        SuperPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.parity() == p)
                .cloned()
                .collect(),
        }
    }

    /// Weighted degree of every monomial under per-variable weights.
    pub fn weighted_degrees(&self, w: &[i64]) -> Vec<i64> {
        self.terms
            .iter()
            .map(|(m, _)| {
                (0..self.ring.len())
                    .map(|i| w[i] * self.ring.exponent(m, i) as i64)
                    .sum()
            })
            .collect()
    }

    /// Maximal total degree (`None` for zero).
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Parses the textual syntax, e.g. `3/2*u1^2*xi1*xi2 - tau`.
    pub fn parse(ring: &RingRef, s: &str) -> Result<SuperPoly> {
        crate::parse::parse_poly(ring, s)
    }

    fn fmt_monomial(&self, m: &Monomial, out: &mut String) {
        let mut first = true;
        for i in 0..self.ring.len() {
            let e = self.ring.exponent(m, i);
            if e == 0 {
                continue;
            }
            if !first {
                out.push('*');
            }
            first = false;
            out.push_str(&self.ring.vars[i].name);
            if e > 1 {
                out.push_str(&format!("^{e}"));
            }
        }
    }
}

/// Writes `c·rest` in the textual syntax, returning the sign-stripped piece.
pub(crate) fn fmt_signed_terms<I>(items: I) -> String
where
    I: IntoIterator<Item = (Q, String)>,
{
    let mut out = String::new();
    for (c, body) in items {
        let neg = c.is_negative();
        let a = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if body.is_empty() {
            out.push_str(&a.to_string());
        } else if a.is_one() {
            out.push_str(&body);
        } else {
            out.push_str(&format!("{a}*{body}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for SuperPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items = self.terms.iter().map(|(m, c)| {
            let mut b = String::new();
            self.fmt_monomial(m, &mut b);
            (c.clone(), b)
        });
        f.write_str(&fmt_signed_terms(items))
    }
}

impl fmt::Debug for SuperPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SuperPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> RingRef {
        Ring::from_names(&[("u", false), ("v", false), ("xi1", true), ("xi2", true), ("xi3", true)])
            .unwrap()
    }

    fn p(r: &RingRef, s: &str) -> SuperPoly {
        SuperPoly::parse(r, s).unwrap()
    }

    #[test]
    fn sign_rule_products() {
        let r = ring();
        assert_eq!(p(&r, "xi1").mul(&p(&r, "xi2")), p(&r, "xi1*xi2"));
        assert_eq!(p(&r, "xi2").mul(&p(&r, "xi1")), p(&r, "-xi1*xi2"));
        assert!(p(&r, "xi1").mul(&p(&r, "xi1")).is_zero());
        assert_eq!(p(&r, "u + xi1*xi2").mul(&p(&r, "u - xi1*xi2")), p(&r, "u^2"));
        assert_eq!(p(&r, "xi3*xi1"), p(&r, "-xi1*xi3"));
    }

    #[test]
    fn left_derivatives() {
        let r = ring();
        let xi1 = r.index("xi1").unwrap();
        let xi2 = r.index("xi2").unwrap();
        let u = r.index("u").unwrap();
        assert_eq!(p(&r, "xi1*xi2").partial(xi1), p(&r, "xi2"));
        assert_eq!(p(&r, "xi1*xi2").partial(xi2), p(&r, "-xi1"));
        assert_eq!(p(&r, "u^2*xi1").partial(u), p(&r, "2*u*xi1"));
    }

    #[test]
    fn linear_combination() {
        let r = ring();
        let x = p(&r, "xi1");
        let z = SuperPoly::linear_combine(&r, &[Q::one(), Q::from_int(-1)], &[x.clone(), x.clone()]).unwrap();
        assert!(z.is_zero());
        let f = SuperPoly::linear_combine(&r, &[Q::from_int(2), Q::from_int(3)], &[x.clone(), x.clone()]).unwrap();
        assert_eq!(f, p(&r, "5*xi1"));
        let g = SuperPoly::linear_combine(&r, &[Q::new(1, 2), Q::zero()], &[p(&r, "2*u"), x]).unwrap();
        assert_eq!(g, p(&r, "u"));
    }

    #[test]
    fn parity_detection() {
        let r = ring();
        assert_eq!(p(&r, "u*xi1*xi2").parity_of(), PolyParity::Homogeneous(Parity::Even));
        assert_eq!(p(&r, "xi1").parity_of(), PolyParity::Homogeneous(Parity::Odd));
        assert_eq!(p(&r, "u + xi1").parity_of(), PolyParity::Inhomogeneous);
    }

    #[test]
    fn mismatched_rings() {
        let r = ring();
        let s = Ring::from_names(&[("w", false)]).unwrap();
        assert_eq!(p(&r, "u").checked_mul(&SuperPoly::var(&s, 0)), Err(Error::RingMismatch));
    }

    #[test]
    fn round_trip_display() {
        let r = ring();
        let f = p(&r, "3/2*u^2*xi1*xi2 - v + 1");
        assert_eq!(p(&r, &f.to_string()), f);
        assert_eq!(f.to_string(), "1 - v + 3/2*u^2*xi1*xi2");
    }
}
