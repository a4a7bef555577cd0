//! A single element type over every realization, so that bracket
//! expressions, prolongation and homology can be written once.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::formsreal::E510Element;
use crate::genfun::{field_coords, ContactRealization, GenFunction};
use crate::linalg::{normalize, SparseVec};
use crate::rational::Q;
use crate::supermat::AsElement;
use crate::superpoly::{same_ring, Monomial, Parity, RingRef};
use crate::vfield::VectorField;

/// Coordinate key of an element: a slot (field direction, form mask or
/// matrix entry) and a monomial.
pub type Key = (u32, Monomial);

/// Form terms of e(5|10) elements are keyed above the field directions.
const FORM_SLOT: u32 = 64;

#[derive(Clone, Debug, PartialEq)]
pub enum AlgebraElement {
    Field(VectorField),
    Gen(GenFunction),
    E510(E510Element),
    As(AsElement),
}

fn mismatch() -> Error {
    Error::Realization("elements come from different realizations".into())
}

impl AlgebraElement {
    pub fn gen(realization: &Arc<ContactRealization>, f: crate::superpoly::SuperPoly) -> AlgebraElement {
        AlgebraElement::Gen(GenFunction::new(realization.clone(), f))
    }

    /// The zero element of the same realization.
    pub fn zero_like(&self) -> AlgebraElement {
        self.scale(&Q::zero())
    }

    pub fn is_zero(&self) -> bool {
        match self {
            AlgebraElement::Field(v) => v.is_zero(),
            AlgebraElement::Gen(g) => g.f.is_zero(),
            AlgebraElement::E510(e) => e.is_zero(),
            AlgebraElement::As(a) => a.coords().is_empty(),
        }
    }

    pub fn parity(&self) -> Result<Parity> {
        match self {
            AlgebraElement::Field(v) => v.parity(),
            AlgebraElement::Gen(g) => g.parity(),
            AlgebraElement::E510(e) => e.parity(),
            AlgebraElement::As(a) => Ok(a.parity()),
        }
    }

    pub fn bracket(&self, o: &AlgebraElement) -> Result<AlgebraElement> {
        use AlgebraElement::*;
        Ok(match (self, o) {
            (Field(a), Field(b)) if same_ring(a.ring(), b.ring()) => Field(a.bracket(b)),
            (Gen(a), Gen(b)) => Gen(a.bracket(b)?),
            (E510(a), E510(b)) => E510(a.bracket(b)?),
            (As(a), As(b)) => As(a.bracket(b)?),
            _ => return Err(mismatch()),
        })
    }

    /// `self + c·o`.
    pub fn add_scaled(&self, c: &Q, o: &AlgebraElement) -> Result<AlgebraElement> {
        use AlgebraElement::*;
        Ok(match (self, o) {
            (Field(a), Field(b)) if same_ring(a.ring(), b.ring()) => Field(a.add_scaled(c, b)),
            (Gen(a), Gen(b)) if *a.realization == *b.realization => {
                Gen(GenFunction::new(a.realization.clone(), a.f.add_scaled(c, &b.f)))
            }
            (E510(a), E510(b)) if same_ring(a.even.ring(), b.even.ring()) => E510(a.add(&b.scale(c))),
            (As(a), As(b)) => As(a.add(&b.scale(c))?),
            _ => return Err(mismatch()),
        })
    }

    pub fn add(&self, o: &AlgebraElement) -> Result<AlgebraElement> {
        self.add_scaled(&Q::one(), o)
    }

    pub fn sub(&self, o: &AlgebraElement) -> Result<AlgebraElement> {
        self.add_scaled(&Q::from_int(-1), o)
    }

    pub fn scale(&self, c: &Q) -> AlgebraElement {
        use AlgebraElement::*;
        match self {
            Field(a) => Field(a.scale(c)),
            Gen(a) => Gen(GenFunction::new(a.realization.clone(), a.f.scale(c))),
            E510(a) => E510(a.scale(c)),
            As(a) => As(a.scale(c)),
        }
    }

    pub fn neg(&self) -> AlgebraElement {
        self.scale(&Q::from_int(-1))
    }

    /// Sorted sparse coordinates; equal elements have equal coordinates.
    pub fn coords(&self) -> SparseVec<Key> {
        match self {
            AlgebraElement::Field(v) => normalize(field_coords(v)),
            AlgebraElement::Gen(g) => normalize(g.f.terms().iter().map(|(m, c)| ((0, *m), c.clone())).collect()),
            AlgebraElement::E510(e) => {
                let mut v = field_coords(&e.even);
                v.extend(e.odd.coords().into_iter().map(|((mask, m), c)| ((FORM_SLOT + mask, m), c)));
                normalize(v)
            }
            AlgebraElement::As(a) => a.coords().into_iter().map(|(i, c)| ((i as u32, Monomial::one()), c)).collect(),
        }
    }

    /// The ring of the realization, if it has one.
    pub fn ring(&self) -> Option<&RingRef> {
        match self {
            AlgebraElement::Field(v) => Some(v.ring()),
            AlgebraElement::Gen(g) => Some(g.realization.ring()),
            AlgebraElement::E510(e) => Some(e.even.ring()),
            AlgebraElement::As(_) => None,
        }
    }

    /// Number of weight slots: the coordinates plus one auxiliary slot.
    pub fn weight_slots(&self) -> Option<usize> {
        self.ring().map(|r| r.len() + 1)
    }

    /// For each term, its exponent vector over the weight slots, so that a
    /// weight `ψ` on the slots gives the term the torus weight `ψ·v`.
    pub fn term_vectors(&self) -> Result<Vec<Vec<i64>>> {
        let n = self.weight_slots().ok_or_else(|| Error::Realization("no torus weights for matrix elements".into()))?;
        let ring = self.ring().expect("checked above").clone();
        let mono = |m: &Monomial| -> Vec<i64> {
            let mut v: Vec<i64> = ring.exponents(m).into_iter().map(i64::from).collect();
            v.push(0);
            v
        };
        let mut out = Vec::new();
        match self {
            AlgebraElement::Field(d) => {
                for (j, c) in d.terms() {
                    for (m, _) in c.terms() {
                        let mut v = mono(m);
                        v[j] -= 1;
                        out.push(v);
                    }
                }
            }
            AlgebraElement::Gen(g) => {
                let a = g.realization.weight_anchor();
                for (m, _) in g.f.terms() {
                    let mut v = mono(m);
                    v[a] -= 1;
                    out.push(v);
                }
            }
            AlgebraElement::E510(e) => {
                for (j, c) in e.even.terms() {
                    for (m, _) in c.terms() {
                        let mut v = mono(m);
                        v[j] -= 1;
                        out.push(v);
                    }
                }
                for (mask, f) in e.odd.terms() {
                    for (m, _) in f.terms() {
                        let mut v = mono(m);
                        for (i, x) in v.iter_mut().enumerate().take(n - 1) {
                            *x += i64::from((mask >> i) & 1);
                        }
                        v[n - 1] -= 1;
                        out.push(v);
                    }
                }
            }
            AlgebraElement::As(_) => unreachable!(),
        }
        Ok(out)
    }

    /// Linear conditions every torus weight on the slots must satisfy.
    pub fn weight_constraints(&self) -> Result<Vec<Vec<i64>>> {
        let n = self.weight_slots().ok_or_else(|| Error::Realization("no torus weights for matrix elements".into()))?;
        Ok(match self {
            AlgebraElement::Field(_) => {
                let mut r = vec![0; n];
                r[n - 1] = 1;
                vec![r]
            }
            AlgebraElement::Gen(g) => g.realization.weight_constraints(),
            AlgebraElement::E510(_) => {
                let mut r = vec![-1; n];
                r[n - 1] = 2;
                vec![r]
            }
            AlgebraElement::As(_) => unreachable!(),
        })
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraElement::Field(v) => write!(f, "{v}"),
            AlgebraElement::Gen(g) => write!(f, "{}", g.f),
            AlgebraElement::E510(e) => write!(f, "{e}"),
            AlgebraElement::As(a) => {
                let parts: Vec<String> = a.coords().iter().map(|(i, c)| format!("{c}@{i}")).collect();
                if parts.is_empty() {
                    f.write_str("0")
                } else {
                    f.write_str(&parts.join(" + "))
                }
            }
        }
    }
}
