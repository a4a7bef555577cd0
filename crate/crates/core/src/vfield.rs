//! Superderivations with polynomial coefficients.

use std::fmt;

use crate::error::{Error, Result};
use crate::genfun::{ContactRealization, RealizationKind};
use crate::rational::Q;
use crate::superpoly::{fmt_signed_terms, same_ring, Parity, PolyParity, RingRef, SuperPoly};

/// `Σ f_i ∂/∂x_i`, stored densely by coordinate.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VectorField {
    ring: RingRef,
    comps: Vec<SuperPoly>,
}

impl VectorField {
    pub fn zero(ring: &RingRef) -> VectorField {
        VectorField {
            ring: ring.clone(),
            comps: vec![SuperPoly::zero(ring); ring.len()],
        }
    }

    /// `∂/∂x_i`.
    pub fn partial(ring: &RingRef, i: usize) -> VectorField {
        VectorField::from_component(ring, i, SuperPoly::one(ring))
    }

    /// `f ∂/∂x_i`.
    pub fn from_component(ring: &RingRef, i: usize, f: SuperPoly) -> VectorField {
        let mut v = VectorField::zero(ring);
        v.comps[i] = f;
        v
    }

    pub fn from_components(ring: &RingRef, comps: Vec<SuperPoly>) -> Result<VectorField> {
        if comps.len() != ring.len() || comps.iter().any(|c| !same_ring(ring, c.ring())) {
            return Err(Error::RingMismatch);
        }
        Ok(VectorField {
            ring: ring.clone(),
            comps,
        })
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn component(&self, i: usize) -> &SuperPoly {
        &self.comps[i]
    }

    pub fn components(&self) -> &[SuperPoly] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(SuperPoly::is_zero)
    }

    pub fn add(&self, o: &VectorField) -> VectorField {
        self.zip(o, |a, b| a.add(b))
    }

    pub fn sub(&self, o: &VectorField) -> VectorField {
        self.zip(o, |a, b| a.sub(b))
    }

    pub fn add_scaled(&self, c: &Q, o: &VectorField) -> VectorField {
        self.zip(o, |a, b| a.add_scaled(c, b))
    }

    pub fn scale(&self, c: &Q) -> VectorField {
        self.map(|a| a.scale(c))
    }

    pub fn neg(&self) -> VectorField {
        self.map(SuperPoly::neg)
    }

    /// Left multiplication `g·D`.
    pub fn mul_left(&self, g: &SuperPoly) -> VectorField {
        self.map(|a| g.mul(a))
    }

    fn map(&self, f: impl Fn(&SuperPoly) -> SuperPoly) -> VectorField {
        VectorField {
            ring: self.ring.clone(),
            comps: self.comps.iter().map(f).collect(),
        }
    }

    fn zip(&self, o: &VectorField, f: impl Fn(&SuperPoly, &SuperPoly) -> SuperPoly) -> VectorField {
        assert!(same_ring(&self.ring, &o.ring), "ring mismatch");
        VectorField {
            ring: self.ring.clone(),
            comps: self.comps.iter().zip(&o.comps).map(|(a, b)| f(a, b)).collect(),
        }
    }

    /// Parity of a homogeneous field; the zero field is even.
    pub fn parity_of(&self) -> PolyParity {
        let mut seen: Option<Parity> = None;
        for (i, c) in self.comps.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = match c.parity_of() {
                PolyParity::Homogeneous(p) => p + self.ring.parity(i),
                PolyParity::Inhomogeneous => return PolyParity::Inhomogeneous,
            };
            match seen {
                Some(q) if q != p => return PolyParity::Inhomogeneous,
                _ => seen = Some(p),
            }
        }
        PolyParity::Homogeneous(seen.unwrap_or(Parity::Even))
    }

    pub fn parity(&self) -> Result<Parity> {
        match self.parity_of() {
            PolyParity::Homogeneous(p) => Ok(p),
            PolyParity::Inhomogeneous => Err(Error::Inhomogeneous),
        }
    }

    /// The part of parity `p`.
    pub fn parity_part(&self, p: Parity) -> VectorField {
        VectorField {
            ring: self.ring.clone(),
            comps: self
                .comps
                .iter()
                .enumerate()
                .map(|(i, c)| c.parity_part(p + self.ring.parity(i)))
                .collect(),
        }
    }

    /// `D(f) = Σ f_i ∂f/∂x_i`.
    pub fn apply(&self, f: &SuperPoly) -> SuperPoly {
        assert!(same_ring(&self.ring, f.ring()), "ring mismatch");
        let mut acc = SuperPoly::zero(&self.ring);
        for (i, c) in self.comps.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let d = f.partial(i);
            if !d.is_zero() {
                acc = acc.add(&c.mul(&d));
            }
        }
        acc
    }

    /// Supercommutator, extended bilinearly to inhomogeneous fields.
    pub fn bracket(&self, o: &VectorField) -> VectorField {
        let mut out = VectorField::zero(&self.ring);
        for pa in [Parity::Even, Parity::Odd] {
            let a = self.parity_part(pa);
            if a.is_zero() {
                continue;
            }
            for pb in [Parity::Even, Parity::Odd] {
                let b = o.parity_part(pb);
                if b.is_zero() {
                    continue;
                }
                out = out.add(&bracket_homogeneous(&a, &b, pa.both_odd(pb)));
            }
        }
        out
    }

    /// `Div D = Σ ∂f_i/∂u_i + Σ (−1)^{p(g_j)} ∂g_j/∂θ_j`.
    pub fn divergence(&self) -> SuperPoly {
        let mut acc = SuperPoly::zero(&self.ring);
        for (i, c) in self.comps.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if self.ring.parity(i).is_odd() {
                for p in [Parity::Even, Parity::Odd] {
                    let d = c.parity_part(p).partial(i);
                    acc = if p.is_odd() { acc.sub(&d) } else { acc.add(&d) };
                }
            } else {
                acc = acc.add(&c.partial(i));
            }
        }
        acc
    }

    /// `Σ y_i ∂/∂y_i` over all coordinates except `excluded`.
    pub fn euler(ring: &RingRef, excluded: &[usize]) -> VectorField {
        let mut v = VectorField::zero(ring);
        for i in 0..ring.len() {
            if !excluded.contains(&i) {
                v.comps[i] = SuperPoly::var(ring, i);
            }
        }
        v
    }

    /// Iterates `(coordinate, coefficient)` pairs with nonzero coefficient.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &SuperPoly)> {
        self.comps.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    /// Parses `x1*d/dx2 - xi1*d/dxi2`.
    pub fn parse(ring: &RingRef, s: &str) -> Result<VectorField> {
        let mut v = VectorField::zero(ring);
        for t in crate::parse::parse_geom(ring, s)? {
            if !t.diffs.is_empty() {
                return Err(Error::Parse {
                    pos: 0,
                    msg: "differential in a vector field".into(),
                });
            }
            match t.deriv {
                Some(i) => v.comps[i] = v.comps[i].add(&t.coeff),
                None if t.coeff.is_zero() => {}
                None => {
                    return Err(Error::Parse {
                        pos: 0,
                        msg: "summand without d/dx".into(),
                    })
                }
            }
        }
        Ok(v)
    }
}

fn bracket_homogeneous(a: &VectorField, b: &VectorField, anti: bool) -> VectorField {
    let comps = (0..a.ring.len())
        .map(|j| {
            let x = a.apply(&b.comps[j]);
            let y = b.apply(&a.comps[j]);
            if anti {
                x.add(&y)
            } else {
                x.sub(&y)
            }
        })
        .collect();
    VectorField {
        ring: a.ring.clone(),
        comps,
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut items = Vec::new();
        for (i, c) in self.terms() {
            let name = &self.ring.var(i).name;
            for (m, q) in c.terms() {
                let mono = SuperPoly::monomial(&self.ring, *m, Q::one()).to_string();
                let body = if mono == "1" {
                    format!("d/d{name}")
                } else {
                    format!("{mono}*d/d{name}")
                };
                items.push((q.clone(), body));
            }
        }
        f.write_str(&fmt_signed_terms(items))
    }
}

impl fmt::Debug for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VectorField({self})")
    }
}

/// Subalgebras of `vect` cut out by an equation on the field.
#[derive(Clone, Debug, PartialEq)]
pub enum Subalgebra {
    Vect,
    /// `Div D = 0`.
    Svect,
    /// `Div((1 + λ θ_1⋯θ_m) D) = 0`.
    SvectDeformed(Q),
    /// `a Div M_f = (−1)^{p(f)} 2(a − bn) ∂f/∂τ` inside a pericontact realization.
    Bab { a: Q, b: Q, realization: ContactRealization },
    /// `D = Le_f` with `Δf = 0`.
    SleHarmonic(ContactRealization),
}

impl Subalgebra {
    /// Tests membership of a homogeneous field.
    pub fn contains(&self, d: &VectorField) -> Result<bool> {
        match self {
            Subalgebra::Vect => Ok(true),
            Subalgebra::Svect => Ok(d.divergence().is_zero()),
            Subalgebra::SvectDeformed(l) => {
                let ring = d.ring();
                let mut theta = SuperPoly::one(ring);
                for i in 0..ring.len() {
                    if ring.parity(i).is_odd() {
                        theta = theta.mul(&SuperPoly::var(ring, i));
                    }
                }
                let w = SuperPoly::one(ring).add(&theta.scale(l));
                Ok(d.mul_left(&w).divergence().is_zero())
            }
            Subalgebra::Bab { a, b, realization } => {
                if realization.kind != RealizationKind::M {
                    return Err(Error::Realization("b_ab needs a pericontact realization".into()));
                }
                let Some(f) = realization.recover(d)? else {
                    return Ok(false);
                };
                let sign = match f.parity()? {
                    Parity::Even => Q::from_int(2),
                    Parity::Odd => Q::from_int(-2),
                };
                let n = Q::from_int(realization.n as i64);
                let lhs = d.divergence().scale(a);
                let rhs = f
                    .partial(realization.tau())
                    .scale(&(sign * (a - &(b * &n))));
                Ok(lhs == rhs)
            }
            Subalgebra::SleHarmonic(real) => {
                if real.kind != RealizationKind::Le {
                    return Err(Error::Realization("harmonic test needs a periplectic realization".into()));
                }
                match real.recover(d)? {
                    Some(f) => Ok(real.odd_laplacian(&f).is_zero()),
                    None => Ok(false),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superpoly::Ring;

    fn ring() -> RingRef {
        Ring::from_names(&[("u", false), ("v", false), ("xi", true), ("eta", true)]).unwrap()
    }

    fn vf(r: &RingRef, s: &str) -> VectorField {
        VectorField::parse(r, s).unwrap()
    }

    fn p(r: &RingRef, s: &str) -> SuperPoly {
        SuperPoly::parse(r, s).unwrap()
    }

    #[test]
    fn application() {
        let r = ring();
        assert_eq!(vf(&r, "u*d/du").apply(&p(&r, "u^2")), p(&r, "2*u^2"));
        assert!(vf(&r, "xi*d/du").apply(&p(&r, "u*xi")).is_zero());
        assert_eq!(vf(&r, "d/dxi").apply(&p(&r, "xi*eta")), p(&r, "eta"));
    }

    #[test]
    fn brackets() {
        let r = ring();
        assert_eq!(vf(&r, "d/du").bracket(&vf(&r, "u*d/du")), vf(&r, "d/du"));
        assert_eq!(vf(&r, "d/dxi").bracket(&vf(&r, "xi*d/du")), vf(&r, "d/du"));
        let d = vf(&r, "u*v*d/du + xi*eta*d/dv");
        assert!(d.bracket(&d).is_zero());
        let o = vf(&r, "d/dxi + xi*d/du");
        assert_eq!(o.bracket(&o), vf(&r, "2*d/du"));
    }

    #[test]
    fn divergence_values() {
        let r = ring();
        assert_eq!(vf(&r, "u*d/du").divergence(), p(&r, "1"));
        assert_eq!(vf(&r, "xi*d/dxi").divergence(), p(&r, "-1"));
        assert!(vf(&r, "xi*eta*d/du").divergence().is_zero());
    }

    #[test]
    fn euler_operator() {
        let r = Ring::from_names(&[("u", false), ("xi", true)]).unwrap();
        let e = VectorField::euler(&r, &[]);
        assert_eq!(e, vf(&r, "u*d/du + xi*d/dxi"));
        assert_eq!(e.apply(&p(&r, "u^2")), p(&r, "2*u^2"));
        assert!(e.apply(&p(&r, "1")).is_zero());
    }

    #[test]
    fn svect_membership() {
        let r = ring();
        assert!(Subalgebra::Svect.contains(&vf(&r, "u*d/du - v*d/dv")).unwrap());
        assert!(!Subalgebra::Svect.contains(&vf(&r, "u*d/du")).unwrap());
        assert!(Subalgebra::Vect.contains(&vf(&r, "u*d/du")).unwrap());
    }

    #[test]
    fn display_round_trip() {
        let r = ring();
        let d = vf(&r, "u*d/dv - 1/2*xi*eta*d/du + d/dxi");
        assert_eq!(vf(&r, &d.to_string()), d);
    }
}
