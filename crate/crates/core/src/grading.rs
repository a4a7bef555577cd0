//! Integer gradings of the coordinates and the induced degrees of elements.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::element::AlgebraElement;
use crate::error::{Error, Result};
use crate::superpoly::RingRef;

/// Degrees of coordinates by name.
///
/// `default` covers coordinates not listed. `offset` is the degree of the
/// auxiliary slot: the degree subtracted from a Hamiltonian or
/// periplectic generating function, or the half-volume degree of e(5|10)
/// forms. Contact and pericontact functions use the degree of `t` or `τ`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grading {
    #[serde(default)]
    pub degrees: BTreeMap<String, i64>,
    #[serde(default)]
    pub default: Option<i64>,
    #[serde(default)]
    pub offset: Option<i64>,
}

impl Grading {
    pub fn uniform(d: i64) -> Grading {
        Grading {
            default: Some(d),
            ..Grading::default()
        }
    }

    pub fn set(mut self, name: &str, d: i64) -> Grading {
        self.degrees.insert(name.to_string(), d);
        self
    }

    pub fn with_offset(mut self, d: i64) -> Grading {
        self.offset = Some(d);
        self
    }

    pub fn degree(&self, name: &str) -> Result<i64> {
        self.degrees
            .get(name)
            .copied()
            .or(self.default)
            .ok_or_else(|| Error::Config(format!("grading does not cover `{name}`")))
    }

    /// Degrees of every coordinate of `ring`, in ring order.
    pub fn for_ring(&self, ring: &RingRef) -> Result<Vec<i64>> {
        ring.vars().iter().map(|v| self.degree(&v.name)).collect()
    }

    /// Weights on the slots of `el` (coordinates plus the auxiliary slot).
    pub fn slot_weights(&self, el: &AlgebraElement) -> Result<Vec<i64>> {
        let ring = el
            .ring()
            .ok_or_else(|| Error::Realization("matrix elements use block degrees".into()))?;
        let mut w = self.for_ring(ring)?;
        let aux = match (el, self.offset) {
            (_, Some(o)) => o,
            (AlgebraElement::E510(_), None) => {
                let s: i64 = w.iter().sum();
                if s % 2 != 0 {
                    return Err(Error::Config("e(5|10) grading needs an even total degree".into()));
                }
                s / 2
            }
            (AlgebraElement::Gen(g), None) if g.realization.t_index().is_none() => {
                return Err(Error::Config("this realization needs a grading offset".into()))
            }
            _ => 0,
        };
        w.push(aux);
        Ok(w)
    }
}

fn uniform_names(names: &[&str], d: i64) -> Grading {
    names.iter().fold(Grading::default(), |g, n| g.set(n, d))
}

fn indexed(prefix: &str, range: std::ops::RangeInclusive<usize>) -> Vec<String> {
    range.map(|i| format!("{prefix}{i}")).collect()
}

fn set_all(mut g: Grading, names: &[String], d: i64) -> Grading {
    for n in names {
        g = g.set(n, d);
    }
    g
}

/// Splits `name(a|b)` into its name and sizes.
fn parse_id(id: &str) -> (String, Option<(usize, usize)>) {
    let id = id.trim();
    if let Some(open) = id.find('(') {
        let name = id[..open].to_string();
        let inner = id[open + 1..].trim_end_matches(')');
        let inner = inner.split(';').next().unwrap_or("");
        let mut parts = inner.split('|');
        let a = parts.next().and_then(|s| s.trim().parse().ok());
        let b = parts.next().and_then(|s| s.trim().parse().ok()).or(Some(0));
        (name, a.zip(b))
    } else {
        (id.to_string(), None)
    }
}

/// The gradings of the catalog, keyed by algebra id and regrading label.
/// Coordinate names follow the realizations built in this crate; the
/// exceptional algebras also accept the names used in their relation tables.
pub fn preset(algebra_id: &str, r: &str) -> Result<Grading> {
    let unknown = || Error::UnknownGrading {
        algebra: algebra_id.to_string(),
        r: r.to_string(),
    };
    let (name, sizes) = parse_id(algebra_id);
    let g = match (name.as_str(), r) {
        ("vect" | "svect", "0") => Grading::uniform(1),
        ("vect" | "svect", k) => {
            let k: usize = k.parse().map_err(|_| unknown())?;
            let m = sizes.map(|s| s.1).unwrap_or(k);
            if k > m {
                return Err(unknown());
            }
            set_all(Grading::uniform(1), &indexed("xi", 1..=k), 0)
        }
        ("k" | "po" | "h", "0") => Grading::uniform(1).set("t", 2).with_offset(2),
        ("m" | "le" | "b", "0") => Grading::uniform(1).set("tau", 2).with_offset(2),
        ("m" | "le" | "b", "1") => Grading::uniform(0).set("tau", 1).with_offset(1).set_prefix("q", 1),
        ("vle", "0") => Grading::uniform(1),
        ("vle", "1") => uniform_names(&["y", "xi1", "x4", "x5"], 0)
            .set("u1", 2)
            .set("x1", 2)
            .set_default(1),
        ("vle", "K") => set_all(uniform_names(&["y", "x4"], 0), &indexed("u", 1..=3), 2)
            .set("x1", 2)
            .set("x2", 2)
            .set("x3", 2)
            .set_default(1),
        ("vas", "0") => Grading::uniform(1),
        ("kas", "0") => Grading::uniform(1).set("t", 2),
        ("kas", "1") => Grading::uniform(1).set("xi1", 0).set("eta1", 2).set("t", 2),
        ("kas", "3xi") => set_all(Grading::uniform(1), &indexed("xi", 1..=3), 0),
        ("kas", "3eta") => set_all(Grading::uniform(1), &indexed("eta", 1..=3), 0),
        ("mb", "0") => Grading::uniform(1).set("tau", 2),
        ("mb", "1") => Grading::uniform(1)
            .set("tau", 2)
            .set("xi0", 2)
            .set("q1", 2)
            .set("xi1", 0)
            .set("q0", 0),
        ("mb", "K") => set_all(Grading::uniform(1).set("tau", 3).set("xi0", 3).set("q0", 0), &indexed("q", 1..=3), 2),
        ("ksle", "K") => Grading::uniform(2),
        ("ksle", "0") => Grading::uniform(1).set("t", 2),
        ("as", "0") => Grading::uniform(1).with_offset(2),
        ("heisenberg", "0") => Grading::uniform(1).with_offset(2),
        ("abelian", "0") => Grading::uniform(1),
        _ => return Err(unknown()),
    };
    Ok(g)
}

impl Grading {
    fn set_default(mut self, d: i64) -> Grading {
        self.default = Some(d);
        self
    }

    fn set_prefix(self, prefix: &str, d: i64) -> Grading {
        set_all(self, &indexed(prefix, 0..=16), d)
    }
}

/// Degree of a homogeneous element, `None` for zero.
pub fn degree_of(el: &AlgebraElement, g: &Grading) -> Result<Option<i64>> {
    if let AlgebraElement::As(a) = el {
        return as_degree(a);
    }
    let w = g.slot_weights(el)?;
    let mut deg = None;
    for v in el.term_vectors()? {
        let d: i64 = v.iter().zip(&w).map(|(a, b)| a * b).sum();
        match deg {
            None => deg = Some(d),
            Some(e) if e != d => return Err(Error::InhomogeneousDegree),
            _ => {}
        }
    }
    Ok(deg)
}

/// Block degrees in `as`: `c` is −1, `a` is 0, `b` is 1 and `z` is −2.
fn as_degree(a: &crate::supermat::AsElement) -> Result<Option<i64>> {
    let mut deg = None;
    for (i, _) in a.coords() {
        let d = if i == 64 {
            -2
        } else {
            match (i / 8 < 4, i % 8 < 4) {
                (true, true) | (false, false) => 0,
                (true, false) => 1,
                (false, true) => -1,
            }
        };
        match deg {
            None => deg = Some(d),
            Some(e) if e != d => return Err(Error::InhomogeneousDegree),
            _ => {}
        }
    }
    Ok(deg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genfun::{ContactRealization, Pairing};
    use crate::superpoly::{Ring, SuperPoly};
    use crate::vfield::VectorField;
    use std::sync::Arc;

    #[test]
    fn presets_from_the_table() {
        let g = preset("vle(4|3)", "K").unwrap();
        assert_eq!(g.degree("y").unwrap(), 0);
        assert_eq!(g.degree("u2").unwrap(), 2);
        assert_eq!(g.degree("xi3").unwrap(), 1);
        let v = preset("vect(n|m)", "0").unwrap();
        assert_eq!(v.degree("anything").unwrap(), 1);
        let m = preset("mb(4|5)", "0").unwrap();
        assert_eq!(m.degree("tau").unwrap(), 2);
        assert_eq!(m.degree("q1").unwrap(), 1);
        assert!(preset("nosuch", "0").is_err());
    }

    #[test]
    fn element_degrees() {
        let r = Ring::from_names(&[("x1", false), ("x2", false), ("x5", true)]).unwrap();
        let g = Grading::uniform(1);
        let d = VectorField::parse(&r, "x1*d/dx2").unwrap();
        assert_eq!(degree_of(&AlgebraElement::Field(d), &g).unwrap(), Some(0));
        let d = VectorField::parse(&r, "d/dx5").unwrap();
        assert_eq!(degree_of(&AlgebraElement::Field(d), &g).unwrap(), Some(-1));
        let k = Arc::new(ContactRealization::contact(1, 0, Pairing::Theta).unwrap());
        let kt = AlgebraElement::gen(&k, SuperPoly::parse(k.ring(), "t").unwrap());
        assert_eq!(degree_of(&kt, &preset("k(3|0)", "0").unwrap()).unwrap(), Some(0));
        let bad = VectorField::parse(&r, "x1*d/dx2 + d/dx1").unwrap();
        assert!(degree_of(&AlgebraElement::Field(bad), &g).is_err());
    }
}
