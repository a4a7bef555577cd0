//! Cartan, depth-2 and partial prolongations computed degree by degree
//! inside an ambient realization.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::element::{AlgebraElement, Key};
use crate::error::{Error, Result};
use crate::formsreal::{DiffForm, E510Element};
use crate::genfun::ContactRealization;
use crate::grading::Grading;
use crate::linalg::{kernel, rank, Echelon, SparseVec};
use crate::rational::Q;
use crate::superpoly::{Monomial, Parity, RingRef, SuperPoly};
use crate::vfield::{Subalgebra, VectorField};

/// Where the prolong lives.
#[derive(Clone, Debug)]
pub enum Ambient {
    /// Polynomial fields, optionally cut down by a linear constraint.
    Vect { ring: RingRef, constraint: Subalgebra },
    /// Fields given by generating functions.
    Gen(Arc<ContactRealization>),
    /// Divergence-free fields plus closed 2-forms.
    E510(RingRef),
}

impl Ambient {
    pub fn ring(&self) -> &RingRef {
        match self {
            Ambient::Vect { ring, .. } | Ambient::E510(ring) => ring,
            Ambient::Gen(r) => r.ring(),
        }
    }

    fn zero(&self) -> Result<AlgebraElement> {
        Ok(match self {
            Ambient::Vect { ring, .. } => AlgebraElement::Field(VectorField::zero(ring)),
            Ambient::Gen(r) => AlgebraElement::gen(r, SuperPoly::zero(r.ring())),
            Ambient::E510(ring) => AlgebraElement::E510(E510Element::zero(ring)?),
        })
    }
}

/// Monomials of weighted degree `target`.
pub fn weighted_monomials(ring: &RingRef, weights: &[i64], target: i64) -> Result<Vec<Monomial>> {
    for (i, &w) in weights.iter().enumerate() {
        if !ring.parity(i).is_odd() && w <= 0 {
            return Err(Error::Window(format!(
                "even coordinate `{}` has degree {w}, so homogeneous components are infinite",
                ring.var(i).name
            )));
        }
    }
    // Odd coordinates of non-positive weight shift the reachable range.
    let slack: i64 = weights
        .iter()
        .enumerate()
        .filter(|&(i, &w)| ring.parity(i).is_odd() && w < 0)
        .map(|(_, &w)| -w)
        .sum();
    let mut out = Vec::new();
    let mut exps = vec![0u32; ring.len()];
    fn go(
        ring: &RingRef,
        w: &[i64],
        i: usize,
        left: i64,
        slack: i64,
        exps: &mut Vec<u32>,
        out: &mut Vec<Monomial>,
    ) {
        if i == w.len() {
            if left == 0 {
                out.extend(ring.monomial(exps));
            }
            return;
        }
        let max = if ring.parity(i).is_odd() {
            1
        } else if left + slack < 0 {
            return;
        } else {
            ((left + slack) / w[i]) as u32
        };
        for e in 0..=max {
            exps[i] = e;
            go(ring, w, i + 1, left - w[i] * i64::from(e), slack, exps, out);
        }
        exps[i] = 0;
    }
    go(ring, weights, 0, target, slack, &mut exps, &mut out);
    out.sort();
    Ok(out)
}

fn combine(zero: &AlgebraElement, basis: &[AlgebraElement], c: &SparseVec<usize>) -> Result<AlgebraElement> {
    let mut acc = zero.clone();
    for (i, q) in c {
        acc = acc.add_scaled(q, &basis[*i])?;
    }
    Ok(acc)
}

/// Elements of `cands` on which the linear map `image` vanishes.
fn constrained<K: Ord + std::hash::Hash + Clone>(
    zero: &AlgebraElement,
    cands: Vec<AlgebraElement>,
    image: impl Fn(&AlgebraElement) -> SparseVec<K>,
) -> Result<Vec<AlgebraElement>> {
    let images: Vec<SparseVec<K>> = cands.iter().map(&image).collect();
    kernel(&images).iter().map(|c| combine(zero, &cands, c)).collect()
}

fn poly_coords(f: &SuperPoly) -> SparseVec<Monomial> {
    f.terms().to_vec()
}

fn form_coords(f: &DiffForm) -> SparseVec<(u32, Monomial)> {
    f.coords()
}

fn field_monomials(ring: &RingRef, w: &[i64], k: i64) -> Result<Vec<VectorField>> {
    let mut out = Vec::new();
    for j in 0..ring.len() {
        for m in weighted_monomials(ring, w, k + w[j])? {
            let f = SuperPoly::monomial(ring, m, Q::one());
            out.push(VectorField::from_component(ring, j, f));
        }
    }
    Ok(out)
}

/// A basis of the degree-`k` part of the ambient.
pub fn ambient_component(ambient: &Ambient, grading: &Grading, k: i64) -> Result<Vec<AlgebraElement>> {
    let ring = ambient.ring();
    let zero = ambient.zero()?;
    match ambient {
        Ambient::Vect { constraint, .. } => {
            let w = grading.for_ring(ring)?;
            let cands: Vec<AlgebraElement> = field_monomials(ring, &w, k)?.into_iter().map(AlgebraElement::Field).collect();
            match constraint {
                Subalgebra::Vect => Ok(cands),
                Subalgebra::Svect => constrained(&zero, cands, |e| match e {
                    AlgebraElement::Field(d) => poly_coords(&d.divergence()),
                    _ => unreachable!(),
                }),
                other => Err(Error::Config(format!("no linear description of the constraint {other:?}"))),
            }
        }
        Ambient::Gen(real) => {
            let w = grading.slot_weights(&zero)?;
            let anchor = w[real.weight_anchor()];
            let coords = &w[..ring.len()];
            Ok(weighted_monomials(ring, coords, k + anchor)?
                .into_iter()
                .map(|m| AlgebraElement::gen(real, SuperPoly::monomial(ring, m, Q::one())))
                .collect())
        }
        Ambient::E510(_) => {
            let w = grading.slot_weights(&zero)?;
            let aux = w[ring.len()];
            let coords = &w[..ring.len()];
            let fields: Vec<AlgebraElement> = field_monomials(ring, coords, k)?
                .into_iter()
                .map(|d| Ok(AlgebraElement::E510(E510Element::new(d, DiffForm::zero(ring)?)?)))
                .collect::<Result<_>>()?;
            let mut out = constrained(&zero, fields, |e| match e {
                AlgebraElement::E510(x) => poly_coords(&x.even.divergence()),
                _ => unreachable!(),
            })?;
            let mut forms = Vec::new();
            for i in 0..ring.len() {
                for j in i + 1..ring.len() {
                    for m in weighted_monomials(ring, coords, k + aux - coords[i] - coords[j])? {
                        let f = SuperPoly::monomial(ring, m, Q::one());
                        let odd = DiffForm::term(f, &[i, j])?;
                        forms.push(AlgebraElement::E510(E510Element::new(VectorField::zero(ring), odd)?));
                    }
                }
            }
            out.extend(constrained(&zero, forms, |e| match e {
                AlgebraElement::E510(x) => form_coords(&x.odd.ext_d()),
                _ => unreachable!(),
            })?);
            Ok(out)
        }
    }
}

/// Degree-indexed bases.
#[derive(Clone, Debug, Default)]
pub struct GradedBasis {
    pub components: BTreeMap<i64, Vec<AlgebraElement>>,
}

/// One row of a dimension report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimRow {
    pub degree: i64,
    pub even: usize,
    pub odd: usize,
}

impl GradedBasis {
    pub fn new() -> GradedBasis {
        GradedBasis::default()
    }

    pub fn get(&self, k: i64) -> Option<&[AlgebraElement]> {
        self.components.get(&k).map(Vec::as_slice)
    }

    pub fn insert(&mut self, k: i64, basis: Vec<AlgebraElement>) {
        self.components.insert(k, basis);
    }

    /// Elements of all negative degrees.
    pub fn negative(&self) -> impl Iterator<Item = (i64, &[AlgebraElement])> {
        self.components.range(..0).map(|(k, v)| (*k, v.as_slice()))
    }

    pub fn dims(&self) -> Result<Vec<DimRow>> {
        self.components
            .iter()
            .map(|(k, v)| {
                let (even, odd) = superdim(v)?;
                Ok(DimRow { degree: *k, even, odd })
            })
            .collect()
    }

    /// Superdimension of the negative part.
    pub fn negative_superdim(&self) -> Result<(usize, usize)> {
        let mut acc = (0, 0);
        for (_, v) in self.negative() {
            let (e, o) = superdim(v)?;
            acc = (acc.0 + e, acc.1 + o);
        }
        Ok(acc)
    }

    /// Checks `[g_i, g_j] ⊆ g_{i+j}` whenever all three components are present.
    pub fn is_closed(&self) -> Result<bool> {
        for (i, a) in &self.components {
            for (j, b) in self.components.range(i..) {
                let Some(target) = self.components.get(&(i + j)) else {
                    continue;
                };
                let mut ech = Echelon::new();
                for t in target {
                    let _ = ech.insert(&t.coords());
                }
                for x in a {
                    for y in b {
                        if !ech.contains(&x.bracket(y)?.coords()) {
                            return Ok(false);
                        }
                    }
                }
            }
        }
        Ok(true)
    }
}

/// `(even, odd)` count of a parity-homogeneous basis.
pub fn superdim(basis: &[AlgebraElement]) -> Result<(usize, usize)> {
    let mut out = (0, 0);
    for b in basis {
        match b.parity()? {
            Parity::Even => out.0 += 1,
            Parity::Odd => out.1 += 1,
        }
    }
    Ok(out)
}

/// The data of a prolong: the ambient, its grading, `g_−`, `g_0` and an
/// optional partial seed replacing `g_1`.
#[derive(Clone, Debug)]
pub struct ProlongSpec {
    pub ambient: Ambient,
    pub grading: Grading,
    pub negative: BTreeMap<i64, Vec<AlgebraElement>>,
    pub zero: Vec<AlgebraElement>,
    pub partial_seed: Option<Vec<AlgebraElement>>,
}

impl ProlongSpec {
    /// `g_−` taken from the ambient's negative components and `g_0` given.
    pub fn standard(ambient: Ambient, grading: Grading, zero: Vec<AlgebraElement>) -> Result<ProlongSpec> {
        let mut negative = BTreeMap::new();
        let mut k = -1;
        loop {
            let c = ambient_component(&ambient, &grading, k)?;
            if c.is_empty() {
                break;
            }
            negative.insert(k, c);
            k -= 1;
        }
        if negative.is_empty() {
            return Err(Error::Config("the grading has no negative part".into()));
        }
        Ok(ProlongSpec {
            ambient,
            grading,
            negative,
            zero,
            partial_seed: None,
        })
    }

    /// `g_0` equal to the whole degree-0 component of the ambient.
    pub fn full(ambient: Ambient, grading: Grading) -> Result<ProlongSpec> {
        let zero = ambient_component(&ambient, &grading, 0)?;
        ProlongSpec::standard(ambient, grading, zero)
    }

    pub fn with_seed(mut self, seed: Vec<AlgebraElement>) -> ProlongSpec {
        self.partial_seed = Some(seed);
        self
    }

    /// The non-positive part as a graded basis.
    pub fn base(&self) -> GradedBasis {
        let mut g = GradedBasis::new();
        for (k, v) in &self.negative {
            g.insert(*k, v.clone());
        }
        g.insert(0, self.zero.clone());
        g
    }
}

/// `g_k = {D of degree k : [D, g_j] ⊆ previous_{k+j} for every j < 0}`.
pub fn prolong_step(spec: &ProlongSpec, k: i64, previous: &GradedBasis) -> Result<Vec<AlgebraElement>> {
    let targets: Vec<(i64, Echelon<Key>)> = spec
        .negative
        .keys()
        .map(|&j| {
            let comp = previous
                .get(k + j)
                .ok_or_else(|| Error::Window(format!("component {} is needed for degree {k}", k + j)))?;
            let mut e = Echelon::new();
            for x in comp {
                let _ = e.insert(&x.coords());
            }
            Ok((j, e))
        })
        .collect::<Result<_>>()?;
    let cands = ambient_component(&spec.ambient, &spec.grading, k)?;
    let zero = spec.ambient.zero()?;
    let mut out = Vec::new();
    for p in [Parity::Even, Parity::Odd] {
        let part: Vec<AlgebraElement> = cands
            .iter()
            .filter(|c| c.parity().map(|q| q == p).unwrap_or(false))
            .cloned()
            .collect();
        let mut images = Vec::with_capacity(part.len());
        for d in &part {
            let mut img: SparseVec<(usize, Key)> = Vec::new();
            let mut slot = 0;
            for (j, ech) in &targets {
                for x in &spec.negative[j] {
                    let r = ech.reduce(&d.bracket(x)?.coords()).residual;
                    img.extend(r.into_iter().map(|(key, c)| ((slot, key), c)));
                    slot += 1;
                }
            }
            images.push(img);
        }
        for c in kernel(&images) {
            out.push(combine(&zero, &part, &c)?);
        }
    }
    Ok(out)
}

/// `h_k = {D : [D, g_j] ⊆ h_{k+j}}` with `h_1` the seed.
pub fn partial_prolong_step(spec: &ProlongSpec, k: i64, previous: &GradedBasis) -> Result<Vec<AlgebraElement>> {
    match (&spec.partial_seed, k) {
        (Some(seed), 1) => Ok(seed.clone()),
        (None, _) => Err(Error::Config("partial prolong needs a seed".into())),
        _ => prolong_step(spec, k, previous),
    }
}

/// Components through degree `max`, using the seed if one is given.
pub fn prolong(spec: &ProlongSpec, max: i64) -> Result<GradedBasis> {
    let mut g = spec.base();
    for k in 1..=max {
        let c = if spec.partial_seed.is_some() {
            partial_prolong_step(spec, k, &g)?
        } else {
            prolong_step(spec, k, &g)?
        };
        g.insert(k, c);
    }
    Ok(g)
}

/// The span of `seed` closed under `ad` of `acting`.
pub fn generated_submodule(acting: &[AlgebraElement], seed: &[AlgebraElement]) -> Result<Vec<AlgebraElement>> {
    let mut ech: Echelon<Key> = Echelon::new();
    let mut basis = Vec::new();
    let mut queue: Vec<AlgebraElement> = seed.to_vec();
    while let Some(v) = queue.pop() {
        if ech.insert(&v.coords()).is_err() {
            continue;
        }
        for a in acting {
            queue.push(a.bracket(&v)?);
        }
        basis.push(v);
    }
    Ok(basis)
}

/// Whether `whole` is the direct sum of the spans of `parts`.
pub fn is_direct_sum(parts: &[Vec<AlgebraElement>], whole: &[AlgebraElement]) -> bool {
    let coords = |v: &[AlgebraElement]| v.iter().map(AlgebraElement::coords).collect::<Vec<_>>();
    let w = coords(whole);
    let rw = rank(&w);
    let mut all = Vec::new();
    let mut total = 0;
    for p in parts {
        let c = coords(p);
        total += rank(&c);
        let mut with_whole = w.clone();
        with_whole.extend(c.iter().cloned());
        if rank(&with_whole) != rw {
            return false;
        }
        all.extend(c);
    }
    total == rw && rank(&all) == rw
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genfun::Pairing;
    use crate::superpoly::Ring;

    fn vect(n: usize) -> RingRef {
        let names: Vec<(String, bool)> = (1..=n).map(|i| (format!("x{i}"), false)).collect();
        let spec: Vec<(&str, bool)> = names.iter().map(|(s, o)| (s.as_str(), *o)).collect();
        Ring::from_names(&spec).unwrap()
    }

    fn field(r: &RingRef, s: &str) -> AlgebraElement {
        AlgebraElement::Field(VectorField::parse(r, s).unwrap())
    }

    fn plain(r: &RingRef) -> Ambient {
        Ambient::Vect {
            ring: r.clone(),
            constraint: Subalgebra::Vect,
        }
    }

    #[test]
    fn ambient_examples() {
        let g = Grading::uniform(1);
        let r1 = vect(1);
        let c = ambient_component(&plain(&r1), &g, 1).unwrap();
        assert_eq!(c, vec![field(&r1, "x1^2*d/dx1")]);
        assert_eq!(ambient_component(&plain(&vect(2)), &g, 1).unwrap().len(), 6);
        let k = Arc::new(ContactRealization::contact(1, 0, Pairing::Theta).unwrap());
        let kg = Grading::uniform(1).set("t", 2);
        let c = ambient_component(&Ambient::Gen(k), &kg, 1).unwrap();
        let mut shown: Vec<String> = c.iter().map(|e| e.to_string()).collect();
        shown.sort();
        assert_eq!(shown.len(), 6);
        assert!(shown.iter().any(|s| s.contains('t')));
    }

    #[test]
    fn divergence_free_components() {
        let r = vect(2);
        let sv = Ambient::Vect {
            ring: r.clone(),
            constraint: Subalgebra::Svect,
        };
        // 6 quadratic fields onto 2 linear polynomials.
        assert_eq!(ambient_component(&sv, &Grading::uniform(1), 1).unwrap().len(), 4);
    }

    #[test]
    fn cartan_prolongs() {
        let r = vect(2);
        let g = Grading::uniform(1);
        let sl2 = vec![
            field(&r, "x1*d/dx2"),
            field(&r, "x2*d/dx1"),
            field(&r, "x1*d/dx1 - x2*d/dx2"),
        ];
        let spec = ProlongSpec::standard(plain(&r), g.clone(), sl2).unwrap();
        let p = prolong(&spec, 2).unwrap();
        assert_eq!(p.get(1).unwrap().len(), 4);
        assert!(p.is_closed().unwrap());

        let r1 = vect(1);
        let spec = ProlongSpec::full(plain(&r1), g).unwrap();
        assert_eq!(prolong(&spec, 1).unwrap().get(1).unwrap().len(), 1);
    }

    #[test]
    fn contact_prolong() {
        let k = Arc::new(ContactRealization::contact(1, 0, Pairing::Theta).unwrap());
        let g = Grading::uniform(1).set("t", 2);
        let spec = ProlongSpec::full(Ambient::Gen(k), g).unwrap();
        assert_eq!(spec.negative[&-2].len(), 1);
        assert_eq!(spec.negative[&-1].len(), 2);
        assert_eq!(spec.zero.len(), 4);
        let p = prolong(&spec, 2).unwrap();
        assert_eq!(p.get(1).unwrap().len(), 6);
        assert_eq!(p.get(2).unwrap().len(), 9);
    }

    #[test]
    fn partial_seeds() {
        let r = vect(2);
        let g = Grading::uniform(1);
        let spec = ProlongSpec::full(plain(&r), g).unwrap();
        let full = prolong(&spec, 3).unwrap();
        let seeded = spec.clone().with_seed(full.get(1).unwrap().to_vec());
        let p = prolong(&seeded, 3).unwrap();
        for k in 1..=3 {
            assert_eq!(p.get(k).unwrap().len(), full.get(k).unwrap().len());
        }
        let p = prolong(&spec.with_seed(Vec::new()), 3).unwrap();
        assert!((1..=3).all(|k| p.get(k).unwrap().is_empty()));
    }

    #[test]
    fn e510_negative_part() {
        let r = vect(5);
        let amb = Ambient::E510(r);
        let g = Grading::uniform(2);
        let spec = ProlongSpec::full(amb, g).unwrap();
        assert_eq!(spec.negative[&-2].len(), 5);
        assert_eq!(superdim(&spec.negative[&-1]).unwrap(), (0, 10));
        assert_eq!(superdim(&spec.zero).unwrap(), (24, 0));
    }

    #[test]
    fn submodules_and_sums() {
        let r = vect(2);
        let g0 = vec![field(&r, "x1*d/dx2"), field(&r, "x2*d/dx1")];
        let a = generated_submodule(&g0, &[field(&r, "d/dx1")]).unwrap();
        assert_eq!(a.len(), 2);
        let whole = vec![field(&r, "d/dx1"), field(&r, "d/dx2")];
        assert!(is_direct_sum(&[vec![whole[0].clone()], vec![whole[1].clone()]], &whole));
        assert!(!is_direct_sum(&[a.clone(), vec![whole[1].clone()]], &whole));
    }

    #[test]
    fn kas_split_and_partial_prolong() {
        let k = Arc::new(ContactRealization::contact(0, 6, Pairing::XiEta).unwrap());
        let f = |s: &str| AlgebraElement::gen(&k, SuperPoly::parse(k.ring(), s).unwrap());
        let g = Grading::uniform(1).set("t", 2);
        let spec = ProlongSpec::full(Ambient::Gen(k.clone()), g).unwrap();
        assert_eq!(spec.zero.len(), 16);
        let base = spec.base();
        let g1 = prolong_step(&spec, 1, &base).unwrap();
        assert_eq!(g1.len(), 26);
        let xi = generated_submodule(&spec.zero, &[f("xi1*xi2*xi3")]).unwrap();
        let eta = generated_submodule(&spec.zero, &[f("eta1*eta2*eta3")]).unwrap();
        let tl = generated_submodule(&spec.zero, &[f("t*xi1")]).unwrap();
        assert_eq!((xi.len(), eta.len(), tl.len()), (10, 10, 6));
        assert!(is_direct_sum(&[xi.clone(), eta, tl.clone()], &g1));
        let mut seed = xi;
        seed.extend(tl);
        let kas = prolong(&spec.with_seed(seed), 4).unwrap();
        for d in 2..=4 {
            assert!(!kas.get(d).unwrap().is_empty(), "degree {d}");
        }
        assert!(kas.is_closed().unwrap());
    }
}
