mod common;

use common::*;
use proptest::prelude::*;
use superlie::formsreal::{DiffForm, E510Element};
use superlie::superpoly::{Ring, RingRef};
use superlie::vfield::VectorField;

fn ring5() -> RingRef {
    Ring::from_names(&[("x1", false), ("x2", false), ("x3", false), ("x4", false), ("x5", false)]).unwrap()
}

/// Raw material for a form: a polynomial and an index mask per term.
fn raw_form(max_terms: usize) -> impl Strategy<Value = Vec<(RawPoly, u32)>> {
    prop::collection::vec((raw_poly(2, 2), 0u32..32), 1..=max_terms)
}

fn form_of_degree(r: &RingRef, raw: &[(RawPoly, u32)], k: u32) -> DiffForm {
    let mut acc = DiffForm::zero(r).unwrap();
    for (p, mask) in raw {
        let mut idx: Vec<usize> = (0..5).filter(|j| mask >> j & 1 == 1).collect();
        // Trim or pad the index set to `k` entries.
        idx.truncate(k as usize);
        let mut j = 0;
        while idx.len() < k as usize {
            if !idx.contains(&j) {
                idx.push(j);
            }
            j += 1;
        }
        idx.sort_unstable();
        acc = acc.add(&DiffForm::term(build(r, p), &idx).unwrap());
    }
    acc
}

fn field(r: &RingRef, raw: &[RawPoly]) -> VectorField {
    VectorField::from_components(r, raw.iter().map(|p| build(r, p)).collect()).unwrap()
}

/// A divergence-free field `vol⁻¹(dβ)` or a closed 2-form `dγ`.
fn e510(r: &RingRef, raw: &[(RawPoly, u32)], odd: bool) -> E510Element {
    if odd {
        E510Element::new(VectorField::zero(r), form_of_degree(r, raw, 1).ext_d()).unwrap()
    } else {
        let w = form_of_degree(r, raw, 3).ext_d();
        let even = if w.is_zero() { VectorField::zero(r) } else { w.vol_identify().unwrap() };
        E510Element::new(even, DiffForm::zero(r).unwrap()).unwrap()
    }
}

fn sign(a: bool, b: bool) -> superlie::Q {
    superlie::Q::sign(a && b)
}

proptest! {
    #![proptest_config(cases(200))]

    #[test]
    fn d_squares_to_zero(raw in raw_form(4), k in 0u32..4) {
        let r = ring5();
        prop_assert!(form_of_degree(&r, &raw, k).ext_d().ext_d().is_zero());
    }

    #[test]
    fn lie_derivative_is_a_representation(
        a in prop::collection::vec(raw_poly(2, 2), 5),
        b in prop::collection::vec(raw_poly(2, 2), 5),
        raw in raw_form(3),
        k in 0u32..4,
    ) {
        let r = ring5();
        let (d1, d2) = (field(&r, &a), field(&r, &b));
        let w = form_of_degree(&r, &raw, k);
        let lhs = w.lie_derivative(&d1.bracket(&d2)).unwrap();
        let rhs = w
            .lie_derivative(&d2).unwrap()
            .lie_derivative(&d1).unwrap()
            .sub(&w.lie_derivative(&d1).unwrap().lie_derivative(&d2).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn e510_jacobi(
        ra in raw_form(3), rb in raw_form(3), rc in raw_form(3),
        oa: bool, ob: bool, oc: bool,
    ) {
        let r = ring5();
        let (a, b, c) = (e510(&r, &ra, oa), e510(&r, &rb, ob), e510(&r, &rc, oc));
        prop_assert!(a.is_valid().unwrap() && b.is_valid().unwrap());
        let lhs = a.bracket(&b.bracket(&c).unwrap()).unwrap();
        let rhs = a
            .bracket(&b).unwrap()
            .bracket(&c).unwrap()
            .add(&b.bracket(&a.bracket(&c).unwrap()).unwrap().scale(&sign(oa, ob)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn odd_brackets_are_symmetric(ra in raw_form(3), rb in raw_form(3)) {
        let r = ring5();
        let (a, b) = (e510(&r, &ra, true), e510(&r, &rb, true));
        let ab = a.bracket(&b).unwrap();
        prop_assert_eq!(&ab, &b.bracket(&a).unwrap());
        prop_assert!(ab.is_valid().unwrap());
    }
}
