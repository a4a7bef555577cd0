mod common;

use std::sync::Arc;

use common::*;
use proptest::prelude::*;
use superlie::element::AlgebraElement;
use superlie::formsreal::{DiffForm, E510Element};
use superlie::genfun::{ContactRealization, Pairing};
use superlie::grading::{degree_of, Grading};
use superlie::superpoly::{Ring, RingRef, SuperPoly};
use superlie::vfield::VectorField;
use superlie::Q;

/// One monomial `c·x^a` in `r`.
fn monomial(r: &RingRef, vars: &[usize], c: i64) -> SuperPoly {
    let mut t = SuperPoly::constant(r, Q::from_int(c));
    for v in vars {
        t = t.mul(&SuperPoly::var(r, v % r.len()));
    }
    t
}

fn mono_raw() -> impl Strategy<Value = (Vec<usize>, usize)> {
    (prop::collection::vec(0usize..64, 0..=3), 0usize..64)
}

/// Checks `deg [a, b] = deg a + deg b` whenever the bracket is nonzero.
fn additive(a: &AlgebraElement, b: &AlgebraElement, g: &Grading) -> Result<(), TestCaseError> {
    let (Some(da), Some(db)) = (degree_of(a, g).unwrap(), degree_of(b, g).unwrap()) else {
        return Ok(());
    };
    if let Some(d) = degree_of(&a.bracket(b).unwrap(), g).unwrap() {
        prop_assert_eq!(d, da + db);
    }
    Ok(())
}

proptest! {
    #![proptest_config(cases(200))]

    #[test]
    fn vector_field_degrees_add(
        w in prop::collection::vec(-2i64..3, 4),
        (ma, ia) in mono_raw(), (mb, ib) in mono_raw(),
    ) {
        let names = ["x1", "x2", "x3", "x4"];
        let r = Ring::from_names(&[("x1", false), ("x2", false), ("x3", true), ("x4", true)]).unwrap();
        let g = names.iter().zip(&w).fold(Grading::default(), |g, (n, d)| g.set(n, *d));
        let field = |m: &[usize], i: usize| AlgebraElement::Field(VectorField::from_component(&r, i % 4, monomial(&r, m, 1)));
        additive(&field(&ma, ia), &field(&mb, ib), &g)?;
    }

    #[test]
    fn generating_function_degrees_add(which in 0usize..3, (ma, _) in mono_raw(), (mb, _) in mono_raw()) {
        let (r, g) = match which {
            0 => (ContactRealization::contact(1, 2, Pairing::Theta).unwrap(), Grading::uniform(1).set("t", 2)),
            1 => (ContactRealization::contact(0, 6, Pairing::XiEta).unwrap(), Grading::uniform(1).set("t", 2)),
            _ => (ContactRealization::pericontact(3, 1).unwrap(), Grading::uniform(1).set("tau", 2)),
        };
        let r = Arc::new(r);
        let el = |m: &[usize]| AlgebraElement::gen(&r, monomial(r.ring(), m, 1));
        additive(&el(&ma), &el(&mb), &g)?;
    }

    #[test]
    fn e510_degrees_add((ma, ia) in mono_raw(), (mb, ib) in mono_raw(), oa: bool, ob: bool) {
        let r = Ring::from_names(&[("x1", false), ("x2", false), ("x3", false), ("x4", false), ("x5", false)]).unwrap();
        let g = Grading::uniform(2).set("x5", 4);
        let el = |m: &[usize], i: usize, odd: bool| {
            let f = monomial(&r, m, 1);
            let e = if odd {
                // d(f·dx_i) is closed and homogeneous.
                E510Element::new(VectorField::zero(&r), DiffForm::term(f, &[i % 5]).unwrap().ext_d()).unwrap()
            } else {
                // vol⁻¹ d(f·dx_I) with |I| = 3 is divergence free.
                let idx: Vec<usize> = (0..5).filter(|j| *j != i % 5 && *j != (i + 1) % 5).collect();
                let w = DiffForm::term(f, &idx).unwrap().ext_d();
                let v = if w.is_zero() { VectorField::zero(&r) } else { w.vol_identify().unwrap() };
                E510Element::new(v, DiffForm::zero(&r).unwrap()).unwrap()
            };
            AlgebraElement::E510(e)
        };
        additive(&el(&ma, ia, oa), &el(&mb, ib, ob), &g)?;
    }
}
