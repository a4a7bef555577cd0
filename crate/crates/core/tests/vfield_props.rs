mod common;

use common::*;
use proptest::prelude::*;
use superlie::superpoly::{Parity, Ring, RingRef, SuperPoly};
use superlie::vfield::VectorField;
use superlie::Q;

fn ring() -> RingRef {
    Ring::from_names(&[("u", false), ("v", false), ("xi1", true), ("xi2", true)]).unwrap()
}

/// A field of the given parity with random component polynomials.
fn field(r: &RingRef, raw: &[RawPoly], odd: bool) -> VectorField {
    let comps: Vec<SuperPoly> = raw.iter().map(|p| build(r, p)).collect();
    VectorField::from_components(r, comps).unwrap().parity_part(Parity::from_bool(odd))
}

fn components() -> impl Strategy<Value = Vec<RawPoly>> {
    prop::collection::vec(raw_poly(2, 3), 4)
}

fn sign(a: bool, b: bool) -> Q {
    Q::sign(a && b)
}

proptest! {
    #![proptest_config(cases(200))]

    #[test]
    fn jacobi(a in components(), b in components(), c in components(), pa: bool, pb: bool, pc: bool) {
        let r = ring();
        let (x, y, z) = (field(&r, &a, pa), field(&r, &b, pb), field(&r, &c, pc));
        let lhs = x.bracket(&y.bracket(&z));
        let rhs = x.bracket(&y).bracket(&z).add(&y.bracket(&x.bracket(&z)).scale(&sign(pa, pb)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_is_the_supercommutator(a in components(), b in components(), pa: bool, pb: bool, f in raw_poly(3, 4)) {
        let r = ring();
        let (x, y) = (field(&r, &a, pa), field(&r, &b, pb));
        let f = build(&r, &f);
        let rhs = x.apply(&y.apply(&f)).sub(&y.apply(&x.apply(&f)).scale(&sign(pa, pb)));
        prop_assert_eq!(x.bracket(&y).apply(&f), rhs);
    }

    #[test]
    fn divergence_of_a_bracket(a in components(), b in components(), pa: bool, pb: bool) {
        let r = ring();
        let (x, y) = (field(&r, &a, pa), field(&r, &b, pb));
        let rhs = x.apply(&y.divergence()).sub(&y.apply(&x.divergence()).scale(&sign(pa, pb)));
        prop_assert_eq!(x.bracket(&y).divergence(), rhs);
    }
}
