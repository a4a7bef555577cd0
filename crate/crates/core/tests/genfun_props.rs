mod common;

use common::*;
use proptest::prelude::*;
use superlie::genfun::{ContactRealization, Pairing};
use superlie::superpoly::SuperPoly;
use superlie::Q;

fn realizations() -> Vec<ContactRealization> {
    vec![
        ContactRealization::contact(1, 0, Pairing::Theta).unwrap(),
        ContactRealization::contact(1, 2, Pairing::Theta).unwrap(),
        ContactRealization::contact(1, 3, Pairing::XiEta).unwrap(),
        ContactRealization::contact(0, 6, Pairing::XiEta).unwrap(),
        ContactRealization::pericontact(2, 1).unwrap(),
        ContactRealization::pericontact(3, 0).unwrap(),
        ContactRealization::hamiltonian(1, 2, Pairing::Theta).unwrap(),
        ContactRealization::hamiltonian(0, 6, Pairing::XiEta).unwrap(),
        ContactRealization::periplectic(2, 1).unwrap(),
    ]
}

proptest! {
    #![proptest_config(cases(200))]

    #[test]
    fn field_map_is_a_homomorphism(
        which in 0usize..9,
        a in raw_poly(4, 4),
        b in raw_poly(4, 4),
        pa in any::<bool>(),
        pb in any::<bool>(),
    ) {
        let r = &realizations()[which];
        let f = homogeneous(r.ring(), &a, pa);
        let g = homogeneous(r.ring(), &b, pb);
        prop_assume!(!f.is_zero() && !g.is_zero());
        let lhs = r.field(&f).unwrap().bracket(&r.field(&g).unwrap());
        let rhs = r.field(&r.bracket(&f, &g).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs, "f = {}, g = {}", f, g);
    }
}

#[test]
fn zero_function_gives_zero_field() {
    for r in realizations() {
        assert!(r.field(&SuperPoly::zero(r.ring())).unwrap().is_zero());
    }
}

fn contact_realizations() -> Vec<ContactRealization> {
    vec![
        ContactRealization::contact(1, 0, Pairing::Theta).unwrap(),
        ContactRealization::contact(1, 1, Pairing::Theta).unwrap(),
        ContactRealization::contact(1, 2, Pairing::XiEta).unwrap(),
        ContactRealization::contact(2, 1, Pairing::Theta).unwrap(),
        ContactRealization::contact(0, 6, Pairing::XiEta).unwrap(),
        ContactRealization::contact(0, 3, Pairing::XiEta).unwrap(),
    ]
}

fn t_derivative(r: &ContactRealization, f: &SuperPoly) -> SuperPoly {
    f.partial(r.tau())
}

proptest! {
    #![proptest_config(cases(200))]

    #[test]
    fn contact_fields_scale_the_form(which in 0usize..6, a in raw_poly(4, 4), odd: bool) {
        let r = &contact_realizations()[which];
        let f = homogeneous(r.ring(), &a, odd);
        prop_assume!(!f.is_zero());
        let alpha = r.contact_form().unwrap();
        let lhs = alpha.lie_derivative(&r.field(&f).unwrap()).unwrap();
        let rhs = alpha.mul_left(&t_derivative(r, &f).scale(&Q::from_int(2))).unwrap();
        prop_assert_eq!(lhs, rhs, "f = {}", f);
    }

    #[test]
    fn contact_divergence(which in 0usize..6, a in raw_poly(4, 4), odd: bool) {
        let r = &contact_realizations()[which];
        let f = homogeneous(r.ring(), &a, odd);
        prop_assume!(!f.is_zero());
        let k = 2 * r.n as i64 + 2 - r.m as i64;
        let lhs = r.field(&f).unwrap().divergence();
        // Half of K_1(f) = 2·∂f/∂t per unit of 2n+2−m.
        let rhs = t_derivative(r, &f).scale(&Q::from_int(k));
        prop_assert_eq!(lhs, rhs, "f = {}", f);
    }

    #[test]
    fn pericontact_divergence(n in 1usize..4, a in raw_poly(4, 4), odd: bool) {
        let r = ContactRealization::pericontact(n, 1).unwrap();
        let f = homogeneous(r.ring(), &a, odd);
        prop_assume!(!f.is_zero());
        let dtau = t_derivative(&r, &f);
        let one_minus_e = dtau.sub(&r.euler(&dtau));
        let s = Q::from_int(if odd { -2 } else { 2 });
        let rhs = one_minus_e.sub(&r.odd_laplacian(&f)).scale(&s);
        prop_assert_eq!(r.field(&f).unwrap().divergence(), rhs, "f = {}", f);
    }

    #[test]
    fn periplectic_divergence(n in 1usize..4, a in raw_poly(4, 4), odd: bool) {
        let r = ContactRealization::periplectic(n, 1).unwrap();
        let f = homogeneous(r.ring(), &a, odd);
        prop_assume!(!f.is_zero());
        let s = Q::from_int(if odd { -2 } else { 2 });
        let div = r.field(&f).unwrap().divergence();
        prop_assert_eq!(&div, &r.odd_laplacian(&f).scale(&s), "f = {}", f);
        prop_assert_eq!(div.is_zero(), r.odd_laplacian(&f).is_zero());
    }
}

proptest! {
    #![proptest_config(cases(200))]

    #[test]
    fn function_bracket_satisfies_jacobi(
        which in 0usize..9,
        a in raw_poly(3, 3), b in raw_poly(3, 3), c in raw_poly(3, 3),
        pa: bool, pb: bool, pc: bool,
    ) {
        let r = &realizations()[which];
        let (f, g, h) = (homogeneous(r.ring(), &a, pa), homogeneous(r.ring(), &b, pb), homogeneous(r.ring(), &c, pc));
        // Parities of the fields, which carry the sign rule.
        let fa = r.field_parity(superlie::Parity::from_bool(pa));
        let fb = r.field_parity(superlie::Parity::from_bool(pb));
        let br = |x: &SuperPoly, y: &SuperPoly| r.bracket(x, y).unwrap();
        let lhs = br(&f, &br(&g, &h));
        let rhs = br(&br(&f, &g), &h).add(&br(&g, &br(&f, &h)).scale(&Q::sign(fa.both_odd(fb))));
        prop_assert_eq!(lhs, rhs, "f = {}, g = {}, h = {}", f, g, h);
    }
}
