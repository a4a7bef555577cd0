#![allow(dead_code)]

use proptest::prelude::*;
use superlie::superpoly::{Parity, RingRef, SuperPoly};
use superlie::Q;

/// Raw material for a random polynomial: per term a list of variable slots
/// (reduced modulo the ring size) and a small integer coefficient.
pub type RawPoly = Vec<(Vec<usize>, i64)>;

pub fn raw_poly(max_deg: usize, max_terms: usize) -> impl Strategy<Value = RawPoly> {
    prop::collection::vec((prop::collection::vec(0usize..64, 0..=max_deg), -3i64..=3), 1..=max_terms)
}

/// Builds `Σ c·x_{i1}⋯x_{ik}` in the given ring.
pub fn build(ring: &RingRef, raw: &RawPoly) -> SuperPoly {
    let mut acc = SuperPoly::zero(ring);
    for (vars, c) in raw {
        let mut t = SuperPoly::constant(ring, Q::from_int(*c));
        for v in vars {
            t = t.mul(&SuperPoly::var(ring, v % ring.len()));
        }
        acc = acc.add(&t);
    }
    acc
}

/// Parity-homogeneous part selected by `odd`.
pub fn homogeneous(ring: &RingRef, raw: &RawPoly, odd: bool) -> SuperPoly {
    build(ring, raw).parity_part(Parity::from_bool(odd))
}

pub fn cases(n: u32) -> ProptestConfig {
    ProptestConfig {
        cases: n,
        ..ProptestConfig::default()
    }
}
