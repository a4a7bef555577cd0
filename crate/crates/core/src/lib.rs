//! Exact symbolic engine for vectorial Lie superalgebras.
//!
//! The crate realizes Lie superalgebras of polynomial vector fields over
//! the rationals, computes Cartan prolongations and Chevalley–Eilenberg
//! homology in low degrees, and checks nested-bracket relations.

pub mod element;
pub mod error;
pub mod formsreal;
pub mod genfun;
pub mod grading;
pub mod homology;
pub mod linalg;
mod parse;
pub mod presentations;
pub mod prolong;
pub mod rational;
pub mod superpoly;
pub mod supermat;
pub mod vfield;

pub use error::{Error, Result};
pub use rational::Q;
pub use superpoly::{Monomial, Parity, PolyParity, Ring, RingRef, SuperPoly};
