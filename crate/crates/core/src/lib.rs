//! Exact computations around Eulerian numbers and their polyhedral and
//! algebraic incarnations: hypersimplex and cube-slice volumes, refined
//! Eulerian numbers of circular permutations, mixed volumes of Newton
//! polytopes, constant terms of powers of Laurent polynomials, and degrees of
//! the ideals they generate.
//!
//! Everything is computed exactly with big integers and rationals.

pub mod arith;
pub mod bijection;
pub mod combinatorics;
pub mod error;
pub mod groebner;
pub mod laurent;
pub mod polytope;
pub mod verify;

pub use arith::{binomial, parse_rational, ExponentVector, MultiPoly, Rational};
pub use error::{Error, Result};
