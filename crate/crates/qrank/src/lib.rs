//! Exact arithmetic behind the rank/complexity correspondence for Q-curves.
//!
//! The crate computes, entirely over the integers:
//!
//! - periodic continued fractions of quadratic surds ([`cfrac`]),
//! - minimal solutions of x^2 - D y^2 = r for r in {1, -1, 2, -2} and the
//!   induced trichotomy of odd primes ([`pell`]),
//! - continuants (Muir symbols), the period diophantine equation and its
//!   radicand formula ([`muir`]),
//! - period-shape classification and the arithmetic complexity of the
//!   associated real-multiplication torus ([`complexity`]),
//! - class numbers of imaginary quadratic fields by reduced-form counting
//!   and the Q-rank of the curves E(p) ([`rank`]),
//! - the endomorphism-matrix functor between complex- and real-
//!   multiplication parameters ([`functor`]).
//!
//! [`report`] bundles all of the above into one record per prime, which the
//! CLI serializes as CSV or JSON lines.

pub mod cfrac;
pub mod complexity;
pub mod error;
pub mod functor;
pub mod muir;
pub mod pell;
pub mod primes;
pub mod rank;
pub mod report;

pub use error::{Error, Result};
