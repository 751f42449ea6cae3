//! Exact-arithmetic computation and verification of composition
//! polynomials and their combinatorics.
//!
//! The crate computes the composition polynomials `g_I(q)` (iterated
//! integrals over a simplex), their reduced integer forms
//! `P_I(q) = n! g_I(q) / (1-q)^r`, and checks them against three
//! independent descriptions:
//!
//! * the sinv statistic on permutitions (set partitions with ordered
//!   blocks), whose generating function by shape is `P_I`;
//! * the coefficient of `Psi^I` in the `(1-q)`-transform of the
//!   noncommutative complete functions;
//! * the descent-algebra realization by iterated (q-)bracketings.
//!
//! It also executes the two maps whose disjoint union proves the
//! recursion between the `P_I` and verifies them exhaustively, shape by
//! shape. All arithmetic is exact: big rationals, no floating point.

pub mod bijection;
pub mod composition;
pub mod descent;
pub mod error;
pub mod gpoly;
pub mod nsym;
pub mod permutition;
pub mod qpoly;
pub mod rational;
pub mod report;
pub mod tpoly;

pub use composition::{compositions_of, Composition};
pub use error::{Error, Result};
pub use permutition::Permutition;
pub use qpoly::QPoly;
pub use rational::Rational;
pub use report::CheckReport;
pub use tpoly::TPoly;
