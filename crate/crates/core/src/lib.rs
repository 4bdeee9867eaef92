//! Exact symbolic computation of graded dimensions of y-ified, column- and
//! row-colored triply-graded homology of positive torus links, together with
//! a Hecke-algebra HOMFLYPT oracle used for cross-validation.
//!
//! The crate is `no_std` (with `alloc`): all values are exact rational
//! functions over arbitrary-precision integers, all operations are pure, and
//! everything is freely shareable across threads. IO, file formats, and the
//! command line live in the companion `torushom-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod error;
pub mod hecke;
pub mod invariants;
pub mod poly;
pub mod ratfunc;
pub mod recursion;
pub mod symmetric;

pub use error::{Error, Result};
pub use poly::{gaussian_factorial, LaurentPoly, Monomial, VAR_A, VAR_Q, VAR_T};
pub use ratfunc::{RatFunc, Sign, Unit};
pub use recursion::{dispatch, evaluate, explain, MemoTable, RuleId};
pub use symmetric::{Permutation, State, Theory, Word};
