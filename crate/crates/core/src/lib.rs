//! Exact polynomial algebra for multidegrees of tame automorphisms of affine
//! 3-space.
//!
//! The crate is layered bottom-up:
//!
//! - [`poly`]: sparse multivariate polynomials over the rationals, with a
//!   bit-exact text format.
//! - [`bracket`]: partial derivatives, Jacobian minors and the Poisson
//!   bracket degree.
//! - [`pairs`]: *-reduced pair predicates and the Shestakov–Umirbaev degree
//!   lower bound.
//! - [`semigroup`]: membership in two-generator degree sets.
//! - [`degree`]: the degree bookkeeping that rules out elementary reductions,
//!   and the type III systems.
//! - [`classify`]: verdicts for degree triples in arithmetic progression.
//! - [`automorphism`]: polynomial maps with tracked inverses, tame witnesses
//!   and the bounded elementary-reduction search.
//! - [`cli`]: the `mdeg` command-line front end.

pub mod automorphism;
pub mod bracket;
pub mod classify;
pub mod cli;
pub mod degree;
pub mod error;
pub mod linsolve;
pub mod pairs;
mod parse;
pub mod poly;
pub mod semigroup;

pub use automorphism::{Elementary, PolyMap};
pub use bracket::BracketValue;
pub use classify::{Status, Verdict};
pub use error::{Error, Result};
pub use poly::{Coeff, Degree, Monomial, Polynomial};
