//! Correlated equilibrium polytopes of finite normal-form games.
//!
//! The crate builds the polytope `{p >= 0, A(Y) p >= 0, sum(p) = 1}` in exact
//! rational arithmetic, computes its vertices, face lattice and
//! combinatorial type, and studies how the type varies with the payoff
//! differences `Y` through the signs of the maximal minors of `A(Y)`.

pub mod classify;
pub mod cone;
pub mod equilibria;
mod error;
pub mod game;
pub mod linalg;
pub mod polyhedra;
pub mod strata;

/// Exact rational number used throughout.
pub type Rational = num_rational::BigRational;

pub use error::{Error, Result};
pub use game::{DifferenceVector, Game, GameShape};
