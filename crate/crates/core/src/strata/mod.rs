//! Symbolic maximal minors of `A(Y)` and the components of their zero sets.

mod factor;
mod minors;
mod poly;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::game::DifferenceVector;
use crate::Rational;

pub use factor::{
    analyze_strata, binomial_catalog, factor_minor_2xn, irreducible_components, relabelled_binomials,
    Components,
    Factorizer, MinorFactorization, StrataSummary,
};
pub use minors::{for_each_maximal_minor, maximal_minors, minor_count, Minor};
pub use poly::{Monomial, PolynomialDump, SymbolicPolynomial, TermDump};

/// Size caps for the symbolic computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StrataLimits {
    /// Largest number of joint profiles `D` for minor enumeration.
    pub max_joint: usize,
    /// Largest `n` for `(2 x n)` component listing.
    pub max_n: usize,
}

impl Default for StrataLimits {
    fn default() -> Self {
        Self {
            max_joint: 8,
            max_n: 5,
        }
    }
}

/// `delta * (2 delta - 1)^(m - 1) * (1 + 3 beta)`.
pub fn strata_region_bound(delta: i64, beta: i64, m: i64) -> Result<BigInt> {
    if delta < 1 || beta < 1 || m < 1 {
        return Err(Error::InvalidArgument(format!(
            "bound needs positive arguments, got ({delta}, {beta}, {m})"
        )));
    }
    let base = BigInt::from(2 * delta - 1);
    Ok(BigInt::from(delta) * num_traits::pow(base, (m - 1) as usize) * BigInt::from(1 + 3 * beta))
}

pub fn evaluate_polynomial(p: &SymbolicPolynomial, y: &DifferenceVector) -> Result<Rational> {
    p.evaluate(y)
}
