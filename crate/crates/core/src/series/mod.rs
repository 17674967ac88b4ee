//! Exact truncated Laurent series in one variable, sparse multivariate
//! polynomials, and the `ς`, `1/ς`, `1/S` expansions.

mod laurent;
mod multipoly;
mod special;

pub use laurent::{LaurentSeries, EXACT};
pub use multipoly::{Monomial, MultiPoly};
pub use special::{
    bernoulli, exp_series, inv_sigma_series, reciprocal_s_coefficients, reciprocal_s_series,
    sigma_series, sigma_series_poly,
};

use std::fmt::Debug;

use num_traits::{One, Zero};

use crate::rational::Rational;

/// Ring operations needed for series coefficients. Named to stay clear of
/// `num_traits` and `std::ops` so generic code reads unambiguously.
pub trait Coefficient: Clone + PartialEq + Debug + Send + Sync {
    fn zero_elem() -> Self;
    fn one_elem() -> Self;
    fn vanishes(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn scaled(&self, q: &Rational) -> Self;
    fn negated(&self) -> Self;

    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negated())
    }
}

impl Coefficient for Rational {
    fn zero_elem() -> Self {
        Zero::zero()
    }

    fn one_elem() -> Self {
        One::one()
    }

    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }

    fn plus(&self, other: &Self) -> Self {
        self + other
    }

    fn times(&self, other: &Self) -> Self {
        self * other
    }

    fn scaled(&self, q: &Rational) -> Self {
        self * q
    }

    fn negated(&self) -> Self {
        -self
    }
}
