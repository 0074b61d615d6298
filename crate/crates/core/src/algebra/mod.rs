//! Exact arithmetic in `Q[n]`: polynomials, rational functions, partial
//! fractions, positivity on a ray and square-root enclosures.

mod partial_fractions;
mod polynomial;
mod positivity;
mod rational_function;
mod sqrt;

use thiserror::Error;

pub use partial_fractions::{partial_fractions, PartialFractionExpansion, SimplePole};
pub use polynomial::{format_factored, format_rational, Polynomial};
pub use positivity::{count_roots, nonnegative_on_ray, sturm_sequence, PositivityVerdict, PositivityWitness};
pub use rational_function::RationalFunction;
pub use sqrt::{
    decimal_string, exact_sqrt, parse_rational, parse_surd, sqrt_enclosure, Interval, QuadraticSurd,
    SqrtEnclosure,
};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("denominator is the zero polynomial")]
    ZeroDenominator,
    #[error("invalid factorization: {0}")]
    InvalidFactorization(String),
    #[error("negative radicand {0}")]
    NegativeRadicand(String),
    #[error("enclosure width must be positive")]
    NonPositiveWidth,
}

/// Shorthand for `p/q` as a [`Rational`].
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}
