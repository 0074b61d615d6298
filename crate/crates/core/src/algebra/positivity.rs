//! Deciding `p(n) > 0` for every real `n >= n0`.
//!
//! A cheap sufficient test runs first: after substituting `n = n0 + m`, a
//! polynomial with nonnegative coefficients and a positive constant term is
//! positive for all `m >= 0`. Otherwise a Sturm sequence counts the distinct
//! real roots on `(n0, inf)`; zero roots together with `p(n0) > 0` decides it.

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::polynomial::Polynomial;
use super::Rational;

/// How a positivity verdict was reached.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PositivityWitness {
    /// Every coefficient of `p(n0 + m)` is nonnegative, constant term positive.
    ShiftedCoefficients,
    /// Sturm sign variations at `n0` and at `+inf` are equal (no root past `n0`)
    /// and the value at `n0` is positive.
    Sturm {
        variations_at_start: usize,
        variations_at_infinity: usize,
        value_at_start: String,
    },
    /// The value at `n0` is not positive.
    NonPositiveAtStart { value_at_start: String },
    /// At least one real root lies in `(n0, inf)`.
    RootsOnRay { count: usize },
    ZeroPolynomial,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PositivityVerdict {
    pub positive: bool,
    pub witness: PositivityWitness,
}

/// Returns whether `p(n) > 0` for every real `n >= n0`, with a witness.
pub fn nonnegative_on_ray(p: &Polynomial, n0: &Rational) -> PositivityVerdict {
    if p.is_zero() {
        return PositivityVerdict {
            positive: false,
            witness: PositivityWitness::ZeroPolynomial,
        };
    }
    let shifted = p.shift(n0);
    if shifted.coeff(0).is_positive() && shifted.coeffs().iter().all(|c| !c.is_negative()) {
        return PositivityVerdict {
            positive: true,
            witness: PositivityWitness::ShiftedCoefficients,
        };
    }
    let at_start = p.eval(n0);
    if !at_start.is_positive() {
        return PositivityVerdict {
            positive: false,
            witness: PositivityWitness::NonPositiveAtStart {
                value_at_start: super::polynomial::format_rational(&at_start),
            },
        };
    }
    let seq = sturm_sequence(p);
    let v_start = variations(seq.iter().map(|q| q.eval(n0)));
    let v_inf = variations(seq.iter().map(|q| q.leading_coeff()));
    if v_start == v_inf {
        PositivityVerdict {
            positive: true,
            witness: PositivityWitness::Sturm {
                variations_at_start: v_start,
                variations_at_infinity: v_inf,
                value_at_start: super::polynomial::format_rational(&at_start),
            },
        }
    } else {
        PositivityVerdict {
            positive: false,
            witness: PositivityWitness::RootsOnRay {
                count: v_start - v_inf,
            },
        }
    }
}

/// Number of distinct real roots in the half-open interval `(a, b]`.
pub fn count_roots(p: &Polynomial, a: &Rational, b: &Rational) -> usize {
    let seq = sturm_sequence(p);
    let va = variations(seq.iter().map(|q| q.eval(a)));
    let vb = variations(seq.iter().map(|q| q.eval(b)));
    va.saturating_sub(vb)
}

/// Standard Sturm chain `p, p', -rem(p, p'), ...`, with each member rescaled
/// to its primitive part (positive scaling keeps the sign pattern intact).
pub fn sturm_sequence(p: &Polynomial) -> Vec<Polynomial> {
    let mut seq = vec![p.clone()];
    let d = p.derivative();
    if d.is_zero() {
        return seq;
    }
    seq.push(d);
    loop {
        let len = seq.len();
        let (_, r) = seq[len - 2].div_rem(&seq[len - 1]);
        if r.is_zero() {
            break;
        }
        let next = -&r;
        let c = next.content();
        seq.push(next.scale(&c.recip()));
    }
    seq
}

fn variations(values: impl Iterator<Item = Rational>) -> usize {
    let mut count = 0;
    let mut last: Option<bool> = None;
    for v in values {
        if v.is_zero() {
            continue;
        }
        let pos = v.is_positive();
        if let Some(l) = last {
            if l != pos {
                count += 1;
            }
        }
        last = Some(pos);
    }
    count
}
