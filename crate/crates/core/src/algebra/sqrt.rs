use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::polynomial::format_rational;
use super::{AlgebraError, Rational};

/// Rational bounds `lower <= sqrt(radicand) <= upper`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SqrtEnclosure {
    pub lower: Rational,
    pub upper: Rational,
    pub radicand: Rational,
}

impl SqrtEnclosure {
    pub fn width(&self) -> Rational {
        &self.upper - &self.lower
    }

    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    pub fn interval(&self) -> Interval {
        Interval::new(self.lower.clone(), self.upper.clone())
    }
}

/// Encloses `sqrt(x)` by rationals at most `width` apart.
///
/// Perfect squares come back exact. Otherwise, for `x = p/q`, the bounds are
/// `floor(sqrt(p q M^2)) / (q M)` and the next grid point up, with `M` chosen so
/// the grid spacing `1/(q M)` does not exceed `width`.
pub fn sqrt_enclosure(x: &Rational, width: &Rational) -> Result<SqrtEnclosure, AlgebraError> {
    if x.is_negative() {
        return Err(AlgebraError::NegativeRadicand(format_rational(x)));
    }
    if !width.is_positive() {
        return Err(AlgebraError::NonPositiveWidth);
    }
    if let Some(r) = exact_sqrt(x) {
        return Ok(SqrtEnclosure {
            lower: r.clone(),
            upper: r,
            radicand: x.clone(),
        });
    }
    let p = x.numer();
    let q = x.denom();
    // smallest M with 1/(q M) <= width, i.e. M >= 1/(q width)
    let inv = (Rational::from_integer(q.clone()) * width).recip();
    let m = inv.ceil().to_integer().max(BigInt::one());
    let scale = q * &m;
    let s = (p * q * &m * &m).sqrt();
    Ok(SqrtEnclosure {
        lower: Rational::new(s.clone(), scale.clone()),
        upper: Rational::new(s + 1, scale),
        radicand: x.clone(),
    })
}

/// `Some(sqrt(x))` when `x` is the square of a rational.
pub fn exact_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let sn = x.numer().sqrt();
    let sd = x.denom().sqrt();
    if &(&sn * &sn) == x.numer() && &(&sd * &sd) == x.denom() {
        Some(Rational::new(sn, sd))
    } else {
        None
    }
}

/// Closed rational interval `[lo, hi]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi);
        Self { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        Self {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// `Some(Less)` if entirely below `other`, `Some(Greater)` if entirely above,
    /// `None` when they overlap.
    pub fn separation(&self, other: &Interval) -> Option<Ordering> {
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if self.lo > other.hi {
            Some(Ordering::Greater)
        } else {
            None
        }
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval::new(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    /// Multiplication by an exact rational.
    pub fn scale(&self, c: &Rational) -> Interval {
        let a = &self.lo * c;
        let b = &self.hi * c;
        if a <= b {
            Interval::new(a, b)
        } else {
            Interval::new(b, a)
        }
    }
}

/// The real number `rational + coeff * sqrt(radicand)` with rational parts.
///
/// Roots of the per-eigencomponent trinomials have this shape, so they are kept
/// exact and only enclosed when compared.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuadraticSurd {
    pub rational: Rational,
    pub coeff: Rational,
    pub radicand: Rational,
}

impl QuadraticSurd {
    pub fn new(rational: Rational, coeff: Rational, radicand: Rational) -> Result<Self, AlgebraError> {
        if radicand.is_negative() {
            return Err(AlgebraError::NegativeRadicand(format_rational(&radicand)));
        }
        Ok(Self {
            rational,
            coeff,
            radicand,
        })
    }

    pub fn from_rational(r: Rational) -> Self {
        Self {
            rational: r,
            coeff: Rational::zero(),
            radicand: Rational::zero(),
        }
    }

    /// Collapses to a rational when the radical part vanishes or is a perfect square.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeff.is_zero() {
            return Some(self.rational.clone());
        }
        exact_sqrt(&self.radicand).map(|s| &self.rational + &self.coeff * s)
    }

    /// An interval of width at most `width` containing the value.
    pub fn enclose(&self, width: &Rational) -> Interval {
        if let Some(r) = self.as_rational() {
            return Interval::point(r);
        }
        let w = width / self.coeff.abs();
        let e = sqrt_enclosure(&self.radicand, &w).expect("radicand checked nonnegative");
        e.interval().scale(&self.coeff).add(&Interval::point(self.rational.clone()))
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.rational.to_f64().unwrap_or(f64::NAN)
            + self.coeff.to_f64().unwrap_or(f64::NAN) * self.radicand.to_f64().unwrap_or(f64::NAN).sqrt()
    }

    /// Decimal string with `digits` fractional digits, computed from a rational
    /// enclosure so it does not depend on platform floats.
    pub fn to_decimal(&self, digits: usize) -> String {
        let w = Rational::new(BigInt::one(), BigInt::from(10).pow(digits as u32 + 2));
        decimal_string(&self.enclose(&w).midpoint(), digits)
    }
}

/// Renders `r` to `digits` fractional digits (round half away from zero).
pub fn decimal_string(r: &Rational, digits: usize) -> String {
    let scale = BigInt::from(10).pow(digits as u32);
    let scaled = r * Rational::from_integer(scale.clone());
    let rounded = scaled.round().to_integer();
    let neg = rounded.is_negative();
    let mag = rounded.abs();
    let int = &mag / &scale;
    let frac = &mag % &scale;
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{:0>width$}", frac.to_string(), width = digits)
    }
}

impl fmt::Display for QuadraticSurd {
    /// Exact form `a+b*sqrt(r)`, parseable by [`parse_surd`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeff.is_zero() {
            return write!(f, "{}", format_rational(&self.rational));
        }
        write!(
            f,
            "{}{}{}*sqrt({})",
            format_rational(&self.rational),
            if self.coeff.is_negative() { "-" } else { "+" },
            format_rational(&self.coeff.abs()),
            format_rational(&self.radicand)
        )
    }
}

/// Parses a rational in `p/q` or `p` form.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p.trim().parse().ok()?, q))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

/// Inverse of the [`QuadraticSurd`] display form.
pub fn parse_surd(s: &str) -> Option<QuadraticSurd> {
    let s = s.trim();
    let Some(pos) = s.find("*sqrt(") else {
        return parse_rational(s).map(QuadraticSurd::from_rational);
    };
    let head = &s[..pos];
    let rad = s[pos + 6..].strip_suffix(')')?;
    // split head at the sign separating rational part and coefficient, skipping a leading sign
    let split = head
        .char_indices()
        .skip(1)
        .filter(|(_, c)| *c == '+' || *c == '-')
        .map(|(i, _)| i)
        .last()?;
    let rational = parse_rational(&head[..split])?;
    let sign = if &head[split..split + 1] == "-" { -Rational::one() } else { Rational::one() };
    let coeff = parse_rational(&head[split + 1..])? * sign;
    QuadraticSurd::new(rational, coeff, parse_rational(rad)?).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn perfect_square_is_exact() {
        let e = sqrt_enclosure(&q(4, 1), &q(1, 1_000_000)).unwrap();
        assert!(e.is_exact());
        assert_eq!(e.lower, q(2, 1));
        let e = sqrt_enclosure(&q(0, 1), &q(1, 10)).unwrap();
        assert_eq!((e.lower, e.upper), (q(0, 1), q(0, 1)));
    }

    #[test]
    fn negative_radicand_is_error() {
        assert!(matches!(
            sqrt_enclosure(&q(-1, 2), &q(1, 10)),
            Err(AlgebraError::NegativeRadicand(_))
        ));
    }

    #[test]
    fn two_thirds_to_thirty_digits() {
        let w = Rational::new(1.into(), BigInt::from(10).pow(30));
        let e = sqrt_enclosure(&q(2, 3), &w).unwrap();
        assert!(e.width() <= w);
        assert!(&e.lower * &e.lower <= q(2, 3));
        assert!(&e.upper * &e.upper >= q(2, 3));
        assert!(decimal_string(&e.lower, 12).starts_with("0.816496580"));
    }

    #[test]
    fn surd_display_parses_back() {
        let s = QuadraticSurd::new(q(-3, 7), q(-5, 2), q(11, 3)).unwrap();
        assert_eq!(s.to_string(), "-3/7-5/2*sqrt(11/3)");
        assert_eq!(parse_surd(&s.to_string()), Some(s));
        let r = QuadraticSurd::from_rational(q(9, 4));
        assert_eq!(parse_surd(&r.to_string()), Some(r));
    }

    #[test]
    fn decimal_rounding() {
        assert_eq!(decimal_string(&q(2, 3), 3), "0.667");
        assert_eq!(decimal_string(&q(-1, 8), 2), "-0.13");
        assert_eq!(decimal_string(&q(5, 1), 0), "5");
    }
}
