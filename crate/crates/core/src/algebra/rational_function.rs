use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::polynomial::{format_factored, Polynomial};
use super::{AlgebraError, Rational};

/// Ratio of two polynomials in `n`, kept in canonical form: coprime, with a
/// monic denominator. Two equal functions therefore compare equal structurally.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            return Self {
                num,
                den: Polynomial::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let lc = den.leading_coeff();
        Self {
            num: num.scale(&lc.recip()),
            den: den.monic(),
        }
    }

    pub fn from_poly(p: Polynomial) -> Self {
        Self {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn zero() -> Self {
        Self::from_poly(Polynomial::zero())
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Evaluates at `x`; `None` at a pole.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    pub fn recip(&self) -> Result<Self, AlgebraError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::normalized(self.num.scale(c), self.den.clone())
    }

    /// Numerator and denominator with integer coefficients, content moved to a
    /// single leading rational: `c * N / D` with `N`, `D` primitive and `D` positive-leading.
    pub fn integer_form(&self) -> (Rational, Polynomial, Polynomial) {
        if self.is_zero() {
            return (Rational::zero(), Polynomial::zero(), Polynomial::one());
        }
        let cn = self.num.content();
        let cd = self.den.content();
        (
            cn.clone() / cd.clone(),
            self.num.scale(&cn.recip()),
            self.den.scale(&cd.recip()),
        )
    }

    /// `numerator * denominator`, which has the same sign as `self` away from poles.
    pub fn sign_polynomial(&self) -> Polynomial {
        &self.num * &self.den
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::normalized(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::normalized(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;
    /// Panics when dividing by the zero function.
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        assert!(!rhs.is_zero(), "rational function division by zero");
        RationalFunction::normalized(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        Self::from_poly(p)
    }
}

impl fmt::Display for RationalFunction {
    /// Factored display, e.g. `(n^2 - 49n + 36)/(8(n - 2)(n + 2))`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (c, n, d) = self.integer_form();
        if c.is_zero() {
            return write!(f, "0");
        }
        // fold the rational content into numerator and denominator constants
        let num = n.scale(&Rational::from_integer(c.numer().clone()));
        let den = d.scale(&Rational::from_integer(c.denom().clone()));
        let num_s = format_factored(&num);
        if den.degree() == Some(0) && den.coeff(0).is_one() {
            return write!(f, "{num_s}");
        }
        let num_s = if num.degree().unwrap_or(0) > 0 && !num_s.ends_with(')') {
            format!("({num_s})")
        } else {
            num_s
        };
        write!(f, "{num_s}/({})", format_factored(&den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancels_common_factor() {
        let num = &Polynomial::from_ints(&[-2, 1]) * &Polynomial::from_ints(&[1, 1]);
        let den = &Polynomial::from_ints(&[-2, 1]) * &Polynomial::from_ints(&[0, 3]);
        let f = RationalFunction::new(num, den).unwrap();
        assert_eq!(f.num(), &Polynomial::new(vec![
            Rational::new(1.into(), 3.into()),
            Rational::new(1.into(), 3.into())
        ]));
        assert_eq!(f.den(), &Polynomial::x());
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            RationalFunction::new(Polynomial::one(), Polynomial::zero()),
            Err(AlgebraError::ZeroDenominator)
        );
    }

    #[test]
    fn arithmetic_round_trip() {
        let a = RationalFunction::new(Polynomial::from_ints(&[1, 2]), Polynomial::from_ints(&[-2, 1])).unwrap();
        let b = RationalFunction::new(Polynomial::from_ints(&[3]), Polynomial::from_ints(&[1, 1])).unwrap();
        let s = &a + &b;
        assert_eq!(&s - &b, a);
        assert_eq!(&(&a * &b) / &b, a);
    }

    #[test]
    fn factored_display() {
        let f = RationalFunction::new(
            Polynomial::from_ints(&[36, -49, 1]),
            Polynomial::from_ints(&[-32, 0, 8]),
        )
        .unwrap();
        assert_eq!(f.to_string(), "(n^2 - 49n + 36)/(8(n - 2)(n + 2))");
    }
}
