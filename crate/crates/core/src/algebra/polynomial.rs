use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;

/// Dense univariate polynomial in the dimension indeterminate `n`.
///
/// `coeffs[i]` is the coefficient of `n^i`. Trailing zeros are stripped on
/// construction, so the zero polynomial has an empty coefficient list.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// Builds a polynomial from integer coefficients, lowest degree first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate `n`.
    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    /// `alpha * n + beta`.
    pub fn linear(alpha: Rational, beta: Rational) -> Self {
        Self::new(vec![beta, alpha])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `n^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Scales to a monic polynomial. The zero polynomial is returned unchanged.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading_coeff();
        self.scale(&lc.recip())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + rational_to_f64(c))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Substitutes `n -> inner`, i.e. returns `self(inner(n))`.
    pub fn compose(&self, inner: &Polynomial) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            &(&acc * inner) + &Self::constant(c.clone())
        })
    }

    /// `self(n0 + m)` as a polynomial in `m`.
    pub fn shift(&self, n0: &Rational) -> Self {
        self.compose(&Self::linear(Rational::one(), n0.clone()))
    }

    /// Euclidean division: returns `(q, r)` with `self = q * div + r`, `deg r < deg div`.
    ///
    /// Panics if `div` is zero.
    pub fn div_rem(&self, div: &Polynomial) -> (Polynomial, Polynomial) {
        assert!(!div.is_zero(), "polynomial division by zero");
        let dd = div.coeffs.len() - 1;
        let lc = div.leading_coeff();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] / &lc;
            if !c.is_zero() {
                for (j, d) in div.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * d;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.monic()
    }

    /// Content as a positive rational: gcd of numerators over lcm of denominators.
    pub fn content(&self) -> Rational {
        if self.is_zero() {
            return Rational::one();
        }
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in &self.coeffs {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        Rational::new(num, den)
    }

    /// `self / content`, an integer polynomial with coprime coefficients and the
    /// sign of the leading coefficient preserved.
    pub fn primitive_part(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.content().recip())
    }

    /// Rational roots by the rational root theorem, with multiplicity, sorted ascending.
    pub fn rational_roots(&self) -> Vec<Rational> {
        let mut roots = Vec::new();
        let mut p = self.primitive_part();
        if p.is_zero() {
            return roots;
        }
        while p.coeff(0).is_zero() {
            roots.push(Rational::zero());
            p = Self::new(p.coeffs[1..].to_vec());
        }
        if p.degree() == Some(0) {
            return roots;
        }
        let a0 = p.coeff(0).numer().abs();
        let an = p.leading_coeff().numer().abs();
        let cands_num = divisors(&a0);
        let cands_den = divisors(&an);
        for pn in &cands_num {
            for qd in &cands_den {
                for sign in [1i32, -1] {
                    let cand = Rational::new(pn * BigInt::from(sign), qd.clone());
                    loop {
                        if p.degree().unwrap_or(0) == 0 || !p.eval(&cand).is_zero() {
                            break;
                        }
                        roots.push(cand.clone());
                        let lin = Self::linear(Rational::one(), -cand.clone());
                        p = p.div_rem(&lin).0;
                    }
                }
            }
        }
        roots.sort();
        roots
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    // Coefficients here stay small (a few digits); trial division is enough.
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &(&d * &d) <= n {
        if (n % &d).is_zero() {
            out.push(d.clone());
            let q = n / &d;
            if q != d {
                out.push(q);
            }
        }
        d += 1;
    }
    out.sort();
    out
}

pub(crate) fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Writes `r` as `p/q` (or `p`), the exact form used throughout reports.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Polynomial {
    /// Expanded form, highest degree first: `2/3n^2 + 29/6n + 1076/3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mag = if a.is_one() && i > 0 {
                String::new()
            } else {
                format_rational(&a)
            };
            match i {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{mag}n")?,
                _ => write!(f, "{mag}n^{i}")?,
            }
        }
        Ok(())
    }
}

/// Factored display: `content(primitive)` with rational linear factors split
/// off where they exist, e.g. `8(n - 2)(n + 2)` or `4(4n^3 + 53n^2 + 10n + 128)`.
pub fn format_factored(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".into();
    }
    if p.degree() == Some(0) {
        return format_rational(&p.coeff(0));
    }
    let mut roots = p.rational_roots();
    roots.reverse();
    let mut rest = p.clone();
    let mut factors: Vec<String> = Vec::new();
    for root in &roots {
        // integer-coefficient linear factor q*n - p
        let lin = Polynomial::linear(
            Rational::from_integer(root.denom().clone()),
            Rational::from_integer(-root.numer().clone()),
        );
        rest = rest.div_rem(&lin).0;
        if root.is_zero() {
            factors.push("n".into());
        } else {
            factors.push(format!("({lin})"));
        }
    }
    let content = rest.content() * if rest.leading_coeff().is_negative() { -Rational::one() } else { Rational::one() };
    let core = rest.scale(&content.recip());
    let mut out = String::new();
    if content == -Rational::one() {
        out.push('-');
    } else if !content.is_one() {
        out.push_str(&format_rational(&content));
    }
    if core.degree() != Some(0) {
        if factors.is_empty() && out.is_empty() {
            out.push_str(&core.to_string());
        } else {
            out.push_str(&format!("({core})"));
        }
    }
    for fct in factors {
        out.push_str(&fct);
    }
    if out.is_empty() || out == "-" {
        out.push('1');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn zero_is_normalized() {
        let p = Polynomial::from_ints(&[0, 0, 0]);
        assert!(p.is_zero());
        assert_eq!(p.degree(), None);
        assert_eq!(p.to_string(), "0");
    }

    #[test]
    fn division_reconstructs() {
        let a = Polynomial::from_ints(&[128, 10, 53, 4]);
        let b = Polynomial::from_ints(&[-2, 1]);
        let (qt, r) = a.div_rem(&b);
        assert_eq!(&(&qt * &b) + &r, a);
        assert!(r.degree().unwrap_or(0) == 0);
    }

    #[test]
    fn gcd_of_shared_factor() {
        let a = &Polynomial::from_ints(&[-2, 1]) * &Polynomial::from_ints(&[3, 1]);
        let b = &Polynomial::from_ints(&[-2, 1]) * &Polynomial::from_ints(&[5, 7]);
        assert_eq!(a.gcd(&b), Polynomial::from_ints(&[-2, 1]));
    }

    #[test]
    fn shift_moves_root() {
        let p = Polynomial::from_ints(&[-10, 1]);
        assert_eq!(p.shift(&q(3, 1)), Polynomial::from_ints(&[-7, 1]));
    }

    #[test]
    fn display_forms() {
        let p = Polynomial::new(vec![q(1076, 3), q(29, 6), q(2, 3)]);
        assert_eq!(p.to_string(), "2/3n^2 + 29/6n + 1076/3");
        let d = Polynomial::from_ints(&[512, 40, 212, 16]);
        assert_eq!(format_factored(&d), "4(4n^3 + 53n^2 + 10n + 128)");
        let den = Polynomial::from_ints(&[-32, 0, 8]);
        assert_eq!(format_factored(&den), "8(n - 2)(n + 2)");
        assert_eq!(format_factored(&Polynomial::from_ints(&[15, 5])), "5(n + 3)");
        assert_eq!(format_factored(&Polynomial::from_ints(&[0, 2])), "2n");
    }

    #[test]
    fn rational_roots_with_multiplicity() {
        let p = &(&Polynomial::from_ints(&[-2, 1]) * &Polynomial::from_ints(&[-2, 1]))
            * &Polynomial::from_ints(&[1, 3]);
        assert_eq!(p.rational_roots(), vec![q(-1, 3), q(2, 1), q(2, 1)]);
    }
}
