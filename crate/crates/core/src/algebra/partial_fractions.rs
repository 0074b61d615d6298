//! Partial fractions over distinct rational linear factors.
//!
//! For `f = N/D` with `D = c * prod (n - rho_i)` the expansion is
//!
//! ```text
//! f = Q(n) + sum_i  e_i / (n - rho_i),    e_i = N(rho_i) / D'(rho_i)
//! ```
//!
//! which is the shape `a n^2 + b n + d + e/(n - 2) + f/(nu - n + 1)` used by the
//! discriminant lower bounds.

use std::fmt;

use num_traits::{One, Signed, Zero};

use super::polynomial::Polynomial;
use super::rational_function::RationalFunction;
use super::{AlgebraError, Rational};

/// One simple-pole term `residue / (n - root)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimplePole {
    /// The linear factor as supplied by the caller (not necessarily monic).
    pub factor: Polynomial,
    pub root: Rational,
    /// Residue with respect to the monic factor `n - root`.
    pub residue: Rational,
}

impl SimplePole {
    /// Numerator over the caller's own factor: `residue/(n - root) = c / factor`.
    pub fn coefficient_over_factor(&self) -> Rational {
        &self.residue * self.factor.leading_coeff()
    }

    pub fn as_rational_function(&self) -> RationalFunction {
        RationalFunction::new(
            Polynomial::constant(self.residue.clone()),
            Polynomial::linear(Rational::one(), -self.root.clone()),
        )
        .expect("linear factor is nonzero")
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PartialFractionExpansion {
    pub polynomial_part: Polynomial,
    pub simple_poles: Vec<SimplePole>,
}

impl PartialFractionExpansion {
    /// Sums every term back over a common denominator.
    pub fn recombine(&self) -> RationalFunction {
        self.simple_poles.iter().fold(
            RationalFunction::from_poly(self.polynomial_part.clone()),
            |acc, p| &acc + &p.as_rational_function(),
        )
    }

    pub fn residue_at(&self, root: &Rational) -> Option<&Rational> {
        self.simple_poles
            .iter()
            .find(|p| &p.root == root)
            .map(|p| &p.residue)
    }

    /// Quadratic, linear and constant coefficients of the polynomial part.
    pub fn quadratic_coeffs(&self) -> [Rational; 3] {
        [
            self.polynomial_part.coeff(2),
            self.polynomial_part.coeff(1),
            self.polynomial_part.coeff(0),
        ]
    }
}

impl fmt::Display for PartialFractionExpansion {
    /// `2/3n^2 + 29/6n + 1076/3 + 2842/(9(n - 2)) - 1104/(n + 2) + 4601/(9(n + 1))`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = self.polynomial_part.to_string();
        let mut poles: Vec<&SimplePole> = self.simple_poles.iter().filter(|p| !p.residue.is_zero()).collect();
        poles.sort_by(|a, b| b.root.cmp(&a.root));
        for p in poles {
            let neg = p.residue.is_negative();
            let mag = p.residue.abs();
            let lin = Polynomial::linear(Rational::one(), -p.root.clone());
            let den = if mag.denom().is_one() {
                format!("({lin})")
            } else {
                format!("({}({lin}))", mag.denom())
            };
            let term = format!("{}/{den}", mag.numer());
            if s == "0" {
                s = if neg { format!("-{term}") } else { term };
            } else {
                s = format!("{s} {} {term}", if neg { "-" } else { "+" });
            }
        }
        write!(f, "{s}")
    }
}

/// Decomposes `f` over the given distinct linear factors.
///
/// The monic denominator of `f` must equal the monic product of `factors`, and
/// the polynomial part may have degree at most two.
pub fn partial_fractions(
    f: &RationalFunction,
    factors: &[Polynomial],
) -> Result<PartialFractionExpansion, AlgebraError> {
    if f.is_zero() {
        let mut poles = Vec::with_capacity(factors.len());
        for fac in factors {
            poles.push(SimplePole {
                root: linear_root(fac)?,
                factor: fac.clone(),
                residue: Rational::zero(),
            });
        }
        return Ok(PartialFractionExpansion {
            polynomial_part: Polynomial::zero(),
            simple_poles: poles,
        });
    }

    let mut roots = Vec::with_capacity(factors.len());
    for fac in factors {
        let r = linear_root(fac)?;
        if roots.contains(&r) {
            return Err(AlgebraError::InvalidFactorization(format!(
                "repeated factor {fac}"
            )));
        }
        roots.push(r);
    }
    let product = factors
        .iter()
        .fold(Polynomial::one(), |acc, fac| &acc * fac)
        .monic();
    if &product != f.den() {
        return Err(AlgebraError::InvalidFactorization(format!(
            "factors multiply to {product}, denominator is {}",
            f.den()
        )));
    }

    let (quot, _) = f.num().div_rem(f.den());
    if quot.degree().unwrap_or(0) > 2 {
        return Err(AlgebraError::InvalidFactorization(format!(
            "polynomial part has degree {}",
            quot.degree().unwrap_or(0)
        )));
    }
    let dprime = f.den().derivative();
    let simple_poles = factors
        .iter()
        .zip(roots)
        .map(|(fac, root)| {
            let residue = f.num().eval(&root) / dprime.eval(&root);
            SimplePole {
                factor: fac.clone(),
                root,
                residue,
            }
        })
        .collect();
    Ok(PartialFractionExpansion {
        polynomial_part: quot,
        simple_poles,
    })
}

fn linear_root(fac: &Polynomial) -> Result<Rational, AlgebraError> {
    if fac.degree() != Some(1) {
        return Err(AlgebraError::InvalidFactorization(format!(
            "factor {fac} is not linear"
        )));
    }
    Ok(-fac.coeff(0) / fac.coeff(1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn zero_input_gives_zero_expansion() {
        let f = RationalFunction::zero();
        let e = partial_fractions(&f, &[Polynomial::from_ints(&[-2, 1])]).unwrap();
        assert!(e.polynomial_part.is_zero());
        assert_eq!(e.simple_poles[0].residue, q(0, 1));
        assert_eq!(e.simple_poles[0].root, q(2, 1));
    }

    #[test]
    fn rejects_repeated_factor() {
        let den = Polynomial::from_ints(&[-2, 1]).pow(2);
        let f = RationalFunction::new(Polynomial::one(), den).unwrap();
        let fac = Polynomial::from_ints(&[-2, 1]);
        let err = partial_fractions(&f, &[fac.clone(), fac]).unwrap_err();
        assert!(matches!(err, AlgebraError::InvalidFactorization(_)));
    }

    #[test]
    fn rejects_non_dividing_factor() {
        let f = RationalFunction::new(Polynomial::one(), Polynomial::from_ints(&[-2, 1])).unwrap();
        let err = partial_fractions(&f, &[Polynomial::from_ints(&[3, 1])]).unwrap_err();
        assert!(matches!(err, AlgebraError::InvalidFactorization(_)));
    }

    #[test]
    fn non_monic_factor_coefficient() {
        // 1/((n+1)(2n+4)) = 1/2 * (1/(n+1) - 1/(n+2))
        let den = &Polynomial::from_ints(&[1, 1]) * &Polynomial::from_ints(&[4, 2]);
        let f = RationalFunction::new(Polynomial::one(), den).unwrap();
        let e = partial_fractions(
            &f,
            &[Polynomial::from_ints(&[1, 1]), Polynomial::from_ints(&[4, 2])],
        )
        .unwrap();
        assert_eq!(e.simple_poles[0].residue, q(1, 2));
        assert_eq!(e.simple_poles[1].residue, q(-1, 2));
        assert_eq!(e.simple_poles[1].coefficient_over_factor(), q(-1, 1));
        assert_eq!(e.recombine(), f);
    }
}
