//! All-dimension certificates. Each `Delta_k` is split as
//! `a n^2 + b n + const + poles`, giving `sqrt(Delta_k) > sqrt(a)(n + b/(2a))` on
//! the admissible ray; substituting these bounds into
//!
//! ```text
//! (n-2)(d_j - d_i) + d_i sqrt(Delta_j) + d_j sqrt(Delta_i) > 0      (i < j)
//! ```
//!
//! leaves a polynomial inequality decided by Sturm sequences.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::CertifyError;
use crate::algebra::{
    format_rational, nonnegative_on_ray, rat, sqrt_enclosure, Polynomial, PositivityVerdict,
    Rational, RationalFunction,
};
use crate::spectral::{spectral_family, SpectralRow};

/// A certified lower bound `sqrt(Delta_k) > scale * (n + shift)` on the ray.
#[derive(Clone, Debug, Serialize)]
pub struct LowerBound {
    pub k: u32,
    /// Partial fraction of `Delta_k`, human readable.
    pub expansion: String,
    /// Quadratic coefficient `a`.
    pub quadratic: String,
    /// `b / (2a)`.
    pub shift: String,
    /// Rational lower enclosure of `sqrt(a)`; zero for the trivial bound.
    pub scale: String,
    /// Whether the partial-fraction bound failed and `sqrt(Delta_k) > 0` is used.
    pub trivial: bool,
    /// `Delta_k - a(n + shift)^2 > 0` (or `Delta_k > 0` for the trivial bound).
    pub gap_witness: PositivityVerdict,
    #[serde(skip)]
    scale_exact: Rational,
    #[serde(skip)]
    shift_exact: Rational,
}

impl LowerBound {
    /// `scale * (n + shift)` as a polynomial.
    pub fn polynomial(&self) -> Polynomial {
        Polynomial::linear(self.scale_exact.clone(), &self.scale_exact * &self.shift_exact)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PairCheck {
    pub i: u32,
    pub j: u32,
    /// The polynomial whose positivity on the ray gives `x_j < y_i`.
    pub polynomial: String,
    pub witness: PositivityVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum CertificateVerdict {
    Certified,
    /// First pair whose bound could not be established.
    Failed { omega: u32, i: u32, j: u32 },
}

#[derive(Clone, Debug, Serialize)]
pub struct SymbolicCertificate {
    pub omega: u32,
    pub valid_from: u64,
    /// `d_k > 0` on the ray.
    pub d_positive: Vec<(u32, PositivityVerdict)>,
    /// `d_k - d_{k+1} > 0` on the ray, so `x_i < y_j` for `i < j`.
    pub monotonicity: Vec<(u32, PositivityVerdict)>,
    pub lower_bounds: Vec<LowerBound>,
    pub pair_checks: Vec<PairCheck>,
    pub verdict: CertificateVerdict,
}

impl SymbolicCertificate {
    pub fn is_certified(&self) -> bool {
        self.verdict == CertificateVerdict::Certified
    }
}

fn sqrt_lower(a: &Rational) -> Rational {
    let w = Rational::new(BigInt::one(), BigInt::from(10).pow(30));
    sqrt_enclosure(a, &w).expect("positive quadratic coefficient").lower
}

fn lower_bound(row: &SpectralRow, n0: &Rational) -> Result<LowerBound, CertifyError> {
    let pf = row.delta_partial_fractions()?;
    let [a, b, _] = pf.quadratic_coeffs();
    let expansion = pf.to_string();
    let trivial = |gap_witness: PositivityVerdict, a: &Rational, shift: &Rational| LowerBound {
        k: row.k,
        expansion: expansion.clone(),
        quadratic: format_rational(a),
        shift: format_rational(shift),
        scale: "0".into(),
        trivial: true,
        gap_witness,
        scale_exact: Rational::zero(),
        shift_exact: Rational::zero(),
    };
    let positive_delta = || nonnegative_on_ray(&row.delta.sign_polynomial(), n0);
    if !a.is_positive() {
        return Ok(trivial(positive_delta(), &a, &Rational::zero()));
    }
    let shift = &b / (rat(2, 1) * &a);
    if (n0 + &shift).is_negative() {
        return Ok(trivial(positive_delta(), &a, &shift));
    }
    let square = RationalFunction::from_poly(Polynomial::linear(Rational::one(), shift.clone()).pow(2).scale(&a));
    let gap = &row.delta - &square;
    let gap_witness = nonnegative_on_ray(&gap.sign_polynomial(), n0);
    if !gap_witness.positive {
        return Ok(trivial(positive_delta(), &a, &shift));
    }
    let scale = sqrt_lower(&a);
    Ok(LowerBound {
        k: row.k,
        expansion,
        quadratic: format_rational(&a),
        shift: format_rational(&shift),
        scale: format_rational(&scale),
        trivial: false,
        gap_witness,
        scale_exact: scale,
        shift_exact: shift,
    })
}

/// Builds the certificate for every `n >= 2 omega + 6`. Failure is reported in
/// [`SymbolicCertificate::verdict`], not as an error.
pub fn symbolic_certificate(omega: u32) -> Result<SymbolicCertificate, CertifyError> {
    if omega < 2 {
        return Err(CertifyError::CoveredByPriorWork(omega));
    }
    let family = spectral_family(omega)?;
    let valid_from = 2 * omega as u64 + 6;
    let n0 = Rational::from_integer(BigInt::from(valid_from));
    let d_positive: Vec<_> = family
        .iter()
        .map(|r| (r.k, nonnegative_on_ray(&r.d, &n0)))
        .collect();
    let monotonicity: Vec<_> = family
        .windows(2)
        .map(|w| (w[0].k, nonnegative_on_ray(&(&w[0].d - &w[1].d), &n0)))
        .collect();
    let lower_bounds = family
        .iter()
        .map(|r| lower_bound(r, &n0))
        .collect::<Result<Vec<_>, _>>()?;

    let mut verdict = CertificateVerdict::Certified;
    if let Some((k, _)) = d_positive.iter().chain(&monotonicity).find(|(_, v)| !v.positive) {
        verdict = CertificateVerdict::Failed { omega, i: *k, j: *k };
    }
    if let Some(lb) = lower_bounds.iter().find(|lb| !lb.gap_witness.positive) {
        if verdict == CertificateVerdict::Certified {
            verdict = CertificateVerdict::Failed { omega, i: lb.k, j: lb.k };
        }
    }

    let nm2 = Polynomial::from_ints(&[-2, 1]);
    let mut pair_checks = Vec::new();
    for (ii, ri) in family.iter().enumerate() {
        for (jj, rj) in family.iter().enumerate().skip(ii + 1) {
            let p = &(&(&nm2 * &(&rj.d - &ri.d)) + &(&ri.d * &lower_bounds[jj].polynomial()))
                + &(&rj.d * &lower_bounds[ii].polynomial());
            let witness = nonnegative_on_ray(&p, &n0);
            if !witness.positive && verdict == CertificateVerdict::Certified {
                verdict = CertificateVerdict::Failed { omega, i: ri.k, j: rj.k };
            }
            pair_checks.push(PairCheck {
                i: ri.k,
                j: rj.k,
                polynomial: p.to_string(),
                witness,
            });
        }
    }
    Ok(SymbolicCertificate {
        omega,
        valid_from,
        d_positive,
        monotonicity,
        lower_bounds,
        pair_checks,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega5_single_pair() {
        let c = symbolic_certificate(5).unwrap();
        assert!(c.is_certified());
        assert_eq!(c.pair_checks.len(), 1);
        assert_eq!((c.pair_checks[0].i, c.pair_checks[0].j), (1, 2));
        assert_eq!(c.lower_bounds[1].quadratic, "2/3");
        assert_eq!(c.lower_bounds[1].shift, "29/8");
    }

    #[test]
    fn omega7_three_pairs() {
        let c = symbolic_certificate(7).unwrap();
        assert!(c.is_certified());
        assert_eq!(c.pair_checks.len(), 3);
        let shifts: Vec<_> = c.lower_bounds.iter().map(|l| l.shift.as_str()).collect();
        assert_eq!(shifts, ["-9/8", "25/16", "61/8"]);
    }

    #[test]
    fn omega3_has_no_pairs() {
        let c = symbolic_certificate(3).unwrap();
        assert!(c.is_certified());
        assert!(c.pair_checks.is_empty());
    }

    #[test]
    fn omega16_fails_as_value() {
        let c = symbolic_certificate(16).unwrap();
        assert!(matches!(c.verdict, CertificateVerdict::Failed { omega: 16, .. }));
    }
}
