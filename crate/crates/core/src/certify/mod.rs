//! Interval-intersection certificates for the trinomial conditions
//!
//! ```text
//! d_k/(2(n-2)) c^2 - (n-2) c + (n-2) u_k/(2 nu_k^2) < 0,   k = 1..floor(omega/2)
//! ```
//!
//! whose roots are `x_k, y_k = ((n-2)^2 -/+ (n-2) sqrt(Delta_k)) / d_k`. A common
//! `c` exists iff `max x_k < min y_k`.

mod scan;
mod symbolic;

pub use scan::{scan, OmegaSummary, ScanEntry, ScanReport};
pub use symbolic::{
    symbolic_certificate, CertificateVerdict, LowerBound, PairCheck, SymbolicCertificate,
};

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{rat, Interval, QuadraticSurd, Rational};
use crate::spectral::{spectral_family, SpectralError, SpectralRow};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error("hypothesis violated: n = {n} < 2*omega + 6 = {min} for omega = {omega}")]
    HypothesisViolated { omega: u32, n: u64, min: u64 },
    #[error("omega = {0} is covered by prior work")]
    CoveredByPriorWork(u32),
    #[error("Delta_{k} = {value} is not positive at omega = {omega}, n = {n}")]
    NonPositiveDiscriminant {
        omega: u32,
        n: u64,
        k: u32,
        value: String,
    },
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// Which leading-degree case of the scalar curvature expansion applies.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MuBranch {
    /// The leading homogeneous part has degree exactly `omega`.
    #[default]
    DegRbarEqualsOmega,
    /// Degree at least `omega + 1`; then `c = 0` already works.
    DegRbarAtLeastOmegaPlusOne,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertStatus {
    Nonempty,
    Empty,
    /// Enclosures could not separate the extreme roots down to the width cap.
    Undecided,
}

impl CertStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CertStatus::Nonempty => "nonempty",
            CertStatus::Empty => "empty",
            CertStatus::Undecided => "undecided",
        }
    }
}

/// Roots of one trinomial, exact as quadratic surds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootPair {
    pub k: u32,
    pub delta: Rational,
    pub x: QuadraticSurd,
    pub y: QuadraticSurd,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalCertificate {
    pub omega: u32,
    pub n: u64,
    pub pairs: Vec<RootPair>,
    pub nonempty: bool,
    pub chosen_c: Option<Rational>,
    pub mu_branch: MuBranch,
    pub status: CertStatus,
}

/// First enclosure width tried when comparing roots.
pub fn initial_width() -> Rational {
    Rational::new(BigInt::one(), BigInt::from(10).pow(30))
}

/// Refinement stops below this width and reports a possible tie.
pub fn width_cap() -> Rational {
    Rational::new(BigInt::one(), BigInt::from(10).pow(200))
}

fn check_hypothesis(omega: u32, n: u64) -> Result<(), CertifyError> {
    if omega < 2 {
        return Err(CertifyError::CoveredByPriorWork(omega));
    }
    let min = 2 * omega as u64 + 6;
    if n < min {
        return Err(CertifyError::HypothesisViolated { omega, n, min });
    }
    Ok(())
}

pub fn roots_at(omega: u32, n: u64) -> Result<Vec<RootPair>, CertifyError> {
    check_hypothesis(omega, n)?;
    roots_from_family(&spectral_family(omega)?, n)
}

pub(crate) fn roots_from_family(family: &[SpectralRow], n: u64) -> Result<Vec<RootPair>, CertifyError> {
    let nn = Rational::from_integer(BigInt::from(n));
    let nm2 = &nn - rat(2, 1);
    family
        .iter()
        .map(|row| {
            let delta = row.delta.eval(&nn).expect("no pole on the admissible ray");
            if !delta.is_positive() {
                return Err(CertifyError::NonPositiveDiscriminant {
                    omega: row.omega,
                    n,
                    k: row.k,
                    value: crate::algebra::format_rational(&delta),
                });
            }
            let d = row.d.eval(&nn);
            let center = &nm2 * &nm2 / &d;
            let spread = &nm2 / &d;
            Ok(RootPair {
                k: row.k,
                x: QuadraticSurd::new(center.clone(), -spread.clone(), delta.clone())?,
                y: QuadraticSurd::new(center, spread, delta.clone())?,
                delta,
            })
        })
        .collect::<Result<_, _>>()
}

impl From<crate::algebra::AlgebraError> for CertifyError {
    fn from(e: crate::algebra::AlgebraError) -> Self {
        CertifyError::Spectral(SpectralError::Algebra(e))
    }
}

/// Trinomial value `d/(2(n-2)) c^2 - (n-2) c + (n-2) u/(2 nu^2)` at exact `c`.
pub fn trinomial_at(row: &SpectralRow, n: u64, c: &Rational) -> Rational {
    let nn = Rational::from_integer(BigInt::from(n));
    let nm2 = &nn - rat(2, 1);
    let d = row.d.eval(&nn);
    let nu = row.nu.eval(&nn);
    let uon = row.u_over_nu.eval(&nn).expect("no pole on the admissible ray");
    let two = rat(2, 1);
    &d / (&two * &nm2) * c * c - &nm2 * c + &nm2 * uon / (two * nu)
}

/// Encloses `max x_k` and `min y_k` at the given width.
fn extremes(pairs: &[RootPair], width: &Rational) -> (Interval, Interval) {
    let mut max_x: Option<Interval> = None;
    let mut min_y: Option<Interval> = None;
    for p in pairs {
        let xi = p.x.enclose(width);
        let yi = p.y.enclose(width);
        max_x = Some(match max_x {
            None => xi,
            Some(m) => Interval::new(m.lo.max(xi.lo), m.hi.max(xi.hi)),
        });
        min_y = Some(match min_y {
            None => yi,
            Some(m) => Interval::new(m.lo.min(yi.lo), m.hi.min(yi.hi)),
        });
    }
    (max_x.expect("nonempty family"), min_y.expect("nonempty family"))
}

pub fn certify_at(omega: u32, n: u64, mu_branch: MuBranch) -> Result<IntervalCertificate, CertifyError> {
    check_hypothesis(omega, n)?;
    certify_with_family(&spectral_family(omega)?, omega, n, mu_branch)
}

pub(crate) fn certify_with_family(
    family: &[SpectralRow],
    omega: u32,
    n: u64,
    mu_branch: MuBranch,
) -> Result<IntervalCertificate, CertifyError> {
    if mu_branch == MuBranch::DegRbarAtLeastOmegaPlusOne {
        return Ok(IntervalCertificate {
            omega,
            n,
            pairs: Vec::new(),
            nonempty: true,
            chosen_c: Some(Rational::zero()),
            mu_branch,
            status: CertStatus::Nonempty,
        });
    }
    let pairs = roots_from_family(family, n)?;
    let cap = width_cap();
    let shrink = Rational::new(BigInt::one(), BigInt::from(10).pow(20));
    let mut width = initial_width();
    let (status, chosen_c) = loop {
        let (max_x, min_y) = extremes(&pairs, &width);
        match max_x.separation(&min_y) {
            Some(Ordering::Less) => {
                let c = Interval::new(max_x.hi, min_y.lo).midpoint();
                break (CertStatus::Nonempty, Some(c));
            }
            Some(Ordering::Greater) => break (CertStatus::Empty, None),
            _ => {}
        }
        if width <= cap {
            break (CertStatus::Undecided, None);
        }
        width = (&width * &shrink).max(cap.clone());
    };
    if let Some(c) = &chosen_c {
        for row in family {
            let v = trinomial_at(row, n, c);
            assert!(v.is_negative(), "chosen c fails trinomial k = {} at n = {n}", row.k);
        }
    }
    Ok(IntervalCertificate {
        omega,
        n,
        pairs,
        nonempty: status == CertStatus::Nonempty,
        chosen_c,
        mu_branch,
        status,
    })
}

/// `true` iff `floor((n-6)/2) <= 15` for every `3 <= n <= n_max`.
pub fn dimension_cover_check(n_max: u64) -> bool {
    (3..=n_max).all(|n| (n as i64 - 6).div_euclid(2) <= 15)
}
