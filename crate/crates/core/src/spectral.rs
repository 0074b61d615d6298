//! Closed-form coefficient families indexed by the Weyl vanishing order `omega`
//! and the eigencomponent `k`, as exact functions of the dimension `n`.
//!
//! ```text
//! nu_k    = (omega - 2k + 2)(n + omega - 2k)
//! d_k     = 4[(n-1)(n-2) nu_k - n(n-2)^2 + (omega+2)^2 (n^2 + n + 2)]
//! c_k     = (n-2)^2 / d_k
//! u_k     = ( (n-3)/(4(n-2)) - ((n-1)^2 + (n-1)(omega+2)^2) / (4(n-2)(nu_k - n + 1)) ) nu_k
//! Delta_k = (n-2)^2 - d_k u_k / nu_k^2
//! ```

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{
    nonnegative_on_ray, partial_fractions, rat, AlgebraError, PartialFractionExpansion,
    Polynomial, PositivityVerdict, Rational, RationalFunction,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectralError {
    #[error("k = {k} outside [1, {max}] for omega = {omega}")]
    KOutOfRange { omega: u32, k: u32, max: u32 },
    #[error("omega = {0} has no eigencomponents; covered by prior work")]
    EmptyFamily(u32),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Symbolic coefficients for one `(omega, k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralRow {
    pub omega: u32,
    pub k: u32,
    pub nu: Polynomial,
    pub d: Polynomial,
    pub c: RationalFunction,
    pub u_over_nu: RationalFunction,
    pub delta: RationalFunction,
}

fn n() -> Polynomial {
    Polynomial::x()
}

fn int(c: i64) -> Polynomial {
    Polynomial::from_ints(&[c])
}

/// `n - c`.
fn n_minus(c: i64) -> Polynomial {
    Polynomial::from_ints(&[-c, 1])
}

/// `(omega - 2k + 2)(n + omega - 2k)`.
pub fn nu_polynomial(omega: u32, k: u32) -> Polynomial {
    let a = omega as i64 - 2 * k as i64;
    Polynomial::from_ints(&[(a + 2) * a, a + 2])
}

/// `d` as a function of an arbitrary eigenvalue polynomial `nu`.
pub fn d_polynomial(omega: u32, nu: &Polynomial) -> Polynomial {
    let w2 = ((omega as i64) + 2).pow(2);
    let inner = &(&(&(&n_minus(1) * &n_minus(2)) * nu) - &(&n() * &n_minus(2).pow(2)))
        + &(&int(w2) * &Polynomial::from_ints(&[2, 1, 1]));
    inner.scale(&rat(4, 1))
}

/// `u / nu` for an arbitrary eigenvalue polynomial `nu`.
pub fn u_over_nu(omega: u32, nu: &Polynomial) -> RationalFunction {
    let w2 = ((omega as i64) + 2).pow(2);
    let first = RationalFunction::new(n_minus(3), &int(4) * &n_minus(2)).expect("nonzero");
    let second_num = &n_minus(1).pow(2) + &(&n_minus(1) * &int(w2));
    let second_den = &(&int(4) * &n_minus(2)) * &(&(nu - &n()) + &int(1));
    let second = RationalFunction::new(second_num, second_den).expect("nu - n + 1 is not identically zero");
    &first - &second
}

/// `u` evaluated at concrete rational `n`, eigenvalue `nu` and formal `omega`.
///
/// Used where the eigenvalue does not follow the `nu_k` family, e.g. the
/// spherical harmonics of the 2-sphere oracle.
pub fn u_value(n: &Rational, nu: &Rational, omega: &Rational) -> Rational {
    let one = Rational::one();
    let two = rat(2, 1);
    let four = rat(4, 1);
    let w2 = (omega + &two) * (omega + &two);
    let nm1 = n - &one;
    let nm2 = n - &two;
    let first = (n - rat(3, 1)) / (&four * &nm2);
    let second = (&nm1 * &nm1 + &nm1 * &w2) / (&four * &nm2 * (nu - n + &one));
    (first - second) * nu
}

/// `d` at concrete `n`, `nu` and formal `omega`.
pub fn d_value(n: &Rational, nu: &Rational, omega: &Rational) -> Rational {
    let one = Rational::one();
    let two = rat(2, 1);
    let w2 = (omega + &two) * (omega + &two);
    let nm2 = n - &two;
    rat(4, 1) * ((n - &one) * &nm2 * nu - n * &nm2 * &nm2 + w2 * (n * n + n + &two))
}

/// Largest admissible `k`, i.e. `floor(omega / 2)`.
pub fn max_k(omega: u32) -> u32 {
    omega / 2
}

pub fn spectral_row(omega: u32, k: u32) -> Result<SpectralRow, SpectralError> {
    let max = max_k(omega);
    if max == 0 {
        return Err(SpectralError::EmptyFamily(omega));
    }
    if k == 0 || k > max {
        return Err(SpectralError::KOutOfRange { omega, k, max });
    }
    let nu = nu_polynomial(omega, k);
    let d = d_polynomial(omega, &nu);
    let nm2_sq = n_minus(2).pow(2);
    let c = RationalFunction::new(nm2_sq.clone(), d.clone())?;
    let uon = u_over_nu(omega, &nu);
    let nu_rf = RationalFunction::from_poly(nu.clone());
    let d_rf = RationalFunction::from_poly(d.clone());
    let delta = &RationalFunction::from_poly(nm2_sq) - &(&(&d_rf * &uon) / &nu_rf);
    Ok(SpectralRow {
        omega,
        k,
        nu,
        d,
        c,
        u_over_nu: uon,
        delta,
    })
}

/// All rows `k = 1..=floor(omega/2)`.
pub fn spectral_family(omega: u32) -> Result<Vec<SpectralRow>, SpectralError> {
    (1..=max_k(omega).max(1)).map(|k| spectral_row(omega, k)).collect()
}

impl SpectralRow {
    pub fn u(&self) -> RationalFunction {
        &self.u_over_nu * &RationalFunction::from_poly(self.nu.clone())
    }

    /// `(n-2)^2 - d * (u/nu) * (1/nu)` recomposed from the stored entries.
    pub fn delta_recomposed(&self) -> RationalFunction {
        let nm2_sq = RationalFunction::from_poly(n_minus(2).pow(2));
        let d = RationalFunction::from_poly(self.d.clone());
        let inv_nu = RationalFunction::new(Polynomial::one(), self.nu.clone()).expect("nu nonzero");
        &nm2_sq - &(&(&d * &self.u_over_nu) * &inv_nu)
    }

    /// The linear factors `n - 2`, `nu - n + 1` and `nu` that survive in the
    /// normalized denominator of `Delta_k`.
    pub fn delta_factors(&self) -> Vec<Polynomial> {
        let candidates = [n_minus(2), &(&self.nu - &n()) + &int(1), self.nu.clone()];
        let den = self.delta.den();
        let mut out: Vec<Polynomial> = Vec::new();
        for cand in candidates {
            if cand.degree() != Some(1) {
                continue;
            }
            let root = -cand.coeff(0) / cand.coeff(1);
            if out.iter().any(|f| -f.coeff(0) / f.coeff(1) == root) {
                continue;
            }
            if den.div_rem(&cand).1.is_zero() {
                out.push(cand);
            }
        }
        out
    }

    pub fn delta_partial_fractions(&self) -> Result<PartialFractionExpansion, AlgebraError> {
        partial_fractions(&self.delta, &self.delta_factors())
    }

    /// `u_k - (n-2)^2 nu_k^2 / d_k`, negative on the admissible ray.
    pub fn lemma_quantity(&self) -> RationalFunction {
        let nu = RationalFunction::from_poly(self.nu.clone());
        &self.u() - &(&(&self.c * &nu) * &nu)
    }
}

/// `P(x)` from the monotonicity argument, as coefficients in `x` that are
/// polynomials in `n`: `P = p0 + p1 x + p2 x^2`. On `x = nu_k` it equals
/// `(nu_k - n + 1) d_k {(n-2) u_k/nu_k - (n-2)^3 nu_k / d_k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaPolynomial {
    pub omega: u32,
    pub p: [Polynomial; 3],
    pub p_prime: [Polynomial; 2],
}

impl LemmaPolynomial {
    pub fn new(omega: u32) -> Self {
        let w2 = int(((omega as i64) + 2).pow(2));
        let nm1 = n_minus(1);
        let nm2 = n_minus(2);
        // A x + B  with A = (n-1)(n-2), B = -n(n-2)^2 + (omega+2)^2 (n^2+n+2)
        let a = &nm1 * &nm2;
        let b = &(-&(&n() * &nm2.pow(2))) + &(&w2 * &Polynomial::from_ints(&[2, 1, 1]));
        // C x + D  with C = n-3, D = -(n-3)(n-1) - (n-1)^2 - (n-1)(omega+2)^2
        let c = n_minus(3);
        let d = &(&(-&(&n_minus(3) * &nm1)) - &nm1.pow(2)) - &(&nm1 * &w2);
        let nm2_cube = nm2.pow(3);
        let p2 = &(&a * &c) - &nm2_cube;
        let p1 = &(&(&a * &d) + &(&b * &c)) + &(&nm2_cube * &nm1);
        let p0 = &b * &d;
        let p_prime = [p1.clone(), p2.scale(&rat(2, 1))];
        Self {
            omega,
            p: [p0, p1, p2],
            p_prime,
        }
    }

    /// `P(x)` with a polynomial substituted for `x`.
    pub fn eval(&self, x: &Polynomial) -> Polynomial {
        &(&self.p[0] + &(&self.p[1] * x)) + &(&(&self.p[2] * x) * x)
    }

    /// `P'(x)`.
    pub fn eval_prime(&self, x: &Polynomial) -> Polynomial {
        &self.p_prime[0] + &(&self.p_prime[1] * x)
    }

    /// The closed form `-2(n-2)x - 2n(n-2)^3 + 2(n^2-3n-2)(omega+2)^2` as
    /// `[constant, slope]` in `x`.
    pub fn stated_derivative(omega: u32) -> [Polynomial; 2] {
        let w2 = int(((omega as i64) + 2).pow(2));
        let slope = n_minus(2).scale(&rat(-2, 1));
        let a = (&n() * &n_minus(2).pow(3)).scale(&rat(-2, 1));
        let b = (&Polynomial::from_ints(&[-2, -3, 1]) * &w2).scale(&rat(2, 1));
        let constant = &a + &b;
        [constant, slope]
    }
}

/// Evidence for the lemma `u_k - (n-2)^2 nu_k^2 / d_k < 0` on `n >= 2 omega + 6`.
#[derive(Clone, Debug, Serialize)]
pub struct LemmaPolyReport {
    pub omega: u32,
    pub ray_start: u32,
    /// `-P'(0) > 0` on the ray, so `P` decreases on `x >= 0`.
    pub derivative_negative: PositivityVerdict,
    /// `-P(2n) > 0` on the ray; `2n` bounds every `nu_k` from below.
    pub value_at_min_negative: PositivityVerdict,
    /// `nu_k - n + 1 > 0` and `d_k > 0` for every `k`, so signs transfer.
    pub factor_positivity: Vec<(u32, PositivityVerdict, PositivityVerdict)>,
    pub holds: bool,
}

/// Certifies the lemma along the monotone-polynomial route.
pub fn check_lemma_poly(omega: u32) -> Result<LemmaPolyReport, SpectralError> {
    let family = spectral_family(omega)?;
    let n0 = rat(2 * omega as i64 + 6, 1);
    let lp = LemmaPolynomial::new(omega);
    let derivative_negative = nonnegative_on_ray(&-&lp.eval_prime(&Polynomial::zero()), &n0);
    let lowest = Polynomial::from_ints(&[0, 2]);
    let value_at_min_negative = nonnegative_on_ray(&-&lp.eval(&lowest), &n0);
    let mut factor_positivity = Vec::new();
    let mut all = derivative_negative.positive && value_at_min_negative.positive;
    for row in &family {
        // nu_k >= 2n on the ray is needed for P(nu_k) <= P(2n)
        let gap = &row.nu - &lowest;
        let nu_ok = gap.is_zero() || nonnegative_on_ray(&gap, &n0).positive;
        let shift = nonnegative_on_ray(&(&(&row.nu - &n()) + &int(1)), &n0);
        let d_pos = nonnegative_on_ray(&row.d, &n0);
        all &= nu_ok && shift.positive && d_pos.positive;
        factor_positivity.push((row.k, shift, d_pos));
    }
    Ok(LemmaPolyReport {
        omega,
        ray_start: 2 * omega + 6,
        derivative_negative,
        value_at_min_negative,
        factor_positivity,
        holds: all,
    })
}

/// Direct route: the sign polynomial of each `u_k - (n-2)^2 nu_k^2/d_k` is
/// negative on the ray. Independent of [`LemmaPolynomial`].
pub fn lemma_poly_direct(omega: u32) -> Result<Vec<(u32, PositivityVerdict)>, SpectralError> {
    let n0 = rat(2 * omega as i64 + 6, 1);
    spectral_family(omega)?
        .iter()
        .map(|row| {
            let q = row.lemma_quantity();
            Ok((row.k, nonnegative_on_ray(&-&q.sign_polynomial(), &n0)))
        })
        .collect()
}

/// `d_k - d_{k+1} > 0` on the ray for every consecutive pair.
pub fn d_strictly_decreasing(omega: u32) -> Result<Vec<(u32, PositivityVerdict)>, SpectralError> {
    let n0 = rat(2 * omega as i64 + 6, 1);
    let family = spectral_family(omega)?;
    Ok(family
        .windows(2)
        .map(|w| (w[0].k, nonnegative_on_ray(&(&w[0].d - &w[1].d), &n0)))
        .collect())
}

/// Polynomial in `(n, X)` stored as `(deg_n, deg_X) -> coefficient`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct BiPoly(BTreeMap<(u32, u32), Rational>);

impl BiPoly {
    /// `a n + b X + c` with integer coefficients.
    fn affine(a: i64, b: i64, c: i64) -> Self {
        let mut m = BTreeMap::new();
        for (key, v) in [((1, 0), a), ((0, 1), b), ((0, 0), c)] {
            if v != 0 {
                m.insert(key, rat(v, 1));
            }
        }
        Self(m)
    }

    fn add(&self, o: &Self) -> Self {
        let mut m = self.0.clone();
        for (k, v) in &o.0 {
            let e = m.entry(*k).or_insert_with(Rational::zero);
            *e += v;
        }
        m.retain(|_, v| !v.is_zero());
        Self(m)
    }

    fn mul(&self, o: &Self) -> Self {
        let mut m: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
        for ((a1, b1), v1) in &self.0 {
            for ((a2, b2), v2) in &o.0 {
                let e = m.entry((a1 + a2, b1 + b2)).or_insert_with(Rational::zero);
                *e += v1 * v2;
            }
        }
        m.retain(|_, v| !v.is_zero());
        Self(m)
    }

    fn scale(&self, c: i64) -> Self {
        let mut m = self.0.clone();
        for v in m.values_mut() {
            *v *= rat(c, 1);
        }
        m.retain(|_, v| !v.is_zero());
        Self(m)
    }

    fn product(factors: &[BiPoly]) -> Self {
        factors
            .iter()
            .fold(Self::affine(0, 0, 1), |acc, f| acc.mul(f))
    }

    fn degree_in_x(&self) -> u32 {
        self.0.keys().map(|(_, b)| *b).max().unwrap_or(0)
    }

    fn eval(&self, n: &Rational, x: &Rational) -> Rational {
        self.0.iter().fold(Rational::zero(), |acc, ((a, b), v)| {
            acc + v * num_traits::pow(n.clone(), *a as usize) * num_traits::pow(x.clone(), *b as usize)
        })
    }
}

/// Expansion of the four-term quartic `P_2(X)`, `X = omega + 2`, and of its
/// claimed closed form `4X^2(n^2+n+2) - 4n(n-2)^2`.
fn p2_expansions() -> (BiPoly, BiPoly) {
    // omega - n + 4 = X - n + 2, 2omega+n+4 = 2X + n, 2omega+n+2 = 2X + n - 2,
    // n - 2omega - 6 = n - 2X - 2, n - 2omega - 4 = n - 2X
    let x_n_2 = BiPoly::affine(-1, 1, 2);
    let a = BiPoly::affine(1, 2, 0);
    let b = BiPoly::affine(1, 2, -2);
    let c = BiPoly::affine(1, -2, -2);
    let e = BiPoly::affine(1, -2, 0);
    let x = BiPoly::affine(0, 1, 0);
    let nn = BiPoly::affine(1, 0, 0);
    let np2 = BiPoly::affine(1, 0, 2);
    let t1 = BiPoly::product(&[x_n_2.clone(), x_n_2.clone(), a, b.clone()]);
    let t2 = BiPoly::product(&[x.clone(), x_n_2, b.clone(), c.clone()]).scale(2);
    let t3 = BiPoly::product(&[x.clone(), x.clone(), e, c.clone()]);
    let t4 = BiPoly::product(&[nn.clone(), np2, b, c]).scale(-1);
    let lhs = t1.add(&t2).add(&t3).add(&t4);
    let n2n2 = BiPoly::affine(0, 0, 2)
        .add(&nn)
        .add(&nn.mul(&nn));
    let nm2 = BiPoly::affine(1, 0, -2);
    let rhs = BiPoly::product(&[x.clone(), x, n2n2])
        .scale(4)
        .add(&BiPoly::product(&[nn, nm2.clone(), nm2]).scale(-4));
    (lhs, rhs)
}

#[derive(Clone, Debug, Serialize)]
pub struct P2Report {
    pub holds: bool,
    pub degree_in_x: u32,
    pub terms: usize,
}

/// Exact symbolic check that the quartic combination collapses to
/// `4(omega+2)^2(n^2+n+2) - 4n(n-2)^2`.
pub fn p2_identity_check() -> P2Report {
    let (lhs, rhs) = p2_expansions();
    P2Report {
        holds: lhs == rhs,
        degree_in_x: lhs.degree_in_x(),
        terms: lhs.0.len(),
    }
}

/// Both sides of the `P_2` identity evaluated at concrete `(n, omega)`.
pub fn p2_sides(n: &Rational, omega: &Rational) -> (Rational, Rational) {
    let (lhs, rhs) = p2_expansions();
    let x = omega + rat(2, 1);
    (lhs.eval(n, &x), rhs.eval(n, &x))
}

/// Whether `u_{omega/2} < 0` on the ray, for even `omega`.
pub fn half_index_u_negative(omega: u32) -> Result<Option<PositivityVerdict>, SpectralError> {
    if omega % 2 != 0 {
        return Ok(None);
    }
    let row = spectral_row(omega, omega / 2)?;
    let n0 = rat(2 * omega as i64 + 6, 1);
    Ok(Some(nonnegative_on_ray(&-&row.u().sign_polynomial(), &n0)))
}

/// `true` if the sign polynomial of `f` is positive at the sample `x`.
pub fn positive_at(f: &RationalFunction, x: &Rational) -> bool {
    f.eval(x).is_some_and(|v| v.is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    #[test]
    fn omega5_k1_rows() {
        let r = spectral_row(5, 1).unwrap();
        assert_eq!(r.nu, poly(&[15, 5]));
        assert_eq!(r.d, poly(&[128, 10, 53, 4]).scale(&rat(4, 1)));
    }

    #[test]
    fn even_omega_last_nu_is_2n() {
        for omega in [2u32, 4, 8, 16] {
            assert_eq!(spectral_row(omega, omega / 2).unwrap().nu, poly(&[0, 2]));
        }
    }

    #[test]
    fn omega7_k3_rows() {
        let r = spectral_row(7, 3).unwrap();
        assert_eq!(r.nu, poly(&[3, 3]));
        assert_eq!(r.d, poly(&[168, 74, 79, 2]).scale(&rat(4, 1)));
        let expect = RationalFunction::new(
            poly(&[68, -81, 1]),
            &poly(&[-2, 1]) * &poly(&[2, 1]).scale(&rat(8, 1)),
        )
        .unwrap();
        assert_eq!(r.u_over_nu, expect);
    }

    #[test]
    fn k_out_of_range() {
        assert!(matches!(spectral_row(5, 3), Err(SpectralError::KOutOfRange { .. })));
        assert!(matches!(spectral_row(5, 0), Err(SpectralError::KOutOfRange { .. })));
        assert_eq!(spectral_row(1, 1), Err(SpectralError::EmptyFamily(1)));
    }

    #[test]
    fn lemma_polynomial_matches_stated_derivative() {
        for omega in 2..=16 {
            let lp = LemmaPolynomial::new(omega);
            assert_eq!(lp.p_prime.to_vec(), LemmaPolynomial::stated_derivative(omega).to_vec(), "omega {omega}");
        }
    }

    #[test]
    fn lemma_polynomial_reproduces_u_combination() {
        // P(nu_k) = (nu_k - n + 1) d_k {(n-2) u_k/nu_k - (n-2)^3 nu_k/d_k}
        for omega in 2..=9 {
            let lp = LemmaPolynomial::new(omega);
            for row in spectral_family(omega).unwrap() {
                let shift = RationalFunction::from_poly(&(&row.nu - &n()) + &int(1));
                let d = RationalFunction::from_poly(row.d.clone());
                let nm2 = RationalFunction::from_poly(n_minus(2));
                let nu = RationalFunction::from_poly(row.nu.clone());
                let brace = &(&nm2 * &row.u_over_nu)
                    - &(&(&RationalFunction::from_poly(n_minus(2).pow(3)) * &nu) / &d);
                let big_u = &(&shift * &d) * &brace;
                let p = RationalFunction::from_poly(lp.eval(&row.nu));
                assert_eq!(big_u, p, "omega {omega} k {}", row.k);
            }
        }
    }

    #[test]
    fn p2_identity_holds_symbolically() {
        let r = p2_identity_check();
        assert!(r.holds);
        assert_eq!(r.degree_in_x, 2);
    }

    #[test]
    fn p2_sides_at_sample_points() {
        let (l, r) = p2_sides(&rat(10, 1), &rat(2, 1));
        // 4*16*112 - 4*10*64
        assert_eq!(l, rat(4608, 1));
        assert_eq!(r, rat(4608, 1));
        let (l0, _) = p2_sides(&rat(7, 1), &rat(-2, 1));
        assert_eq!(l0, rat(-4 * 7 * 25, 1));
    }

    #[test]
    fn omega2_u_negative_from_ten() {
        let row = spectral_row(2, 1).unwrap();
        assert_eq!(row.nu, poly(&[0, 2]));
        let v = nonnegative_on_ray(&-&row.u().sign_polynomial(), &rat(10, 1));
        assert!(v.positive);
        // brute-force sign sampling
        for n in 10..500 {
            assert!(row.u().eval(&rat(n, 1)).unwrap() < Rational::zero());
        }
    }

    #[test]
    fn u_value_agrees_with_family() {
        let row = spectral_row(6, 2).unwrap();
        for n in [14i64, 20, 33] {
            let nn = rat(n, 1);
            let nu = row.nu.eval(&nn);
            assert_eq!(row.u().eval(&nn).unwrap(), u_value(&nn, &nu, &rat(6, 1)));
            assert_eq!(row.d.eval(&nn), d_value(&nn, &nu, &rat(6, 1)));
        }
    }

    #[test]
    fn omega5_delta2_partial_fractions() {
        let e = spectral_row(5, 2).unwrap().delta_partial_fractions().unwrap();
        assert_eq!(e.quadratic_coeffs(), [rat(2, 3), rat(29, 6), rat(1076, 3)]);
        assert_eq!(e.residue_at(&rat(2, 1)), Some(&rat(2842, 9)));
        assert_eq!(e.residue_at(&rat(-2, 1)), Some(&rat(-1104, 1)));
        assert_eq!(e.residue_at(&rat(-1, 1)), Some(&rat(4601, 9)));
    }

    #[test]
    fn omega7_delta_rows() {
        let e1 = spectral_row(7, 1).unwrap().delta_partial_fractions().unwrap();
        assert_eq!(e1.quadratic_coeffs(), [rat(2, 7), rat(-9, 14), rat(2708, 21)]);
        assert_eq!(e1.residue_at(&rat(-6, 1)), Some(&rat(-11951, 3)));
        assert_eq!(e1.residue_at(&rat(-5, 1)), Some(&rat(135809, 49)));
        assert_eq!(e1.residue_at(&rat(2, 1)), Some(&rat(1755, 49)));
        let e3 = spectral_row(7, 3).unwrap().delta_partial_fractions().unwrap();
        assert_eq!(e3.quadratic_coeffs(), [rat(2, 3), rat(61, 6), rat(1020, 1)]);
        assert_eq!(e3.residue_at(&rat(-2, 1)), Some(&rat(-3120, 1)));
        assert_eq!(e3.residue_at(&rat(-1, 1)), Some(&rat(1425, 1)));
        assert_eq!(e3.residue_at(&rat(2, 1)), Some(&rat(810, 1)));
    }

    #[test]
    fn delta_recombines() {
        for omega in 2..=12 {
            for row in spectral_family(omega).unwrap() {
                assert_eq!(row.delta_partial_fractions().unwrap().recombine(), row.delta);
                assert_eq!(row.delta_recomposed(), row.delta);
            }
        }
    }

    #[test]
    fn lemma_routes_agree() {
        for omega in 2..=15 {
            assert!(check_lemma_poly(omega).unwrap().holds, "omega {omega}");
            assert!(lemma_poly_direct(omega).unwrap().iter().all(|(_, v)| v.positive));
            assert!(d_strictly_decreasing(omega).unwrap().iter().all(|(_, v)| v.positive));
        }
    }

    #[test]
    fn half_index_u_sign() {
        for omega in (2..=16).step_by(2) {
            assert!(half_index_u_negative(omega).unwrap().unwrap().positive, "omega {omega}");
        }
        assert!(half_index_u_negative(5).unwrap().is_none());
    }
}
