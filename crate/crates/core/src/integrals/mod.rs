//! Bubble integrals `I_a^b = int_0^inf t^b / (1+t^2)^a dt`, best Sobolev
//! constants and the radial Yamabe quotient of the Aubin bubble.

mod quadrature;
mod special;

pub use quadrature::{geometric_breakpoints, integrate, integrate_split, QuadResult, Tolerance};
pub use special::{beta, ln_gamma_any, ln_gamma_half, sphere_volume};

use std::f64::consts::PI;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IntegralError {
    #[error("divergent integral I_{a}^{b} (needs 2a - b > 1)")]
    Divergent { a: f64, b: f64 },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("quadrature did not converge: error {achieved:e} above {requested:e}")]
    NoConvergence { achieved: f64, requested: f64 },
}

fn rel(x: f64, y: f64) -> f64 {
    (x - y).abs() / y.abs().max(f64::MIN_POSITIVE)
}

/// `I_a^b = Beta((b+1)/2, a - (b+1)/2) / 2`.
pub fn i_closed(a: f64, b: f64) -> Result<f64, IntegralError> {
    if 2.0 * a - b <= 1.0 || b <= -1.0 {
        return Err(IntegralError::Divergent { a, b });
    }
    let p = (b + 1.0) / 2.0;
    Ok(0.5 * beta(p, a - p))
}

/// `I_a^b` by quadrature of `sin^b(s) cos^(2a-b-2)(s)` on `[0, pi/2]`
/// (the substitution `t = tan s`).
pub fn i_quadrature(a: f64, b: f64) -> Result<f64, IntegralError> {
    if 2.0 * a - b <= 1.0 || b <= -1.0 {
        return Err(IntegralError::Divergent { a, b });
    }
    let e = 2.0 * a - b - 2.0;
    let f = |s: f64| s.sin().powf(b) * s.cos().powf(e);
    Ok(integrate(f, 0.0, PI / 2.0, Tolerance::default())?.value)
}

/// `int_0^upper t^b / (1+t^2)^a dt`.
pub fn i_truncated(a: f64, b: f64, upper: f64) -> Result<f64, IntegralError> {
    let f = |t: f64| t.powf(b) / (1.0 + t * t).powf(a);
    Ok(integrate_split(f, &geometric_breakpoints(1.0, upper), Tolerance::default())?.value)
}

#[derive(Clone, Debug, Serialize)]
pub struct RecurrenceReport {
    pub a: f64,
    pub b: f64,
    /// `I_a^b` and the three right-hand sides.
    pub values: [f64; 4],
    pub rel_errors: [f64; 3],
    pub holds: bool,
}

/// `I_a^b = (b-1)/(2a-b-1) I_a^{b-2} = (b-1)/(2a-2) I_{a-1}^{b-2} = (2a-b-3)/(2a-2) I_{a-1}^b`.
pub fn recurrence_check(a: f64, b: f64) -> Result<RecurrenceReport, IntegralError> {
    if b < 2.0 {
        return Err(IntegralError::Precondition(format!("recurrence needs b >= 2, got {b}")));
    }
    let lhs = i_closed(a, b)?;
    let r1 = (b - 1.0) / (2.0 * a - b - 1.0) * i_closed(a, b - 2.0)?;
    let r2 = (b - 1.0) / (2.0 * a - 2.0) * i_closed(a - 1.0, b - 2.0)?;
    let r3 = (2.0 * a - b - 3.0) / (2.0 * a - 2.0) * i_closed(a - 1.0, b)?;
    let rel_errors = [rel(r1, lhs), rel(r2, lhs), rel(r3, lhs)];
    Ok(RecurrenceReport {
        a,
        b,
        values: [lhs, r1, r2, r3],
        rel_errors,
        holds: rel_errors.iter().all(|e| *e <= 1e-12),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ShorthandReport {
    pub n: u32,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// The shorthand `4(n-2) I_n^{n+1} / (I_n^{n-2})^{(n-2)/n} = n`, which does not
/// hold; kept to show the mismatch with [`inte_identity_check`].
pub fn rela_shorthand_check(n: u32) -> Result<ShorthandReport, IntegralError> {
    let nf = n as f64;
    let lhs = 4.0 * (nf - 2.0) * i_closed(nf, nf + 1.0)? / i_closed(nf, nf - 2.0)?.powf((nf - 2.0) / nf);
    Ok(ShorthandReport {
        n,
        lhs,
        rhs: nf,
        holds: rel(lhs, nf) <= 1e-10,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TruncationReport {
    pub value: f64,
    /// Untruncated integral when it converges.
    pub full: Option<f64>,
    pub gap: Option<f64>,
    /// `eps^{2a-b-1} / ((2a-b-1) delta^{2a-b-1})`.
    pub bound: Option<f64>,
    /// `value / log(1/eps)` on the logarithmic line `b = 2a - 1`.
    pub log_ratio: Option<f64>,
}

/// `I_a^b(eps) = int_0^{delta/eps}` and its distance to `I_a^b`.
pub fn truncation_order(a: f64, b: f64, delta: f64, eps: f64) -> Result<TruncationReport, IntegralError> {
    if !(eps > 0.0 && eps <= delta) {
        return Err(IntegralError::Precondition(format!("need 0 < eps <= delta, got eps = {eps}, delta = {delta}")));
    }
    let value = i_truncated(a, b, delta / eps)?;
    let k = 2.0 * a - b - 1.0;
    if k > 0.0 {
        let full = i_closed(a, b)?;
        Ok(TruncationReport {
            value,
            full: Some(full),
            gap: Some(full - value),
            bound: Some(eps.powf(k) / (k * delta.powf(k))),
            log_ratio: None,
        })
    } else {
        Ok(TruncationReport {
            value,
            full: None,
            gap: None,
            bound: None,
            log_ratio: (k == 0.0).then(|| value / (1.0 / eps).ln()),
        })
    }
}

/// Aubin–Talenti constant `K(n, p)` for `1 < p < n`.
pub fn best_constant(n: u32, p: f64) -> Result<f64, IntegralError> {
    let nf = n as f64;
    if !(p > 1.0 && p < nf) {
        return Err(IntegralError::Precondition(format!("need 1 < p < n, got p = {p}, n = {n}")));
    }
    let lead = (p - 1.0) / (nf - p) * ((nf - p) / (nf * (p - 1.0))).powf(1.0 / p);
    let ln_ratio = ln_gamma_any(nf + 1.0)
        - ln_gamma_any(nf / p)
        - ln_gamma_any(nf + 1.0 - nf / p)
        - sphere_volume(n - 1).ln();
    Ok(lead * (ln_ratio / nf).exp())
}

/// `K(n, 1) = (1/n) (n / omega_{n-1})^{1/n}`.
pub fn best_constant_l1(n: u32) -> f64 {
    let nf = n as f64;
    (nf / sphere_volume(n - 1)).powf(1.0 / nf) / nf
}

/// Hardy constant `K(n, q, -q) = q / (n - q)`.
pub fn hardy_constant(n: u32, q: f64) -> Result<f64, IntegralError> {
    if !(q >= 1.0 && q < n as f64) {
        return Err(IntegralError::Precondition(format!("need 1 <= q < n, got q = {q}")));
    }
    Ok(q / (n as f64 - q))
}

/// `K(n,2)^{-2} = n(n-2) omega_n^{2/n} / 4`.
pub fn k2_inverse_square(n: u32) -> f64 {
    let nf = n as f64;
    nf * (nf - 2.0) * sphere_volume(n).powf(2.0 / nf) / 4.0
}

#[derive(Clone, Debug, Serialize)]
pub struct InteReport {
    pub n: u32,
    pub lhs: f64,
    pub lhs_quadrature: f64,
    pub rhs: f64,
    pub rel_error: f64,
    pub holds: bool,
}

/// `(n-2)^2 omega_{n-1} I_n^{n+1} (omega_{n-1} I_n^{n-1})^{-(n-2)/n} = K(n,2)^{-2}`.
pub fn inte_identity_check(n: u32) -> Result<InteReport, IntegralError> {
    if n < 3 {
        return Err(IntegralError::Precondition(format!("need n >= 3, got {n}")));
    }
    let nf = n as f64;
    let w = sphere_volume(n - 1);
    let side = |grad: f64, norm: f64| (nf - 2.0).powi(2) * w * grad * (w * norm).powf(-(nf - 2.0) / nf);
    let lhs = side(i_closed(nf, nf + 1.0)?, i_closed(nf, nf - 1.0)?);
    let lhs_quadrature = side(i_quadrature(nf, nf + 1.0)?, i_quadrature(nf, nf - 1.0)?);
    let rhs = k2_inverse_square(n);
    let rel_error = rel(lhs, rhs);
    Ok(InteReport {
        n,
        lhs,
        lhs_quadrature,
        rhs,
        rel_error,
        holds: rel_error <= 1e-10,
    })
}

/// The cut-off bubble `(eps/(r^2+eps^2))^{(n-2)/2} - (eps/(delta^2+eps^2))^{(n-2)/2}` on the ball of radius `delta`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RadialProfile {
    pub n: u32,
    pub epsilon: f64,
    pub delta: f64,
}

impl RadialProfile {
    pub fn new(n: u32, epsilon: f64, delta: f64) -> Result<Self, IntegralError> {
        if n < 3 || !(epsilon > 0.0 && epsilon <= delta) {
            return Err(IntegralError::Precondition(format!(
                "need n >= 3 and 0 < eps <= delta, got n = {n}, eps = {epsilon}, delta = {delta}"
            )));
        }
        Ok(Self { n, epsilon, delta })
    }
}

/// `|grad u|_2^2 / |u|_N^2` for the flat metric, in the variable `t = r/eps`.
pub fn radial_yamabe(p: &RadialProfile) -> Result<f64, IntegralError> {
    let nf = p.n as f64;
    let big_n = 2.0 * nf / (nf - 2.0);
    let top = p.delta / p.epsilon;
    let floor = (1.0 + top * top).powf(-(nf - 2.0) / 2.0);
    let pts = geometric_breakpoints(1.0, top);
    let tol = Tolerance::default();
    let grad = integrate_split(|t: f64| t.powf(nf + 1.0) / (1.0 + t * t).powf(nf), &pts, tol)?.value;
    let norm = integrate_split(
        |t: f64| ((1.0 + t * t).powf(-(nf - 2.0) / 2.0) - floor).max(0.0).powf(big_n) * t.powf(nf - 1.0),
        &pts,
        tol,
    )?
    .value;
    let w = sphere_volume(p.n - 1);
    Ok((nf - 2.0).powi(2) * w * grad / (w * norm).powf(2.0 / big_n))
}

#[derive(Clone, Debug, Serialize)]
pub struct NormeF2Report {
    pub n: u32,
    pub omega: u32,
    pub lhs: f64,
    /// `P_2(omega+2) / (4(n-1)(n-2)) I_{n-2}^{n+2 omega+1}`.
    pub rhs: f64,
    pub rel_error: f64,
    /// The same right-hand side with the opposite sign.
    pub rel_error_negated: f64,
    pub holds: bool,
}

/// `P_2(omega+2) = 4(omega+2)^2(n^2+n+2) - 4n(n-2)^2`.
pub fn p2_value(n: f64, omega: f64) -> f64 {
    let x = omega + 2.0;
    4.0 * x * x * (n * n + n + 2.0) - 4.0 * n * (n - 2.0).powi(2)
}

/// The coefficient of the `f^2` term in the bubble expansion, from its
/// integral combination and from the closed form.
pub fn norme_f2_check(n: u32, omega: u32) -> Result<NormeF2Report, IntegralError> {
    if n <= 2 * omega + 6 {
        return Err(IntegralError::Precondition(format!("need n > 2 omega + 6, got n = {n}, omega = {omega}")));
    }
    let nf = n as f64;
    let w = omega as f64;
    let big_n = 2.0 * nf / (nf - 2.0);
    let i = |b: f64| i_closed(nf, b);
    let lhs = (w - nf + 4.0).powi(2) * i(2.0 * w + nf + 5.0)?
        + 2.0 * (w + 2.0) * (w - nf + 4.0) * i(2.0 * w + nf + 3.0)?
        + (w + 2.0).powi(2) * i(2.0 * w + nf + 1.0)?
        - (big_n - 1.0) * (nf - 2.0).powi(2) * i(2.0 * w + nf + 3.0)? * i(nf + 1.0)? / i(nf - 1.0)?;
    let rhs = p2_value(nf, w) / (4.0 * (nf - 1.0) * (nf - 2.0)) * i_closed(nf - 2.0, nf + 2.0 * w + 1.0)?;
    let rel_error = rel(lhs, rhs);
    Ok(NormeF2Report {
        n,
        omega,
        lhs,
        rhs,
        rel_error,
        rel_error_negated: rel(lhs, -rhs),
        holds: rel_error <= 1e-10,
    })
}

/// Mean-integral statistics entering the `eps^{2 omega + 4}` coefficient.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct BracketStats {
    /// Mean of `r^{-2 omega - 2} R_g` over `S(r)`.
    pub curvature_mean: f64,
    /// Mean of `f^2`.
    pub f_l2: f64,
    /// Mean of `|grad f|^2`.
    pub f_h1: f64,
    /// Mean of `f * r^{-omega} Rbar`.
    pub f_rbar: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExpansionBracket {
    pub n: u32,
    pub omega: u32,
    pub stats: BracketStats,
    /// `n = 2 omega + 6`: the coefficient multiplies `eps^{2 omega + 4} log(1/eps)`.
    pub logarithmic: bool,
    pub i_s: f64,
    pub value: f64,
}

/// `(n-2)^2 curvature_mean + I_S(f)` with
/// `I_S = 4(n-1)(n-2)|grad f|^2 - [4n(n-2)^2 - 4(omega+2)^2(n^2+n+2)] f^2 - 2(n-2)^2 f Rbar`.
/// On the logarithmic line the `f^2` weight becomes `4(n-1)(n-2)(omega+2)^2`.
pub fn expansion_bracket(n: u32, omega: u32, stats: BracketStats) -> Result<ExpansionBracket, IntegralError> {
    let min = 2 * omega + 6;
    if n < min {
        return Err(IntegralError::Precondition(format!("need n >= 2 omega + 6 = {min}, got {n}")));
    }
    let nf = n as f64;
    let w2 = (omega as f64 + 2.0).powi(2);
    let logarithmic = n == min;
    let f2_weight = if logarithmic {
        4.0 * (nf - 1.0) * (nf - 2.0) * w2
    } else {
        -(4.0 * nf * (nf - 2.0).powi(2) - 4.0 * w2 * (nf * nf + nf + 2.0))
    };
    let i_s = 4.0 * (nf - 1.0) * (nf - 2.0) * stats.f_h1 + f2_weight * stats.f_l2
        - 2.0 * (nf - 2.0).powi(2) * stats.f_rbar;
    Ok(ExpansionBracket {
        n,
        omega,
        stats,
        logarithmic,
        i_s,
        value: (nf - 2.0).powi(2) * stats.curvature_mean + i_s,
    })
}

/// Factor in front of the bracket:
/// `I_g = K(n,2)^{-2} + eps^{2 omega + 4} * prefactor * bracket + ...`, with
/// `prefactor = omega_{n-1} (omega_{n-1} I_n^{n-1})^{-2/N} I_{n-2}^{n+2 omega+1} / (4(n-1)(n-2))`.
/// On the logarithmic line the `I_{n-2}` factor is dropped (it becomes `log(1/eps)`).
pub fn expansion_prefactor(n: u32, omega: u32) -> Result<f64, IntegralError> {
    let nf = n as f64;
    let w = sphere_volume(n - 1);
    let big_n = 2.0 * nf / (nf - 2.0);
    let base = w * (w * i_closed(nf, nf - 1.0)?).powf(-2.0 / big_n) / (4.0 * (nf - 1.0) * (nf - 2.0));
    if n == 2 * omega + 6 {
        Ok(base)
    } else {
        Ok(base * i_closed(nf - 2.0, nf + 2.0 * omega as f64 + 1.0)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_examples() {
        assert!((i_closed(1.0, 0.0).unwrap() - PI / 2.0).abs() < 1e-15);
        assert!((i_closed(3.0, 1.0).unwrap() - 0.25).abs() < 1e-15);
        assert!((i_closed(4.0, 3.0).unwrap() - 1.0 / 12.0).abs() < 1e-15);
        assert!(matches!(i_closed(1.0, 1.0), Err(IntegralError::Divergent { .. })));
    }

    #[test]
    fn closed_vs_quadrature() {
        for a in 2..=6 {
            for b in 0..=(2 * a - 2) {
                let (a, b) = (a as f64, b as f64);
                let c = i_closed(a, b).unwrap();
                assert!(rel(i_quadrature(a, b).unwrap(), c) < 1e-10, "a {a} b {b}");
            }
        }
    }

    #[test]
    fn recurrence_example() {
        let r = recurrence_check(4.0, 3.0).unwrap();
        assert!(r.holds);
        assert!(recurrence_check(2.0, 0.0).is_err());
    }

    #[test]
    fn shorthand_fails() {
        let r = rela_shorthand_check(3).unwrap();
        assert!(!r.holds);
        assert!((r.lhs - 3.74).abs() < 0.01);
    }

    #[test]
    fn truncation_arctan() {
        let r = truncation_order(1.0, 0.0, 1.0, 0.01).unwrap();
        assert!((r.value - 100f64.atan()).abs() < 1e-12);
        assert!(r.gap.unwrap() <= r.bound.unwrap());
        let r = truncation_order(1.0, 0.0, 1.0, 1.0).unwrap();
        assert!((r.value - PI / 4.0).abs() < 1e-12);
    }

    #[test]
    fn truncation_logarithmic() {
        let r = truncation_order(4.0, 7.0, 1.0, 1e-12).unwrap();
        let ratio = r.log_ratio.unwrap();
        assert!((ratio - 1.0).abs() < 0.1, "{ratio}");
    }

    #[test]
    fn constants() {
        assert!((k2_inverse_square(4) - 2.0 * (8.0 * PI * PI / 3.0).sqrt()).abs() < 1e-12);
        for n in 3..10 {
            let k = best_constant(n, 2.0).unwrap();
            assert!(rel(k.powi(-2), k2_inverse_square(n)) < 1e-10);
        }
        assert!((hardy_constant(6, 2.0).unwrap() - 0.5).abs() < 1e-15);
        assert!(best_constant(4, 4.0).is_err());
        assert!((best_constant_l1(2) - 0.5 / PI.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn norme_f2_sign() {
        let r = norme_f2_check(16, 3).unwrap();
        assert!(r.holds);
        assert!(r.rel_error_negated > 1.0);
    }

    #[test]
    fn bracket_zero_and_minimizer() {
        let b = expansion_bracket(20, 5, BracketStats::default()).unwrap();
        assert_eq!(b.value, 0.0);
        assert!(expansion_bracket(15, 5, BracketStats::default()).is_err());
        assert!(expansion_bracket(16, 5, BracketStats::default()).unwrap().logarithmic);
    }
}
