use std::f64::consts::PI;

use statrs::function::gamma::ln_gamma;

/// `ln Gamma(m/2)` for a positive integer `m`, by the exact product
/// `Gamma(k) = (k-1)!` or `Gamma(k + 1/2) = sqrt(pi) (2k)! / (4^k k!)`.
pub fn ln_gamma_half(m: u32) -> f64 {
    assert!(m > 0, "Gamma has a pole at 0");
    if m % 2 == 0 {
        (1..m / 2).map(|j| (j as f64).ln()).sum()
    } else {
        // Gamma(1/2) * prod_{j=0}^{k-1} (j + 1/2)
        let k = (m - 1) / 2;
        0.5 * PI.ln() + (0..k).map(|j| (j as f64 + 0.5).ln()).sum::<f64>()
    }
}

/// `Some(m)` when `x = m/2` for a positive integer `m`.
fn as_half_integer(x: f64) -> Option<u32> {
    let m = 2.0 * x;
    (x > 0.0 && m.fract() == 0.0 && m < 1e6).then_some(m as u32)
}

/// `ln Gamma(x)`, exact product route on half-integers.
pub fn ln_gamma_any(x: f64) -> f64 {
    match as_half_integer(x) {
        Some(m) => ln_gamma_half(m),
        None => ln_gamma(x),
    }
}

/// Euler Beta function for positive arguments.
pub fn beta(p: f64, q: f64) -> f64 {
    (ln_gamma_any(p) + ln_gamma_any(q) - ln_gamma_any(p + q)).exp()
}

/// Volume of the unit sphere `S^n` in `R^{n+1}`: `2 pi^{(n+1)/2} / Gamma((n+1)/2)`.
pub fn sphere_volume(n: u32) -> f64 {
    2.0 * PI.powf((n as f64 + 1.0) / 2.0) / ln_gamma_half(n + 1).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_integer_route_matches_lanczos() {
        for m in 1..80 {
            let x = m as f64 / 2.0;
            let d = (ln_gamma_half(m) - ln_gamma(x)).abs();
            assert!(d < 1e-12 * ln_gamma(x).abs().max(1.0), "m {m}");
        }
    }

    #[test]
    fn low_dimensional_spheres() {
        assert!((sphere_volume(1) - 2.0 * PI).abs() < 1e-14);
        assert!((sphere_volume(2) - 4.0 * PI).abs() < 1e-13);
        assert!((sphere_volume(3) - 2.0 * PI * PI).abs() < 1e-13);
    }
}
