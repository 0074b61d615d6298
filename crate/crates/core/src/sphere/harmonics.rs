use thiserror::Error;

use super::jet::Jet;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SphereError {
    #[error("invalid harmonic: degree {l}, order {m}")]
    InvalidHarmonic { l: u32, m: i32 },
    #[error("excluded eigenvalue: nu = {nu} equals n - 1")]
    ExcludedEigenvalue { nu: f64 },
    #[error("f has mean {mean:e}, expected zero")]
    NonzeroMean { mean: f64 },
    #[error("accuracy failure at r = {r}: deviation {deviation:e} above {tolerance:e}")]
    Accuracy { r: f64, deviation: f64, tolerance: f64 },
}

/// Real spherical harmonic of degree `l` on the 2-sphere, `cos(m phi)` for
/// `m >= 0` and `sin(|m| phi)` for `m < 0`, scaled to unit mean square.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HarmonicSpec {
    pub l: u32,
    pub m: i32,
}

impl HarmonicSpec {
    pub fn new(l: u32, m: i32) -> Result<Self, SphereError> {
        if m.unsigned_abs() > l {
            return Err(SphereError::InvalidHarmonic { l, m });
        }
        Ok(Self { l, m })
    }

    /// `l(l+1)`, the eigenvalue of the nonnegative Laplacian.
    pub fn eigenvalue(&self) -> f64 {
        (self.l * (self.l + 1)) as f64
    }

    fn normalization(&self) -> f64 {
        let am = self.m.unsigned_abs();
        let ratio: f64 = ((self.l - am + 1)..=(self.l + am)).map(|k| 1.0 / k as f64).product();
        let two = if am > 0 { 2.0 } else { 1.0 };
        ((2 * self.l + 1) as f64 * ratio * two).sqrt()
    }

    /// Coefficients (low degree first) of `d^m/dx^m P_l(x)`.
    fn legendre_derivative(&self) -> Vec<f64> {
        let l = self.l as usize;
        // P_l(x) = 2^-l sum_k (-1)^k C(l,k) C(2l-2k, l) x^(l-2k)
        let mut p = vec![0.0; l + 1];
        let binom = |a: usize, b: usize| -> f64 { (0..b).map(|i| (a - i) as f64 / (i + 1) as f64).product() };
        for k in 0..=l / 2 {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            p[l - 2 * k] = sign * binom(l, k) * binom(2 * l - 2 * k, l) / 2f64.powi(l as i32);
        }
        for _ in 0..self.m.unsigned_abs() {
            p = p.iter().enumerate().skip(1).map(|(i, c)| i as f64 * c).collect();
        }
        p
    }

    /// The harmonic as a jet in `(theta, phi)`.
    pub fn eval(&self, theta: &Jet, phi: &Jet) -> Jet {
        let x = theta.cos();
        let q = self
            .legendre_derivative()
            .iter()
            .rev()
            .fold(Jet::constant(0.0, x.order()), |acc, c| &(&acc * &x) + &Jet::constant(*c, x.order()));
        let am = self.m.unsigned_abs();
        let ang = phi.scale(am as f64);
        let azimuth = if self.m >= 0 { ang.cos() } else { ang.sin() };
        (&(&theta.sin().powi(am) * &q) * &azimuth).scale(self.normalization())
    }

    pub fn value(&self, theta: f64, phi: f64) -> f64 {
        self.eval(&Jet::constant(theta, 0), &Jet::constant(phi, 0)).value()
    }
}

/// A finite combination `sum c_i Y_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct HarmonicMix {
    pub terms: Vec<(f64, HarmonicSpec)>,
}

impl HarmonicMix {
    pub fn single(h: HarmonicSpec) -> Self {
        Self { terms: vec![(1.0, h)] }
    }

    pub fn eval(&self, theta: &Jet, phi: &Jet) -> Jet {
        self.terms
            .iter()
            .fold(Jet::constant(0.0, theta.order().min(phi.order())), |acc, (c, h)| {
                &acc + &h.eval(theta, phi).scale(*c)
            })
    }

    /// The component in the eigenspace of degree `l`.
    pub fn component(&self, l: u32) -> Self {
        Self {
            terms: self.terms.iter().filter(|(_, h)| h.l == l).copied().collect(),
        }
    }

    /// Distinct degrees, ascending.
    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.iter().map(|(_, h)| h.l).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Mean square of the component of degree `l`, by orthonormality.
    pub fn mean_square(&self, l: u32) -> f64 {
        let mut acc: std::collections::BTreeMap<i32, f64> = Default::default();
        for (c, h) in self.terms.iter().filter(|(_, h)| h.l == l) {
            *acc.entry(h.m).or_default() += c;
        }
        acc.values().map(|c| c * c).sum()
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.iter().map(|(_, h)| h.l).max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn zonal_quadrupole() {
        let y = HarmonicSpec::new(2, 0).unwrap();
        // sqrt(5) (3 cos^2 - 1) / 2
        let t: f64 = 0.4;
        let expect = 5f64.sqrt() * (3.0 * t.cos().powi(2) - 1.0) / 2.0;
        assert!((y.value(t, 1.0) - expect).abs() < 1e-14);
    }

    #[test]
    fn sectoral_sign() {
        let y = HarmonicSpec::new(1, -1).unwrap();
        // sqrt(3) sin(theta) sin(phi)
        assert!((y.value(PI / 2.0, PI / 2.0) - 3f64.sqrt()).abs() < 1e-14);
        assert!(HarmonicSpec::new(2, 3).is_err());
    }
}
