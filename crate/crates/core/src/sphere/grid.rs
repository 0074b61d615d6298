use std::f64::consts::PI;

use rayon::prelude::*;

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

/// Product grid: Gauss–Legendre in `cos(theta)`, uniform in `phi`.
#[derive(Clone, Debug, PartialEq)]
pub struct SphereGrid {
    pub theta: Vec<f64>,
    /// Gauss weights normalized to sum to one.
    pub theta_weights: Vec<f64>,
    pub phi: Vec<f64>,
}

impl SphereGrid {
    /// Integrates trigonometric polynomials of degree `< 2 n_theta` in
    /// `cos(theta)` and `< n_phi` in `phi` exactly.
    pub fn new(n_theta: usize, n_phi: usize) -> Self {
        let (x, w) = gauss_legendre(n_theta);
        Self {
            theta: x.iter().map(|c| c.acos()).collect(),
            theta_weights: w.iter().map(|v| v / 2.0).collect(),
            phi: (0..n_phi).map(|j| 2.0 * PI * j as f64 / n_phi as f64).collect(),
        }
    }

    /// Enough nodes for products of harmonics of degree up to `l_max`, with room to spare.
    pub fn for_degree(l_max: usize) -> Self {
        Self::new(2 * l_max + 8, 4 * l_max + 16)
    }

    pub fn len(&self) -> usize {
        self.theta.len() * self.phi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All nodes, colatitude major.
    pub fn nodes(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.theta
            .iter()
            .flat_map(move |&t| self.phi.iter().map(move |&p| (t, p)))
    }

    /// Mean value of `f` over the sphere. Rows run in parallel; the reduction
    /// order is fixed.
    pub fn mean<F: Fn(f64, f64) -> f64 + Sync>(&self, f: F) -> f64 {
        let inv = 1.0 / self.phi.len() as f64;
        let rows: Vec<f64> = self
            .theta
            .par_iter()
            .zip(&self.theta_weights)
            .map(|(&t, &w)| w * inv * self.phi.iter().map(|&p| f(t, p)).sum::<f64>())
            .collect();
        rows.iter().sum()
    }

    /// Largest `|f|` over the nodes.
    pub fn max_abs<F: Fn(f64, f64) -> f64 + Sync>(&self, f: F) -> f64 {
        self.theta
            .par_iter()
            .map(|&t| self.phi.iter().map(|&p| f(t, p).abs()).fold(0.0, f64::max))
            .collect::<Vec<_>>()
            .into_iter()
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_weights_and_moments() {
        let (x, w) = gauss_legendre(7);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        let m12: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(12)).sum();
        assert!((m12 - 2.0 / 13.0).abs() < 1e-14);
    }

    #[test]
    fn mean_of_one() {
        let g = SphereGrid::new(6, 12);
        assert!((g.mean(|_, _| 1.0) - 1.0).abs() < 1e-14);
        // mean of cos^2 theta is 1/3
        assert!((g.mean(|t, _| t.cos().powi(2)) - 1.0 / 3.0).abs() < 1e-14);
    }
}
