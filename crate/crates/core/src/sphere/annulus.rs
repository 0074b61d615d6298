//! Scalar curvature of `dr^2 + r^2 (s + t r^{w+2} b + t^2 r^{2w+4} bhat)` on a
//! three-dimensional annulus, with `bhat_ij = b_i^k b_kj / 2`.

use serde::Serialize;

use super::jet::Jet;
use super::{b_jet, inverse_diag, metric_diag, point, qbc_quadrature, HarmonicMix, SphereError, SphereGrid, SPHERE_N};

#[derive(Clone, Debug, Serialize)]
pub struct AnnulusRow {
    pub r: f64,
    /// Mean of `R_g` over `S(r)` with the round measure.
    pub mean_curvature: f64,
    /// `mean_curvature / (t^2 r^{2 omega + 2})`; absent at `t = 0`.
    pub normalized: Option<f64>,
    pub rel_deviation: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnnulusReport {
    pub omega: u32,
    pub t: f64,
    /// `B/2 - C/4 - (1 + omega/2)^2 Q` by quadrature.
    pub bracket: f64,
    /// `Q` by quadrature, the scale of the observed offset.
    pub q: f64,
    pub rows: Vec<AnnulusRow>,
    pub max_rel_deviation: f64,
    pub worst_r: f64,
}

impl AnnulusReport {
    /// Fails when the worst relative deviation exceeds `tolerance`.
    pub fn require(&self, tolerance: f64) -> Result<(), SphereError> {
        if self.max_rel_deviation > tolerance {
            return Err(SphereError::Accuracy {
                r: self.worst_r,
                deviation: self.max_rel_deviation,
                tolerance,
            });
        }
        Ok(())
    }
}

fn zero(order: usize) -> Jet {
    Jet::constant(0.0, order)
}

/// Scalar curvature at one point, by Christoffel symbols of jets in `(r, theta, phi)`.
fn scalar_curvature(mix: &HarmonicMix, omega: u32, t: f64, r0: f64, theta: f64, phi: f64) -> f64 {
    let (th, ph) = point(theta, phi, 4);
    let b = b_jet(mix, SPHERE_N, &th, &ph).expect("eigenvalues checked");
    let s = metric_diag(&th);
    let inv = inverse_diag(&th);
    let mut bhat = [[zero(2); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                bhat[i][j] = &bhat[i][j] + &(&(&b[i][k] * &inv[k]) * &b[k][j]).scale(0.5);
            }
        }
    }
    let r = Jet::var(0, r0, 2);
    let rp = r.powi(omega + 2);
    let r2 = &r * &r;
    let mut g = [[zero(2); 3]; 3];
    g[0][0] = Jet::constant(1.0, 2);
    for i in 0..2 {
        for j in 0..2 {
            let mut h = (&rp * &b[i][j]).scale(t);
            h = &h + &(&(&rp * &rp) * &bhat[i][j]).scale(t * t);
            if i == j {
                h = &h + &s[i];
            }
            g[i + 1][j + 1] = &r2 * &h;
        }
    }
    ricci_scalar(&g)
}

/// Scalar curvature of a metric given as order-2 jets in `(r, theta, phi)`
/// with `g_rr = 1` and `g_ri = 0`.
fn ricci_scalar(g: &[[Jet; 3]; 3]) -> f64 {
    let det = &(&g[1][1] * &g[2][2]) - &(&g[1][2] * &g[2][1]);
    let idet = det.recip();
    let mut gi = [[zero(2); 3]; 3];
    gi[0][0] = Jet::constant(1.0, 2);
    gi[1][1] = &g[2][2] * &idet;
    gi[2][2] = &g[1][1] * &idet;
    gi[1][2] = -&(&g[1][2] * &idet);
    gi[2][1] = -&(&g[2][1] * &idet);

    let mut dg = [[[zero(1); 3]; 3]; 3];
    for c in 0..3 {
        for a in 0..3 {
            for bb in 0..3 {
                dg[c][a][bb] = g[a][bb].derivative(c);
            }
        }
    }
    // gam[k][i][j] = Gamma^k_ij
    let mut gam = [[[zero(1); 3]; 3]; 3];
    for k in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                let mut v = zero(1);
                for l in 0..3 {
                    let sum = &(&dg[i][j][l] + &dg[j][i][l]) - &dg[l][i][j];
                    v = &v + &(&gi[k][l] * &sum);
                }
                gam[k][i][j] = v.scale(0.5);
            }
        }
    }
    let mut scalar = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            let mut ric = 0.0;
            for k in 0..3 {
                ric += gam[k][i][j].derivative(k).value() - gam[k][i][k].derivative(j).value();
                for l in 0..3 {
                    ric += gam[k][k][l].value() * gam[l][i][j].value() - gam[k][j][l].value() * gam[l][i][k].value();
                }
            }
            scalar += gi[i][j].value() * ric;
        }
    }
    scalar
}

/// Compares the mean scalar curvature over spheres `S(r)` with
/// `t^2 r^{2 omega + 2} [B/2 - C/4 - (1 + omega/2)^2 Q]`.
pub fn annulus_curvature_check(
    grid: &SphereGrid,
    mix: &HarmonicMix,
    omega: u32,
    t: f64,
    radii: &[f64],
) -> Result<AnnulusReport, SphereError> {
    let qbc = qbc_quadrature(grid, mix, SPHERE_N)?;
    let bracket = qbc.bracket(omega as f64);
    let mut rows = Vec::with_capacity(radii.len());
    let (mut worst, mut worst_r) = (0.0f64, f64::NAN);
    for &r in radii {
        let mean = grid.mean(|th, ph| scalar_curvature(mix, omega, t, r, th, ph));
        let (normalized, rel_deviation) = if t == 0.0 {
            (None, None)
        } else {
            let v = mean / (t * t * r.powi(2 * omega as i32 + 2));
            let d = ((v - bracket) / bracket).abs();
            if !(d <= worst) {
                worst = d;
                worst_r = r;
            }
            (Some(v), Some(d))
        };
        rows.push(AnnulusRow {
            r,
            mean_curvature: mean,
            normalized,
            rel_deviation,
        });
    }
    Ok(AnnulusReport {
        omega,
        t,
        bracket,
        q: qbc.q,
        rows,
        max_rel_deviation: worst,
        worst_r,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `dr^2 + w(r)^2 s` at one point.
    fn warped(w: impl Fn(&Jet) -> Jet, r0: f64, theta: f64) -> f64 {
        let (th, _) = point(theta, 0.3, 2);
        let s = metric_diag(&th);
        let wr = w(&Jet::var(0, r0, 2));
        let w2 = &wr * &wr;
        let mut g = [[zero(2); 3]; 3];
        g[0][0] = Jet::constant(1.0, 2);
        g[1][1] = &w2 * &s[0];
        g[2][2] = &w2 * &s[1];
        ricci_scalar(&g)
    }

    #[test]
    fn round_and_hyperbolic_three_space() {
        for (r, th) in [(0.4, 0.7), (1.1, 2.0), (0.9, 0.2)] {
            assert!((warped(|r| r.sin(), r, th) - 6.0).abs() < 1e-12);
            let sinh = |r: &Jet| {
                let e = Jet::constant(r.value().exp(), 2);
                let h = r - &Jet::constant(r.value(), 2);
                // exp(r) as a jet through exp(a) (1 + h + h^2/2)
                let ex = &e * &(&(&Jet::constant(1.0, 2) + &h) + &(&h * &h).scale(0.5));
                (&ex - &ex.recip()).scale(0.5)
            };
            assert!((warped(sinh, r, th) + 6.0).abs() < 1e-12);
            assert!(warped(|r| *r, r, th).abs() < 1e-12);
        }
    }

    #[test]
    fn flat_cone_has_zero_mean() {
        let grid = SphereGrid::for_degree(2);
        let mix = HarmonicMix::single(crate::sphere::HarmonicSpec::new(2, 0).unwrap());
        let rep = annulus_curvature_check(&grid, &mix, 2, 0.0, &[0.5, 1.0]).unwrap();
        assert!(rep.rows.iter().all(|row| row.mean_curvature.abs() < 1e-12 && row.normalized.is_none()));
    }
}
