//! Quadrature oracle on the round 2-sphere in coordinates `(theta, phi)`, with
//! metric `s = d theta^2 + sin^2(theta) d phi^2`.
//!
//! Sign convention: `Delta f = -div grad f`, so harmonics of degree `l` satisfy
//! `Delta Y = l(l+1) Y`.

mod annulus;
mod grid;
mod harmonics;
pub mod jet;

pub use annulus::{annulus_curvature_check, AnnulusReport, AnnulusRow};
pub use grid::{gauss_legendre, SphereGrid};
pub use harmonics::{HarmonicMix, HarmonicSpec, SphereError};

use jet::Jet;
use serde::Serialize;

/// Jet variable indices: `0` is reserved for the radius on the annulus.
pub const THETA: usize = 1;
pub const PHI: usize = 2;

/// Dimension parameter of the instantiated sphere `S^{n-1} = S^2`.
pub const SPHERE_N: f64 = 3.0;

pub type Sym2 = [[Jet; 2]; 2];

/// Coordinate jets at a node.
pub fn point(theta: f64, phi: f64, order: usize) -> (Jet, Jet) {
    (Jet::var(THETA, theta, order), Jet::var(PHI, phi, order))
}

/// Diagonal of the round metric.
fn metric_diag(theta: &Jet) -> [Jet; 2] {
    let s = theta.sin();
    [Jet::constant(1.0, theta.order()), &s * &s]
}

fn inverse_diag(theta: &Jet) -> [Jet; 2] {
    let s = theta.sin();
    [Jet::constant(1.0, theta.order()), (&s * &s).recip()]
}

/// `gamma[k][i][j] = Gamma^k_ij`; only `Gamma^theta_phiphi = -sin cos` and
/// `Gamma^phi_thetaphi = cot` are nonzero.
fn christoffel(theta: &Jet) -> [[[Jet; 2]; 2]; 2] {
    let z = Jet::constant(0.0, theta.order());
    let (s, c) = (theta.sin(), theta.cos());
    let a = -&(&s * &c);
    let cot = &c * &s.recip();
    [[[z, z], [z, a]], [[z, cot], [cot, z]]]
}

fn grad(f: &Jet) -> [Jet; 2] {
    [f.derivative(THETA), f.derivative(PHI)]
}

/// `nabla_i nabla_j f`, two orders below `f`.
pub fn hessian_jet(f: &Jet, theta: &Jet) -> Sym2 {
    let g = grad(f);
    let gam = christoffel(theta);
    let mut h = [[Jet::constant(0.0, 0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            let mut v = g[j].derivative(var(i));
            for k in 0..2 {
                v = &v - &(&gam[k][i][j] * &g[k]);
            }
            h[i][j] = v;
        }
    }
    h
}

fn var(i: usize) -> usize {
    [THETA, PHI][i]
}

/// `d[k][i][j] = nabla_k T_ij`, one order below `t`.
pub fn covariant_derivative(t: &Sym2, theta: &Jet) -> [[[Jet; 2]; 2]; 2] {
    let gam = christoffel(theta);
    let mut d = [[[Jet::constant(0.0, 0); 2]; 2]; 2];
    for k in 0..2 {
        for i in 0..2 {
            for j in 0..2 {
                let mut v = t[i][j].derivative(var(k));
                for m in 0..2 {
                    v = &v - &(&gam[m][k][i] * &t[m][j]);
                    v = &v - &(&gam[m][k][j] * &t[i][m]);
                }
                d[k][i][j] = v;
            }
        }
    }
    d
}

/// `b_ij = sum_k [(n-1) nabla_ij phi_k + nu_k phi_k s_ij] / ((n-2)(nu_k + 1 - n))`
/// grouped by eigenspace.
pub fn b_jet(mix: &HarmonicMix, n: f64, theta: &Jet, phi: &Jet) -> Result<Sym2, SphereError> {
    let s = metric_diag(theta);
    let order = theta.order().min(phi.order()).saturating_sub(2);
    let mut b = [[Jet::constant(0.0, order); 2]; 2];
    for l in mix.degrees() {
        let nu = (l * (l + 1)) as f64;
        if nu == n - 1.0 {
            return Err(SphereError::ExcludedEigenvalue { nu });
        }
        let f = mix.component(l).eval(theta, phi);
        let h = hessian_jet(&f, theta);
        let k = 1.0 / ((n - 2.0) * (nu + 1.0 - n));
        for i in 0..2 {
            for j in 0..2 {
                let mut v = h[i][j].scale(n - 1.0);
                if i == j {
                    v = &v + &(&f * &s[i]).scale(nu);
                }
                b[i][j] = &b[i][j] + &v.scale(k);
            }
        }
    }
    Ok(b)
}

/// Covariant 2-tensor sampled on a grid.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorField2 {
    pub nodes: Vec<(f64, f64)>,
    pub values: Vec<[[f64; 2]; 2]>,
}

impl TensorField2 {
    fn sample<F: Fn(f64, f64) -> [[f64; 2]; 2]>(grid: &SphereGrid, f: F) -> Self {
        let nodes: Vec<_> = grid.nodes().collect();
        let values = nodes.iter().map(|&(t, p)| f(t, p)).collect();
        Self { nodes, values }
    }

    fn map_diag(&self, raise: bool) -> Self {
        let values = self
            .nodes
            .iter()
            .zip(&self.values)
            .map(|(&(t, _), v)| {
                let s2 = t.sin().powi(2);
                let w = if raise { [1.0, 1.0 / s2] } else { [1.0, s2] };
                [[v[0][0] * w[0] * w[0], v[0][1] * w[0] * w[1]], [v[1][0] * w[1] * w[0], v[1][1] * w[1] * w[1]]]
            })
            .collect();
        Self {
            nodes: self.nodes.clone(),
            values,
        }
    }

    /// `T^{ij} = s^{ik} s^{jl} T_kl`.
    pub fn raise(&self) -> Self {
        self.map_diag(true)
    }

    pub fn lower(&self) -> Self {
        self.map_diag(false)
    }

    /// Largest `|s^{ij} T_ij|`.
    pub fn max_trace(&self) -> f64 {
        self.nodes
            .iter()
            .zip(&self.values)
            .map(|(&(t, _), v)| (v[0][0] + v[1][1] / t.sin().powi(2)).abs())
            .fold(0.0, f64::max)
    }

    pub fn max_asymmetry(&self) -> f64 {
        self.values.iter().map(|v| (v[0][1] - v[1][0]).abs()).fold(0.0, f64::max)
    }
}

fn values(t: &Sym2) -> [[f64; 2]; 2] {
    [[t[0][0].value(), t[0][1].value()], [t[1][0].value(), t[1][1].value()]]
}

/// Covariant Hessian of a smooth scalar given as a jet-valued closure.
pub fn covariant_hessian<F>(grid: &SphereGrid, f: F) -> TensorField2
where
    F: Fn(&Jet, &Jet) -> Jet,
{
    TensorField2::sample(grid, |t, p| {
        let (th, ph) = point(t, p, 2);
        values(&hessian_jet(&f(&th, &ph), &th))
    })
}

pub fn b_tensor(grid: &SphereGrid, mix: &HarmonicMix, n: f64) -> Result<TensorField2, SphereError> {
    b_jet(mix, n, &Jet::constant(1.0, 2), &Jet::constant(0.0, 2))?;
    Ok(TensorField2::sample(grid, |t, p| {
        let (th, ph) = point(t, p, 2);
        values(&b_jet(mix, n, &th, &ph).expect("eigenvalues checked"))
    }))
}

/// Pointwise residuals of the identities satisfied by `b`.
#[derive(Clone, Debug, Serialize)]
pub struct BIdentityReport {
    /// `max |s^{ij} b_ij|`.
    pub trace: f64,
    /// `max |nabla^i b_ij + nabla_j phi|` in an orthonormal frame.
    pub divergence: f64,
    /// `max |nabla^{ij} b_ij - sum nu_k phi_k|`.
    pub double_divergence: f64,
    pub symmetry: f64,
}

pub fn b_identities(grid: &SphereGrid, mix: &HarmonicMix, n: f64) -> Result<BIdentityReport, SphereError> {
    b_jet(mix, n, &Jet::constant(1.0, 2), &Jet::constant(0.0, 2))?;
    let per_node = |t: f64, p: f64| -> [f64; 4] {
        let (th, ph) = point(t, p, 4);
        let b = b_jet(mix, n, &th, &ph).expect("eigenvalues checked");
        let inv = inverse_diag(&th);
        let trace = (&b[0][0] * &inv[0] + &b[1][1] * &inv[1]).value();
        let d = covariant_derivative(&b, &th);
        // div_j = s^{ik} nabla_k b_ij
        let div: Vec<Jet> = (0..2).map(|j| &(&d[0][0][j] * &inv[0]) + &(&d[1][1][j] * &inv[1])).collect();
        let phi_sum = mix.eval(&th, &ph);
        let g = grad(&phi_sum);
        let r = [div[0].value() + g[0].value(), div[1].value() + g[1].value()];
        let divergence = (r[0] * r[0] + r[1] * r[1] * inv[1].value()).sqrt();
        // nabla^j div_j = s^{jk} (d_k div_j - Gamma^m_kj div_m)
        let gam = christoffel(&th);
        let mut dd = Jet::constant(0.0, 0);
        for j in 0..2 {
            let mut v = div[j].derivative(var(j));
            for m in 0..2 {
                v = &v - &(&gam[m][j][j] * &div[m]);
            }
            dd = &dd + &(&v * &inv[j]);
        }
        let nu_phi: f64 = mix
            .terms
            .iter()
            .map(|(c, h)| c * h.eigenvalue() * h.value(t, p))
            .sum();
        let sym = (b[0][1].value() - b[1][0].value()).abs();
        [trace.abs(), divergence, (dd.value() - nu_phi).abs(), sym]
    };
    let max = |k: usize| grid.max_abs(|t, p| per_node(t, p)[k]);
    Ok(BIdentityReport {
        trace: max(0),
        divergence: max(1),
        double_divergence: max(2),
        symmetry: max(3),
    })
}

/// `max |tr Hess(Y) + nu Y|` over the grid: the Laplacian eigen-equation.
pub fn laplacian_residual(grid: &SphereGrid, h: HarmonicSpec) -> f64 {
    grid.max_abs(|t, p| {
        let (th, ph) = point(t, p, 2);
        let hs = hessian_jet(&h.eval(&th, &ph), &th);
        let inv = inverse_diag(&th);
        (&hs[0][0] * &inv[0] + &hs[1][1] * &inv[1]).value() + h.eigenvalue() * h.value(t, p)
    })
}

/// Maximum over nodes of `|[nabla_i, nabla_j] nabla_k phi - sign (s_ik nabla_j phi - s_jk nabla_i phi)|`
/// for both signs; the curvature identity holds for the sign with the small residual.
pub fn commutation_residuals(grid: &SphereGrid, h: HarmonicSpec) -> [f64; 2] {
    let per = |t: f64, p: f64, sign: f64| {
        let (th, ph) = point(t, p, 3);
        let f = h.eval(&th, &ph);
        let hs = hessian_jet(&f, &th);
        let d = covariant_derivative(&hs, &th);
        let g = grad(&f);
        let s = metric_diag(&th);
        let mut worst: f64 = 0.0;
        for k in 0..2 {
            // i = theta, j = phi
            let comm = d[0][1][k].value() - d[1][0][k].value();
            let s_ik = if k == 0 { s[0].value() } else { 0.0 };
            let s_jk = if k == 1 { s[1].value() } else { 0.0 };
            let expect = sign * (s_ik * g[1].value() - s_jk * g[0].value());
            worst = worst.max((comm - expect).abs());
        }
        worst
    };
    [grid.max_abs(|t, p| per(t, p, 1.0)), grid.max_abs(|t, p| per(t, p, -1.0))]
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Qbc {
    pub q: f64,
    pub b: f64,
    pub c: f64,
}

impl Qbc {
    /// `B/2 - C/4 - (1 + omega/2)^2 Q`.
    pub fn bracket(&self, omega: f64) -> f64 {
        self.b / 2.0 - self.c / 4.0 - (1.0 + omega / 2.0).powi(2) * self.q
    }
}

/// `Q_b`, `B_b`, `C_b` from the eigenvalues and mean squares of each component.
pub fn qbc_closed_forms(mix: &HarmonicMix, n: f64) -> Result<Qbc, SphereError> {
    let mut out = Qbc { q: 0.0, b: 0.0, c: 0.0 };
    let mut nu_sum = 0.0;
    for l in mix.degrees() {
        let nu = (l * (l + 1)) as f64;
        if nu == n - 1.0 {
            return Err(SphereError::ExcludedEigenvalue { nu });
        }
        let ms = mix.mean_square(l);
        out.q += (n - 1.0) / (n - 2.0) * nu / (nu - n + 1.0) * ms;
        nu_sum += nu * ms;
    }
    out.b = -(n - 1.0) * out.q + nu_sum;
    out.c = -(n - 1.0) * out.q + (n - 1.0) / (n - 2.0) * nu_sum;
    Ok(out)
}

/// The defining integrals `Q = mean b_ij b^ij`, `B = mean nabla^i b^jk nabla_j b_ik`,
/// `C = mean nabla^i b^jk nabla_i b_jk`.
pub fn qbc_quadrature(grid: &SphereGrid, mix: &HarmonicMix, n: f64) -> Result<Qbc, SphereError> {
    b_jet(mix, n, &Jet::constant(1.0, 2), &Jet::constant(0.0, 2))?;
    let per_node = |t: f64, p: f64| -> [f64; 3] {
        let (th, ph) = point(t, p, 3);
        let b = b_jet(mix, n, &th, &ph).expect("eigenvalues checked");
        let d = covariant_derivative(&b, &th);
        let w = [1.0, 1.0 / t.sin().powi(2)];
        let mut q = 0.0;
        let (mut bb, mut cc) = (0.0, 0.0);
        for i in 0..2 {
            for j in 0..2 {
                q += w[i] * w[j] * b[i][j].value().powi(2);
                for k in 0..2 {
                    let wt = w[i] * w[j] * w[k];
                    bb += wt * d[i][j][k].value() * d[j][i][k].value();
                    cc += wt * d[i][j][k].value().powi(2);
                }
            }
        }
        [q, bb, cc]
    };
    Ok(Qbc {
        q: grid.mean(|t, p| per_node(t, p)[0]),
        b: grid.mean(|t, p| per_node(t, p)[1]),
        c: grid.mean(|t, p| per_node(t, p)[2]),
    })
}

/// Scalar field sampled with its gradient norm.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarField {
    pub nodes: Vec<(f64, f64)>,
    pub values: Vec<f64>,
    pub grad_sq: Vec<f64>,
}

impl ScalarField {
    pub fn from_fn<F: Fn(&Jet, &Jet) -> Jet>(grid: &SphereGrid, f: F) -> Self {
        let nodes: Vec<_> = grid.nodes().collect();
        let (values, grad_sq) = nodes
            .iter()
            .map(|&(t, p)| {
                let (th, ph) = point(t, p, 1);
                let v = f(&th, &ph);
                let g = grad(&v);
                (v.value(), g[0].value().powi(2) + g[1].value().powi(2) / t.sin().powi(2))
            })
            .unzip();
        Self { nodes, values, grad_sq }
    }

    pub fn zero(grid: &SphereGrid) -> Self {
        Self::from_fn(grid, |t, _| Jet::constant(0.0, t.order()))
    }
}

/// Mean of `g(i)` over the node list of `grid`, with the grid's weights.
fn field_mean<F: Fn(usize) -> f64 + Sync>(grid: &SphereGrid, g: F) -> f64 {
    let np = grid.phi.len();
    let rows: Vec<f64> = (0..grid.theta.len())
        .map(|i| grid.theta_weights[i] / np as f64 * (0..np).map(|j| g(i * np + j)).sum::<f64>())
        .collect();
    rows.iter().sum()
}

/// Mean statistics of a field against a curvature leading term.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FieldStats {
    pub mean: f64,
    pub l2: f64,
    pub h1: f64,
    pub f_rbar: f64,
}

pub fn field_stats(grid: &SphereGrid, f: &ScalarField, rbar: &ScalarField) -> FieldStats {
    FieldStats {
        mean: field_mean(grid, |i| f.values[i]),
        l2: field_mean(grid, |i| f.values[i].powi(2)),
        h1: field_mean(grid, |i| f.grad_sq[i]),
        f_rbar: field_mean(grid, |i| f.values[i] * rbar.values[i]),
    }
}

/// `I_S(f) = mean[4(n-1)(n-2)|grad f|^2 - (4n(n-2)^2 - 4(omega+2)^2(n^2+n+2)) f^2 - 2(n-2)^2 f Rbar]`.
pub fn i_s_functional(
    grid: &SphereGrid,
    f: &ScalarField,
    rbar: &ScalarField,
    n: f64,
    omega: f64,
) -> Result<f64, SphereError> {
    let st = field_stats(grid, f, rbar);
    let scale = st.l2.sqrt().max(1.0);
    if st.mean.abs() > 1e-10 * scale {
        return Err(SphereError::NonzeroMean { mean: st.mean });
    }
    let w2 = (omega + 2.0).powi(2);
    Ok(4.0 * (n - 1.0) * (n - 2.0) * st.h1
        - (4.0 * n * (n - 2.0).powi(2) - 4.0 * w2 * (n * n + n + 2.0)) * st.l2
        - 2.0 * (n - 2.0).powi(2) * st.f_rbar)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> SphereGrid {
        SphereGrid::for_degree(6)
    }

    #[test]
    fn orthonormal_harmonics() {
        let g = grid();
        let hs: Vec<_> = [(2, 0), (2, 1), (2, -2), (3, 0), (3, -3), (6, 5)]
            .iter()
            .map(|&(l, m)| HarmonicSpec::new(l, m).unwrap())
            .collect();
        for a in &hs {
            for b in &hs {
                let v = g.mean(|t, p| a.value(t, p) * b.value(t, p));
                let e = if a == b { 1.0 } else { 0.0 };
                assert!((v - e).abs() < 1e-12, "{a:?} {b:?} {v}");
            }
        }
    }

    #[test]
    fn constant_has_zero_hessian() {
        let h = covariant_hessian(&grid(), |t, _| Jet::constant(3.0, t.order()));
        assert!(h.values.iter().all(|v| v.iter().flatten().all(|x| *x == 0.0)));
    }

    #[test]
    fn zonal_laplacian() {
        let h = HarmonicSpec::new(2, 0).unwrap();
        assert!(laplacian_residual(&grid(), h) < 1e-10);
    }

    #[test]
    fn raise_lower_round_trip() {
        let mix = HarmonicMix::single(HarmonicSpec::new(3, 2).unwrap());
        let b = b_tensor(&grid(), &mix, SPHERE_N).unwrap();
        let back = b.raise().lower();
        for (x, y) in b.values.iter().zip(&back.values) {
            for i in 0..2 {
                for j in 0..2 {
                    assert!((x[i][j] - y[i][j]).abs() < 1e-12 * (1.0 + x[i][j].abs()));
                }
            }
        }
    }

    #[test]
    fn excluded_eigenvalue() {
        let mix = HarmonicMix::single(HarmonicSpec::new(1, 0).unwrap());
        assert!(matches!(
            b_tensor(&grid(), &mix, SPHERE_N),
            Err(SphereError::ExcludedEigenvalue { .. })
        ));
    }

    #[test]
    fn closed_forms_l2_l3() {
        let q2 = qbc_closed_forms(&HarmonicMix::single(HarmonicSpec::new(2, 0).unwrap()), 3.0).unwrap();
        assert!((q2.q - 3.0).abs() < 1e-14 && q2.b.abs() < 1e-14 && (q2.c - 6.0).abs() < 1e-14);
        assert!((q2.bracket(2.0) + 13.5).abs() < 1e-13);
        let q3 = qbc_closed_forms(&HarmonicMix::single(HarmonicSpec::new(3, 1).unwrap()), 3.0).unwrap();
        assert!((q3.q - 2.4).abs() < 1e-14);
    }

    #[test]
    fn i_s_rejects_nonzero_mean() {
        let g = grid();
        let f = ScalarField::from_fn(&g, |t, _| Jet::constant(1.0, t.order()));
        let z = ScalarField::zero(&g);
        assert!(matches!(i_s_functional(&g, &f, &z, 3.0, 2.0), Err(SphereError::NonzeroMean { .. })));
        assert_eq!(i_s_functional(&g, &z, &z, 3.0, 2.0).unwrap(), 0.0);
    }

    use num_traits::ToPrimitive;

    fn r(x: f64) -> crate::algebra::Rational {
        crate::algebra::Rational::from_float(x).unwrap()
    }

    #[test]
    fn b_is_trace_free_and_divergence_free() {
        let g = grid();
        for l in 2..=5 {
            for m in [0, 1, -2] {
                let mix = HarmonicMix::single(HarmonicSpec::new(l, m).unwrap());
                let rep = b_identities(&g, &mix, SPHERE_N).unwrap();
                assert!(rep.trace < 1e-12 && rep.divergence < 1e-11 && rep.double_divergence < 1e-10, "{l} {m} {rep:?}");
                assert_eq!(rep.symmetry, 0.0);
            }
        }
    }

    #[test]
    fn qbc_quadrature_matches_closed_forms() {
        let g = grid();
        for l in 2..=5 {
            let mix = HarmonicMix::single(HarmonicSpec::new(l, 1 - l as i32).unwrap());
            let q = qbc_quadrature(&g, &mix, SPHERE_N).unwrap();
            let c = qbc_closed_forms(&mix, SPHERE_N).unwrap();
            for (a, b) in [(q.q, c.q), (q.b, c.b), (q.c, c.c)] {
                assert!((a - b).abs() <= 1e-6 * b.abs().max(1.0), "{l}: {q:?} {c:?}");
            }
        }
    }

    #[test]
    fn bracket_is_u_value() {
        for l in 2..=5u32 {
            let h = HarmonicSpec::new(l, 0).unwrap();
            let q = qbc_closed_forms(&HarmonicMix::single(h), SPHERE_N).unwrap();
            for w in 0..6 {
                let u = crate::spectral::u_value(&r(3.0), &r(h.eigenvalue()), &r(w as f64));
                assert!((q.bracket(w as f64) - u.to_f64().unwrap()).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn commutation_sign() {
        let g = grid();
        for (l, m) in [(2, 1), (3, -2), (4, 0)] {
            let [plus, minus] = commutation_residuals(&g, HarmonicSpec::new(l, m).unwrap());
            assert!(plus < 1e-10 && minus > 1.0);
        }
    }

    #[test]
    fn i_s_minimizer_and_additivity() {
        let g = grid();
        let (n, w) = (SPHERE_N, 2.0);
        let value = |hs: &[HarmonicSpec]| {
            let f = ScalarField::from_fn(&g, |t, p| {
                hs.iter().fold(Jet::constant(0.0, t.order()), |acc, h| {
                    let nu = h.eigenvalue();
                    let d = crate::spectral::d_value(&r(n), &r(nu), &r(w)).to_f64().unwrap();
                    &acc + &h.eval(t, p).scale(nu / d)
                })
            });
            let rbar = ScalarField::from_fn(&g, |t, p| {
                hs.iter()
                    .fold(Jet::constant(0.0, t.order()), |acc, h| &acc + &h.eval(t, p).scale(h.eigenvalue()))
            });
            i_s_functional(&g, &f, &rbar, n, w).unwrap()
        };
        let y2 = HarmonicSpec::new(2, 0).unwrap();
        let y3 = HarmonicSpec::new(3, 1).unwrap();
        // c = (n-2)^2/d with d = 932 at nu = 6
        assert!((value(&[y2]) + 36.0 / 932.0).abs() < 1e-8);
        let v3 = value(&[y3]);
        let d3 = crate::spectral::d_value(&r(n), &r(12.0), &r(w)).to_f64().unwrap();
        assert!((v3 + 144.0 / d3).abs() < 1e-8);
        assert!((value(&[y2, y3]) - value(&[y2]) - v3).abs() < 1e-8);
    }
}
