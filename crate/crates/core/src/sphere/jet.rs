//! Truncated Taylor expansions in up to three variables, order at most four.
//!
//! A [`Jet`] stores the Taylor coefficients of a smooth function at a point, so
//! derivatives of products, quotients and compositions come out exactly (to
//! rounding) without finite differences.

use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

pub const VARS: usize = 3;
pub const MAX_ORDER: usize = 4;
const LEN: usize = 35;

struct Tables {
    exps: Vec<[usize; VARS]>,
    index: [[[usize; MAX_ORDER + 1]; MAX_ORDER + 1]; MAX_ORDER + 1],
    /// For each order, the `(i, j, k)` with `e_i + e_j = e_k` and degree within that order.
    products: Vec<Vec<(usize, usize, usize)>>,
}

fn tables() -> &'static Tables {
    static T: OnceLock<Tables> = OnceLock::new();
    T.get_or_init(|| {
        let mut exps = Vec::with_capacity(LEN);
        for deg in 0..=MAX_ORDER {
            for a in (0..=deg).rev() {
                for b in (0..=deg - a).rev() {
                    exps.push([a, b, deg - a - b]);
                }
            }
        }
        let mut index = [[[usize::MAX; MAX_ORDER + 1]; MAX_ORDER + 1]; MAX_ORDER + 1];
        for (i, e) in exps.iter().enumerate() {
            index[e[0]][e[1]][e[2]] = i;
        }
        let products = (0..=MAX_ORDER)
            .map(|o| {
                let len = count(o);
                let mut v = Vec::new();
                for i in 0..len {
                    for j in 0..len {
                        let (a, b) = (exps[i], exps[j]);
                        let s = [a[0] + b[0], a[1] + b[1], a[2] + b[2]];
                        if s.iter().sum::<usize>() <= o {
                            v.push((i, j, index[s[0]][s[1]][s[2]]));
                        }
                    }
                }
                v
            })
            .collect();
        Tables { exps, index, products }
    })
}

/// Number of monomials of degree at most `order`.
const fn count(order: usize) -> usize {
    (order + 1) * (order + 2) * (order + 3) / 6
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|j| j as f64).product()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet {
    order: usize,
    c: [f64; LEN],
}

impl Jet {
    pub fn constant(value: f64, order: usize) -> Self {
        assert!(order <= MAX_ORDER);
        let mut c = [0.0; LEN];
        c[0] = value;
        Self { order, c }
    }

    /// The coordinate function `x_var` expanded at `value`.
    pub fn var(var: usize, value: f64, order: usize) -> Self {
        let mut j = Self::constant(value, order);
        if order > 0 {
            j.c[1 + var] = 1.0;
        }
        j
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn value(&self) -> f64 {
        self.c[0]
    }

    /// Partial derivative with multi-index `alpha` at the expansion point.
    pub fn partial(&self, alpha: [usize; VARS]) -> f64 {
        if alpha.iter().sum::<usize>() > self.order {
            return 0.0;
        }
        let t = tables();
        let i = t.index[alpha[0]][alpha[1]][alpha[2]];
        self.c[i] * alpha.iter().map(|&a| factorial(a)).product::<f64>()
    }

    /// `d/dx_var`, one order lower.
    pub fn derivative(&self, var: usize) -> Self {
        assert!(self.order > 0, "derivative of an order-0 jet");
        let t = tables();
        let order = self.order - 1;
        let mut c = [0.0; LEN];
        for i in 0..count(self.order) {
            let e = t.exps[i];
            if e[var] == 0 {
                continue;
            }
            let mut f = e;
            f[var] -= 1;
            c[t.index[f[0]][f[1]][f[2]]] += e[var] as f64 * self.c[i];
        }
        Self { order, c }
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        let mut c = [0.0; LEN];
        let len = count(order);
        c[..len].copy_from_slice(&self.c[..len]);
        Self { order, c }
    }

    pub fn scale(&self, k: f64) -> Self {
        let mut out = *self;
        for v in out.c.iter_mut() {
            *v *= k;
        }
        out
    }

    /// `f(self)` from the scaled derivatives `f^(k)(a)/k!` at `a = self.value()`.
    fn compose(&self, taylor: &[f64]) -> Self {
        let mut h = *self;
        h.c[0] = 0.0;
        let o = self.order;
        let mut acc = Self::constant(taylor[o], o);
        for k in (0..o).rev() {
            acc = &(&acc * &h) + &Self::constant(taylor[k], o);
        }
        acc
    }

    pub fn sin(&self) -> Self {
        let (s, c) = self.value().sin_cos();
        let cyc = [s, c, -s, -c];
        let t: Vec<f64> = (0..=self.order).map(|k| cyc[k % 4] / factorial(k)).collect();
        self.compose(&t)
    }

    pub fn cos(&self) -> Self {
        let (s, c) = self.value().sin_cos();
        let cyc = [c, -s, -c, s];
        let t: Vec<f64> = (0..=self.order).map(|k| cyc[k % 4] / factorial(k)).collect();
        self.compose(&t)
    }

    pub fn recip(&self) -> Self {
        let a = self.value();
        let t: Vec<f64> = (0..=self.order)
            .map(|k| if k % 2 == 0 { 1.0 } else { -1.0 } / a.powi(k as i32 + 1))
            .collect();
        self.compose(&t)
    }

    /// `self^p` for a positive expansion point.
    pub fn powf(&self, p: f64) -> Self {
        let a = self.value();
        let mut coef = 1.0;
        let t: Vec<f64> = (0..=self.order)
            .map(|k| {
                if k > 0 {
                    coef *= (p - (k - 1) as f64) / k as f64;
                }
                coef * a.powf(p - k as f64)
            })
            .collect();
        self.compose(&t)
    }

    pub fn powi(&self, k: u32) -> Self {
        let mut out = Self::constant(1.0, self.order);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }
}

impl Add for &Jet {
    type Output = Jet;
    fn add(self, o: &Jet) -> Jet {
        let order = self.order.min(o.order);
        let mut c = [0.0; LEN];
        for i in 0..count(order) {
            c[i] = self.c[i] + o.c[i];
        }
        Jet { order, c }
    }
}

impl Sub for &Jet {
    type Output = Jet;
    fn sub(self, o: &Jet) -> Jet {
        let order = self.order.min(o.order);
        let mut c = [0.0; LEN];
        for i in 0..count(order) {
            c[i] = self.c[i] - o.c[i];
        }
        Jet { order, c }
    }
}

impl Mul for &Jet {
    type Output = Jet;
    fn mul(self, o: &Jet) -> Jet {
        let order = self.order.min(o.order);
        let mut c = [0.0; LEN];
        for &(i, j, k) in &tables().products[order] {
            c[k] += self.c[i] * o.c[j];
        }
        Jet { order, c }
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Jet {
            type Output = Jet;
            fn $m(self, o: Jet) -> Jet {
                (&self).$m(&o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);
