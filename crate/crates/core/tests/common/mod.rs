//! Independent oracles and random problem generators shared by the
//! integration tests. Nothing here calls into the library's numerics.

#![allow(dead_code)]

use fnf_core::algebra::{MultiIndex, WSeries, XPoly};
use fnf_core::spectra::EigenData;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_complex(rng: &mut ChaCha8Rng, scale: f64) -> Complex64 {
    c(rng.random_range(-scale..scale), rng.random_range(-scale..scale))
}

/// Spectra with `Re a, Re b ∈ [0.3, 1.5]` and small imaginary parts.
pub fn random_eigen(rng: &mut ChaCha8Rng, d: usize) -> EigenData {
    let draw = |rng: &mut ChaCha8Rng| c(rng.random_range(0.3..1.5), rng.random_range(-0.2..0.2));
    let a = (0..d).map(|_| draw(rng)).collect();
    let b = (0..d).map(|_| draw(rng)).collect();
    EigenData::new(a, b).unwrap()
}

/// Random nonlinearity with `terms` monomials of degree `2..=max_deg` and
/// `x`-coefficients of degree `< x_len` in the monomial basis.
pub fn random_f(
    rng: &mut ChaCha8Rng,
    d: usize,
    order: usize,
    max_deg: usize,
    terms: usize,
    x_len: usize,
    center: Complex64,
) -> WSeries {
    let all = MultiIndex::up_to_degree(d, 2, max_deg.min(order));
    let mut f = WSeries::zero(d, order, center);
    for _ in 0..terms {
        let m = all[rng.random_range(0..all.len())].clone();
        let j = rng.random_range(0..d);
        let mono: Vec<Complex64> = (0..x_len).map(|_| random_complex(rng, 1.0)).collect();
        f.add_term(m, j, &XPoly::from_monomial(center, &mono));
    }
    f
}

// ---------------------------------------------------------------------------
// Dense bivariate polynomials in (w, x), monomial basis in x, d = 1.

/// `a[n][k]` multiplies `w^n x^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Dense {
    pub a: Vec<Vec<Complex64>>,
}

impl Dense {
    pub fn zero(order: usize) -> Dense {
        Dense {
            a: vec![Vec::new(); order + 1],
        }
    }

    pub fn order(&self) -> usize {
        self.a.len() - 1
    }

    pub fn get(&self, n: usize, k: usize) -> Complex64 {
        self.a[n].get(k).copied().unwrap_or(ZERO)
    }

    pub fn add(&mut self, n: usize, k: usize, v: Complex64) {
        if n >= self.a.len() {
            return;
        }
        if self.a[n].len() <= k {
            self.a[n].resize(k + 1, ZERO);
        }
        self.a[n][k] += v;
    }

    pub fn from_series(s: &WSeries) -> Dense {
        let mut out = Dense::zero(s.order());
        for (m, p) in s.component(0).terms() {
            for (k, v) in p.to_monomial().iter().enumerate() {
                out.add(m.degree(), k, *v);
            }
        }
        out
    }

    pub fn sub(&self, other: &Dense) -> Dense {
        let mut out = self.clone();
        for (n, row) in other.a.iter().enumerate() {
            for (k, v) in row.iter().enumerate() {
                out.add(n, k, -v);
            }
        }
        out
    }

    pub fn mul(&self, other: &Dense) -> Dense {
        let order = self.order();
        let mut out = Dense::zero(order);
        for (n1, r1) in self.a.iter().enumerate() {
            for (n2, r2) in other.a.iter().enumerate() {
                if n1 + n2 > order {
                    continue;
                }
                for (k1, x) in r1.iter().enumerate() {
                    for (k2, y) in r2.iter().enumerate() {
                        out.add(n1 + n2, k1 + k2, x * y);
                    }
                }
            }
        }
        out
    }

    /// `self(x, w + shift(x, w))` by expanding powers of `w + shift`.
    pub fn substitute(&self, shift: &Dense) -> Dense {
        let order = self.order();
        let mut base = shift.clone();
        base.add(1, 0, ONE);
        let mut power = Dense::zero(order);
        power.add(0, 0, ONE);
        let mut out = Dense::zero(order);
        for n in 0..=order {
            let mut coef = Dense::zero(order);
            for (k, v) in self.a[n].iter().enumerate() {
                coef.add(0, k, *v);
            }
            let term = coef.mul(&power);
            for (m, row) in term.a.iter().enumerate() {
                for (k, v) in row.iter().enumerate() {
                    out.add(m, k, *v);
                }
            }
            power = power.mul(&base);
        }
        out
    }
}

/// `φ_n` and `h_n(x)` (monomial basis) for `d = 1`, from dense linear solves of
/// the coefficient-matching equations
/// `(1-x²) h' + [(q-p) - (p+q) x] h + φ = S_n(x)` with `p = (n-1) a`, `q = (n-1) b`.
pub struct BruteForce {
    pub phi: Vec<Complex64>,
    pub h: Vec<Vec<Complex64>>,
}

pub fn brute_force_scalar(a: Complex64, b: Complex64, f: &Dense, sigma: f64) -> BruteForce {
    let order = f.order();
    let mut phi = vec![ZERO; order + 1];
    let mut h = Dense::zero(order);
    let mut f_eff = f.clone();
    for row in f_eff.a.iter_mut() {
        for v in row.iter_mut() {
            *v *= sigma;
        }
    }
    for n in 2..=order {
        let mut phi_dense = Dense::zero(order);
        for (k, &v) in phi.iter().enumerate().take(n) {
            phi_dense.add(k, 0, v);
        }
        let mut h_lower = Dense::zero(order);
        for k in 0..n {
            for (i, v) in h.a[k].iter().enumerate() {
                h_lower.add(k, i, *v);
            }
        }
        let g = f_eff.sub(&phi_dense).substitute(&h_lower);
        let s: Vec<Complex64> = g.a[n].clone();
        let big_d = s.iter().rposition(|v| *v != ZERO).unwrap_or(0);
        let (p, q) = (a * (n - 1) as f64, b * (n - 1) as f64);
        let unknowns = big_d + 1; // h_0..h_{D-1}, φ
        let mut mat = DMatrix::<Complex64>::zeros(big_d + 1, unknowns);
        // Column i < D: contribution of x^i in h.
        for i in 0..big_d {
            let fi = i as f64;
            if i >= 1 {
                mat[(i - 1, i)] += c(fi, 0.0);
            }
            mat[(i + 1, i)] += c(-fi, 0.0);
            mat[(i, i)] += q - p;
            mat[(i + 1, i)] -= p + q;
        }
        mat[(0, big_d)] = ONE;
        let rhs = DVector::from_iterator(big_d + 1, (0..=big_d).map(|k| s.get(k).copied().unwrap_or(ZERO)));
        let sol = mat.lu().solve(&rhs).expect("nonsingular order-n system");
        phi[n] = sol[big_d];
        for i in 0..big_d {
            h.add(n, i, sol[i]);
        }
    }
    BruteForce {
        phi: phi.iter().map(|v| v * sigma).collect(),
        h: h.a,
    }
}

// ---------------------------------------------------------------------------
// Adaptive Gauss–Legendre quadrature.

pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Nodes and weights on `[-1, 1]` by Newton iteration on `P_n`.
    pub fn new(n: usize) -> GaussLegendre {
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for i in 0..n {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            nodes.push(x);
            weights.push(2.0 / ((1.0 - x * x) * dp * dp));
        }
        GaussLegendre { nodes, weights }
    }

    fn panel(&self, f: &dyn Fn(f64) -> Complex64, lo: f64, hi: f64) -> Complex64 {
        let (mid, half) = (0.5 * (lo + hi), 0.5 * (hi - lo));
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| f(mid + half * x) * (w * half))
            .sum()
    }

    /// Adaptive bisection until panel and two half-panels agree to `tol`.
    pub fn integrate(&self, f: &dyn Fn(f64) -> Complex64, lo: f64, hi: f64, tol: f64) -> Complex64 {
        self.adapt(f, lo, hi, self.panel(f, lo, hi), tol, 0)
    }

    fn adapt(&self, f: &dyn Fn(f64) -> Complex64, lo: f64, hi: f64, whole: Complex64, tol: f64, depth: u32) -> Complex64 {
        let mid = 0.5 * (lo + hi);
        let (l, r) = (self.panel(f, lo, mid), self.panel(f, mid, hi));
        // Refining below roundoff in the panel sums cannot succeed.
        let floor = 8.0 * f64::EPSILON * (l.norm() + r.norm());
        if (l + r - whole).norm() <= tol.max(floor) || depth > 40 {
            return l + r;
        }
        self.adapt(f, lo, mid, l, 0.5 * tol, depth + 1) + self.adapt(f, mid, hi, r, 0.5 * tol, depth + 1)
    }
}

/// `∫_{-1}^{1} (1-t)^{p-1} (1+t)^{q-1} F(t) dt` by splitting at 0 and
/// substituting `1+t = s^γ`, `1-t = s^γ'` with `γ = 2/Re q`, `γ' = 2/Re p`,
/// which turns the endpoint singularities into `s^{1 + iθ}` behavior.
/// `rel_tol` is relative to a first coarse estimate of the integral.
pub fn jacobi_quadrature(p: Complex64, q: Complex64, f: &dyn Fn(f64) -> Complex64, rel_tol: f64) -> Complex64 {
    let gl = GaussLegendre::new(20);
    let gq = 2.0 / q.re;
    let gp = 2.0 / p.re;
    // t ∈ [-1, 0]: 1 + t = s^gq, s ∈ [0, 1]
    let left = |s: f64| -> Complex64 {
        if s == 0.0 {
            return ZERO;
        }
        let t = -1.0 + s.powf(gq);
        let jac = gq * s.powf(gq - 1.0);
        c(1.0 - t, 0.0).powc(p - 1.0) * c(s, 0.0).powc((q - 1.0) * gq) * f(t) * jac
    };
    let right = |s: f64| -> Complex64 {
        if s == 0.0 {
            return ZERO;
        }
        let t = 1.0 - s.powf(gp);
        let jac = gp * s.powf(gp - 1.0);
        c(s, 0.0).powc((p - 1.0) * gp) * c(1.0 + t, 0.0).powc(q - 1.0) * f(t) * jac
    };
    let scale = (gl.panel(&left, 0.0, 1.0).norm() + gl.panel(&right, 0.0, 1.0).norm()).max(f64::MIN_POSITIVE);
    let tol = rel_tol * scale;
    gl.integrate(&left, 0.0, 1.0, tol) + gl.integrate(&right, 0.0, 1.0, tol)
}

pub fn rel_err(got: Complex64, want: Complex64) -> f64 {
    (got - want).norm() / want.norm().max(1e-300)
}
