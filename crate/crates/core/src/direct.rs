//! Order-by-order construction of the correction `φ` and the linearizing map
//! `H = w + h`.
//!
//! At order `n`, with `S_n` the degree-`n` part of `f(w + h) - φ(w + h)` built from
//! lower orders, each coefficient solves the scalar equation
//! `L h_{m,j} = S_{m,j} - φ_{m,j}` with weight exponents `p = m·a - a_j`,
//! `q = m·b - b_j`; so `φ_{m,j} = Φ[S_{m,j}]` and `h_{m,j} = J[S_{m,j}]`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{series_compose, MultiIndex, PointSeries, WSeries, XPoly};
use crate::beta_ops::{j_operator_with, jacobi_moment_continued, WeightParams};
use crate::error::{Error, Result};
use crate::problem::ProblemSpec;
use crate::spectra::AssumptionReport;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermAudit {
    pub m: MultiIndex,
    pub j: usize,
    pub p: Complex64,
    pub q: Complex64,
    /// Residual of the unused equation in the triangular solve for `h_{m,j}`.
    pub residual: f64,
    pub h_degree: Option<usize>,
    /// `∫ (1-t)^{p-1} (1+t)^{q-1} S_{m,j}(t) dt`
    pub obstruction_before: Complex64,
    /// The same with `S_{m,j} - φ_{m,j}`.
    pub obstruction_after: Complex64,
    /// The integrals are finite parts: `Re p <= 0` or `Re q <= 0`.
    pub regularized: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrderAudit {
    pub order: usize,
    pub terms: Vec<TermAudit>,
    /// Largest `x`-degree among the `h_m` of this order.
    pub max_h_degree: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NormalForm {
    pub phi: PointSeries,
    pub h: WSeries,
    pub audit: Vec<OrderAudit>,
    pub assumptions: AssumptionReport,
}

impl NormalForm {
    /// `H(x, w) = w + h(x, w)`.
    pub fn map(&self) -> WSeries {
        self.h.plus_identity()
    }

    pub fn max_obstruction_after(&self) -> f64 {
        self.audit
            .iter()
            .flat_map(|o| o.terms.iter().map(|t| t.obstruction_after.norm()))
            .fold(0.0, f64::max)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ObstructionEntry {
    pub m: MultiIndex,
    pub before: Vec<Complex64>,
    pub after: Vec<Complex64>,
    pub regularized: Vec<bool>,
}

/// Degree-`n` part of `g(x, w + h(x, w))`, using only `h` terms below order `n`.
fn order_part(g: &WSeries, h: &WSeries, n: usize) -> Result<WSeries> {
    let gn = g.with_order(n);
    let shift = h.with_order(n.saturating_sub(1)).with_order(n);
    Ok(series_compose(&gn, &shift)?.homogeneous(n))
}

/// `∫ (1-t)^{p-1} (1+t)^{q-1} F(t) dt` from the binomial moments, continued
/// analytically (finite part) when the weight is not integrable.
fn weighted_integral(w: &WeightParams, f: &XPoly) -> Result<Complex64> {
    let mut total = Complex64::new(0.0, 0.0);
    for (k, a) in f.coeffs().iter().enumerate() {
        total += a * jacobi_moment_continued(w, k, f.center())?;
    }
    Ok(total)
}

struct Solved {
    m: MultiIndex,
    j: usize,
    phi: Complex64,
    h: XPoly,
    audit: TermAudit,
}

fn solve_term(p: &ProblemSpec, m: &MultiIndex, j: usize, s: XPoly, sigma: f64) -> Result<Solved> {
    let w = WeightParams::for_term(&p.eigen, m, j);
    let sol = j_operator_with(&w, &s, &p.tolerances.j)?;
    let after = &s - &XPoly::constant(s.center(), sol.phi);
    let before = weighted_integral(&w, &s)? * sigma;
    let after = weighted_integral(&w, &after)? * sigma;
    Ok(Solved {
        m: m.clone(),
        j,
        phi: sol.phi * sigma,
        audit: TermAudit {
            m: m.clone(),
            j,
            p: w.p,
            q: w.q,
            residual: sol.residual,
            h_degree: sol.h.degree(),
            obstruction_before: before,
            obstruction_after: after,
            regularized: !w.is_integrable(),
        },
        h: sol.h,
    })
}

/// Computes `φ` and `h` through the problem's truncation order.
///
/// Refuses to run when positivity, non-integrality or non-resonance fail on the
/// bounded scan (and the Diophantine scan, if configured as gating).
pub fn compute_normal_form(p: &ProblemSpec) -> Result<NormalForm> {
    let assumptions = p.assumptions()?;
    assumptions.gate(p.scan.require_diophantine)?;

    let (d, order, c) = (p.dim(), p.order(), p.center());
    let sigma = p.convention.sign();
    let f_eff = p.effective_f();
    let mut phi_eff = WSeries::zero(d, order, c);
    let mut h = WSeries::zero(d, order, c);
    let mut phi = PointSeries::zero(d, order);
    let mut audit = Vec::with_capacity(order.saturating_sub(1));

    for n in 2..=order {
        let rhs = order_part(&f_eff.sub(&phi_eff)?, &h, n)?;
        let items: Vec<(MultiIndex, usize)> = MultiIndex::of_degree(d, n)
            .into_iter()
            .flat_map(|m| (0..d).map(move |j| (m.clone(), j)))
            .collect();
        let solved = items
            .par_iter()
            .map(|(m, j)| solve_term(p, m, *j, rhs.coeff(m, *j), sigma))
            .collect::<Result<Vec<_>>>()?;
        let mut terms = Vec::with_capacity(solved.len());
        for s in solved {
            phi.set(s.m.clone(), s.j, s.phi);
            phi_eff.set_term(s.m.clone(), s.j, XPoly::constant(c, s.phi * sigma));
            h.set_term(s.m, s.j, s.h);
            terms.push(s.audit);
        }
        let max_h_degree = terms.iter().filter_map(|t| t.h_degree).max();
        audit.push(OrderAudit {
            order: n,
            terms,
            max_h_degree,
        });
    }
    Ok(NormalForm {
        phi,
        h,
        audit,
        assumptions,
    })
}

/// Obstruction integrals at order `n` for every `|m| = n`, before and after
/// subtracting `φ_m`, recomputed from the orders below `n` of `partial`.
pub fn obstruction_integrals(p: &ProblemSpec, partial: &NormalForm, n: usize) -> Result<Vec<ObstructionEntry>> {
    if n < 2 || n > partial.h.order() || n > p.order() {
        return Err(Error::invalid(
            "n",
            format!("order {n} outside 2..={}", partial.h.order().min(p.order())),
        ));
    }
    let (d, c) = (p.dim(), p.center());
    let sigma = p.convention.sign();
    let phi_lower = partial.phi.up_to(n - 1).scale(Complex64::new(sigma, 0.0));
    let g = p.f.scale(Complex64::new(sigma, 0.0)).sub(&phi_lower.to_wseries(c).with_order(p.order()))?;
    let rhs = order_part(&g, &partial.h.with_order(p.order()), n)?;
    MultiIndex::of_degree(d, n)
        .into_iter()
        .map(|m| {
            let mut before = Vec::with_capacity(d);
            let mut after = Vec::with_capacity(d);
            let mut regularized = Vec::with_capacity(d);
            for j in 0..d {
                let w = WeightParams::for_term(&p.eigen, &m, j);
                regularized.push(!w.is_integrable());
                let s = rhs.coeff(&m, j);
                let corrected = &s - &XPoly::constant(c, partial.phi.get(&m, j) * sigma);
                before.push(weighted_integral(&w, &s)? * sigma);
                after.push(weighted_integral(&w, &corrected)? * sigma);
            }
            Ok(ObstructionEntry {
                m,
                before,
                after,
                regularized,
            })
        })
        .collect()
}

/// `(1-x²)(∂_x h + d_w h · M w - M h) - σ g(w+h)` through the order of `h`,
/// the residual of `w + h` as a conjugacy from `u' = Mu + σ g / (1-x²)` to the
/// linear system.
///
/// `(1-x²) M` is the polynomial diagonal `(b_i - a_i) - (a_i + b_i) x`.
pub fn linearization_residual(p: &ProblemSpec, g: &WSeries, h: &WSeries) -> Result<WSeries> {
    let (d, c) = (p.dim(), h.center());
    let ell: Vec<XPoly> = (0..d)
        .map(|i| {
            let (a, b) = (p.eigen.a[i], p.eigen.b[i]);
            XPoly::from_monomial(c, &[b - a, -(a + b)])
        })
        .collect();
    let one_minus_x2 = XPoly::from_monomial(c, &[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(-1.0, 0.0)]);

    // (1-x²) ∂_x h - ℓ_j h_j + Σ_i m_i ℓ_i h  (the Euler operator for d_w h · M w)
    let hx = h.x_derivative();
    let lhs = h.map_terms(c, |m, j, poly| {
        let mut total = &one_minus_x2 * &hx.coeff(m, j);
        total = &total - &(&ell[j] * poly);
        for (i, &mi) in m.entries().iter().enumerate() {
            if mi > 0 {
                total.add_scaled(&(&ell[i] * poly), Complex64::new(mi as f64, 0.0));
            }
        }
        total
    });
    let sigma = Complex64::new(p.convention.sign(), 0.0);
    let rhs = series_compose(&g.recenter(c).scale(sigma), h)?;
    lhs.sub(&rhs)
}

/// [`linearization_residual`] for `g = f - φ` and the computed `h`; it
/// vanishes exactly for the true normal form.
pub fn conjugacy_residual(p: &ProblemSpec, nf: &NormalForm) -> Result<WSeries> {
    let (order, c) = (p.order(), p.center());
    let g = p.f.sub(&nf.phi.to_wseries(c).with_order(order))?;
    linearization_residual(p, &g, &nf.h.with_order(order))
}
