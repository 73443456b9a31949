//! Numerical checks of a computed normal form by integrating the corrected
//! nonlinear system along complex paths and comparing with the image under
//! `H` of the explicit linear flow `w_j(x) ∝ (x-1)^{a_j} (x+1)^{b_j}`.

mod integrator;
mod path;

pub use integrator::{integrate_path, IntegratorOptions, IntegratorStats};
pub use path::{PathSpec, Winding, SINGULAR_CLEARANCE};

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{FrozenSeries, PointSeries};
use crate::beta_ops::SlopeFit;
use crate::direct::{obstruction_integrals, NormalForm};
use crate::error::Result;
use crate::problem::ProblemSpec;
use crate::spectra::EigenData;

/// `w(x1) = diag((x1-1)^{a_j} (x1+1)^{b_j} / (x0-1)^{a_j} (x0+1)^{b_j}) w0`
/// with both logarithms continued along `path`.
pub fn linear_flow(eigen: &EigenData, path: &PathSpec, w0: &[Complex64]) -> Vec<Complex64> {
    let (lm, lp) = (path.log_increment(1.0), path.log_increment(-1.0));
    w0.iter()
        .enumerate()
        .map(|(j, w)| w * (eigen.a[j] * lm + eigen.b[j] * lp).exp())
        .collect()
}

/// `du/dx = M(x) u + σ (f(x,u) - φ(u)) / (1 - x²)`.
pub fn corrected_rhs<'a>(p: &'a ProblemSpec, phi: &'a PointSeries) -> impl Fn(Complex64, &[Complex64]) -> Vec<Complex64> + 'a {
    let sigma = p.convention.sign();
    move |x: Complex64, u: &[Complex64]| {
        let fx = p.f.eval(x, u);
        let ph = phi.eval(u);
        let denom = 1.0 - x * x;
        (0..u.len())
            .map(|j| {
                let m = p.eigen.a[j] / (x - 1.0) + p.eigen.b[j] / (x + 1.0);
                m * u[j] + (fx[j] - ph[j]) * sigma / denom
            })
            .collect()
    }
}

/// Integrates the corrected system from `u0` at the start of `path`, aborting
/// if `|u|` reaches the problem's polydisk radius.
pub fn integrate_nonlinear(p: &ProblemSpec, phi: &PointSeries, path: &PathSpec, u0: &[Complex64], tol: f64) -> Result<Vec<Complex64>> {
    let opts = IntegratorOptions {
        tol,
        bound: Some(p.domain.radius),
    };
    Ok(integrate_path(corrected_rhs(p, phi), path, u0, &opts)?.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct VerifyConfig {
    /// Paths stay inside `|x - c| < radius_fraction · ρ`.
    pub radius_fraction: f64,
    /// Size of the first `w0` of the conjugacy scan; later ones halve it.
    pub w0_magnitude: f64,
    pub magnitudes: usize,
    pub loop_radius: f64,
    pub loop_w0_magnitude: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            radius_fraction: 0.9,
            w0_magnitude: 0.2,
            magnitudes: 4,
            loop_radius: 0.5,
            loop_w0_magnitude: 0.05,
        }
    }
}

/// A short chord inside the verification disk, away from `[-1, 1]`.
pub fn default_path(p: &ProblemSpec, cfg: &VerifyConfig) -> Result<PathSpec> {
    let r = 0.25 * cfg.radius_fraction * p.domain.rho;
    let c = p.center();
    PathSpec::straight(c + Complex64::new(0.0, r), c + Complex64::from_polar(r, TAU / 8.0))
}

/// `w0 = s (1, e^{iπ/3}, e^{2iπ/3}, ...)`, a fixed direction of max-norm `s`.
pub fn default_w0(dim: usize, s: f64) -> Vec<Complex64> {
    (0..dim).map(|j| Complex64::from_polar(s, TAU * j as f64 / 6.0)).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConjugacyRow {
    pub magnitude: f64,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConjugacyReport {
    pub x0: Complex64,
    pub x1: Complex64,
    pub w0: Vec<Complex64>,
    pub tol: f64,
    pub rows: Vec<ConjugacyRow>,
    /// `residual ∝ |w0|^slope`; present only when at least three residuals
    /// exceed the integrator tolerance.
    pub slope: Option<SlopeFit>,
}

fn max_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn diff_norm(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Compares the corrected flow started at `H(x0, w0)` with `H(x1, w(x1))` for
/// `w0, w0/2, ...`; the residual should scale like `|w0|^{N+1}`.
pub fn check_conjugacy(p: &ProblemSpec, nf: &NormalForm, w0: &[Complex64], path: &PathSpec, magnitudes: usize) -> Result<ConjugacyReport> {
    let h = nf.map();
    let (x0, x1) = (path.start(), path.end());
    let (h0, h1) = (FrozenSeries::new(&h, x0), FrozenSeries::new(&h, x1));
    let tol = p.tolerances.integrator;
    let mut rows = Vec::with_capacity(magnitudes);
    let mut w = w0.to_vec();
    for _ in 0..magnitudes {
        let u0 = h0.eval(&w);
        let u1 = integrate_nonlinear(p, &nf.phi, path, &u0, tol)?;
        let predicted = h1.eval(&linear_flow(&p.eigen, path, &w));
        rows.push(ConjugacyRow {
            magnitude: max_norm(&w),
            residual: diff_norm(&u1, &predicted),
        });
        w.iter_mut().for_each(|z| *z *= 0.5);
    }
    // Residuals below the integrator tolerance are noise and are not fitted.
    let usable: Vec<&ConjugacyRow> = rows.iter().filter(|r| r.residual > tol).collect();
    let slope = (usable.len() >= 3).then(|| {
        let xs: Vec<f64> = usable.iter().map(|r| r.magnitude).collect();
        let ys: Vec<f64> = usable.iter().map(|r| r.residual).collect();
        SlopeFit::fit(&xs, &ys)
    });
    Ok(ConjugacyReport {
        x0,
        x1,
        w0: w0.to_vec(),
        tol,
        rows,
        slope,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LoopTransport {
    /// `-1` or `+1`.
    pub around: f64,
    pub winding: Winding,
    /// `e^{2πi b_j}` around `-1`, `e^{2πi a_j}` around `+1`.
    pub expected_factors: Vec<Complex64>,
    /// Worst `|w_j(end)/w_j(start) - factor_j|` from integrating `w' = M w`.
    pub linear_mismatch: f64,
    /// `|u(end) - H(x0, G w0)|` for the corrected nonlinear system.
    pub nonlinear_mismatch: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrderObstruction {
    pub order: usize,
    pub max_before: f64,
    pub max_after: f64,
    pub regularized: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonodromyReport {
    /// `h_m` are polynomials in `x`, hence single-valued; the largest degree seen.
    pub max_h_degree: usize,
    pub obstructions: Vec<OrderObstruction>,
    pub loops: Vec<LoopTransport>,
}

fn loop_transport(p: &ProblemSpec, nf: &NormalForm, around: f64, radius: f64, w0: &[Complex64]) -> Result<LoopTransport> {
    let path = PathSpec::loop_around(around, radius, TAU / 8.0)?;
    let d = p.dim();
    let expected_factors: Vec<Complex64> = (0..d)
        .map(|j| {
            let e = if around < 0.0 { p.eigen.b[j] } else { p.eigen.a[j] };
            (Complex64::new(0.0, TAU) * e).exp()
        })
        .collect();
    let tol = p.tolerances.integrator;
    let linear = |x: Complex64, u: &[Complex64]| -> Vec<Complex64> {
        (0..u.len())
            .map(|j| (p.eigen.a[j] / (x - 1.0) + p.eigen.b[j] / (x + 1.0)) * u[j])
            .collect()
    };
    let ones = vec![Complex64::new(1.0, 0.0); d];
    let opts = IntegratorOptions { tol, bound: None };
    let (lin_end, _) = integrate_path(linear, &path, &ones, &opts)?;
    let linear_mismatch = diff_norm(&lin_end, &expected_factors);

    let h = FrozenSeries::new(&nf.map(), path.start());
    let u0 = h.eval(w0);
    let u1 = integrate_nonlinear(p, &nf.phi, &path, &u0, tol)?;
    let predicted = h.eval(&linear_flow(&p.eigen, &path, w0));
    Ok(LoopTransport {
        around,
        winding: path.winding(),
        expected_factors,
        linear_mismatch,
        nonlinear_mismatch: diff_norm(&u1, &predicted),
    })
}

/// Single-valuedness of the linearization: polynomial `h_m`, vanishing
/// obstruction integrals after correction, and loop transport around `±1`
/// commuting with `H`.
pub fn monodromy_check(p: &ProblemSpec, nf: &NormalForm, cfg: &VerifyConfig) -> Result<MonodromyReport> {
    let mut obstructions = Vec::new();
    for n in 2..=p.order() {
        let entries = obstruction_integrals(p, nf, n)?;
        let fold = |sel: fn(&crate::direct::ObstructionEntry) -> &Vec<Complex64>| {
            entries
                .iter()
                .flat_map(|e| sel(e).iter().map(|z| z.norm()))
                .fold(0.0, f64::max)
        };
        obstructions.push(OrderObstruction {
            order: n,
            max_before: fold(|e| &e.before),
            max_after: fold(|e| &e.after),
            regularized: entries.iter().any(|e| e.regularized.iter().any(|r| *r)),
        });
    }
    let w0 = default_w0(p.dim(), cfg.loop_w0_magnitude);
    let loops = [-1.0, 1.0]
        .iter()
        .map(|&around| loop_transport(p, nf, around, cfg.loop_radius, &w0))
        .collect::<Result<Vec<_>>>()?;
    Ok(MonodromyReport {
        max_h_degree: nf.h.max_x_degree(),
        obstructions,
        loops,
    })
}
