use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{j_operator, phi_functional, WeightParams};
use crate::algebra::XPoly;
use crate::error::{Error, Result};

const EXACT_TOL: f64 = 1e-14;
/// Orders `n` up to this use the integral form of `J` as a cross-check.
const QUADRATURE_MAX_N: usize = 8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SlopeFit {
    Fitted {
        slope: f64,
        intercept: f64,
        /// Root-mean-square deviation of `ln error` from the line.
        rms: f64,
    },
    ExactlySatisfied,
}

impl SlopeFit {
    pub fn slope(&self) -> Option<f64> {
        match self {
            SlopeFit::Fitted { slope, .. } => Some(*slope),
            SlopeFit::ExactlySatisfied => None,
        }
    }

    /// Least squares of `ln y` against `ln x`, ignoring zero errors.
    pub fn fit(xs: &[f64], ys: &[f64]) -> SlopeFit {
        if ys.iter().all(|&y| y < EXACT_TOL) {
            return SlopeFit::ExactlySatisfied;
        }
        let pts: Vec<(f64, f64)> = xs
            .iter()
            .zip(ys)
            .filter(|(_, &y)| y > 0.0)
            .map(|(&x, &y)| (x.ln(), y.ln()))
            .collect();
        let n = pts.len() as f64;
        if pts.len() < 2 {
            return SlopeFit::Fitted {
                slope: f64::NAN,
                intercept: f64::NAN,
                rms: f64::NAN,
            };
        }
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let slope = sxy / sxx;
        let intercept = my - slope * mx;
        let rms = (pts
            .iter()
            .map(|p| (p.1 - intercept - slope * p.0).powi(2))
            .sum::<f64>()
            / n)
            .sqrt();
        SlopeFit::Fitted {
            slope,
            intercept,
            rms,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticsRow {
    pub n: usize,
    /// `|Φ_{n+1}[F] - F(c)|`
    pub phi_error: f64,
    /// `max_x |J_{n+1}[F](x) + (F(x) - F(c)) / ((x - c) n (a + b))|` over the probes.
    pub j_error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureCheck {
    pub n: usize,
    pub x: Complex64,
    pub polynomial: Complex64,
    pub integral: Complex64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticsReport {
    pub rows: Vec<AsymptoticsRow>,
    pub phi_fit: SlopeFit,
    pub j_fit: SlopeFit,
    pub quadrature: Vec<QuadratureCheck>,
}

/// Measures how fast `Φ_{n+1}[F] → F(c)` (expected `1/n`) and how fast `J_{n+1}[F]`
/// approaches its leading term `-(F(x)-F(c)) / ((x-c) n (a+b))` (expected
/// remainder `1/n²`), with `p = n a`, `q = n b` and `F` centered at `c`.
///
/// For small `n`, `J` is also evaluated from its integral representation along
/// the segment `[-1, x]` and reported next to the polynomial value.
pub fn phi_j_asymptotics(
    f: &XPoly,
    a: Complex64,
    b: Complex64,
    ns: &[usize],
    x_probes: &[Complex64],
) -> Result<AsymptoticsReport> {
    if ns.len() < 2 || ns.iter().any(|&n| n == 0) {
        return Err(Error::invalid("n", "need at least two positive orders"));
    }
    let c = f.center();
    let f_c = f.coeff(0);
    // (F(x) - F(c)) / (x - c)
    let quotient = XPoly::from_centered(c, f.coeffs().iter().skip(1).copied().collect());
    let mut rows = Vec::with_capacity(ns.len());
    let mut quadrature = Vec::new();
    for &n in ns {
        let w = WeightParams::of_order(n + 1, a, b);
        let phi_error = (phi_functional(&w, f)? - f_c).norm();
        let sol = j_operator(&w, f)?;
        let lead = quotient.scale(-1.0 / ((a + b) * n as f64));
        let j_error = x_probes
            .iter()
            .map(|&x| (sol.h.eval(x) - lead.eval(x)).norm())
            .fold(0.0, f64::max);
        rows.push(AsymptoticsRow {
            n,
            phi_error,
            j_error,
        });
        if n <= QUADRATURE_MAX_N {
            for &x in x_probes {
                if let Some(integral) = j_by_integral(&w, f, sol.phi, x) {
                    quadrature.push(QuadratureCheck {
                        n,
                        x,
                        polynomial: sol.h.eval(x),
                        integral,
                    });
                }
            }
        }
    }
    let xs: Vec<f64> = ns.iter().map(|&n| n as f64).collect();
    let phi_fit = SlopeFit::fit(&xs, &rows.iter().map(|r| r.phi_error).collect::<Vec<_>>());
    let j_fit = SlopeFit::fit(&xs, &rows.iter().map(|r| r.j_error).collect::<Vec<_>>());
    Ok(AsymptoticsReport {
        rows,
        phi_fit,
        j_fit,
        quadrature,
    })
}

/// `(1-x)^{-p} (1+x)^{-q} ∫_{-1}^{x} (1-t)^{p-1} (1+t)^{q-1} (F(t) - Φ) dt` along
/// the straight segment, by double-exponential quadrature. With
/// `t = -1 + (1+x) τ` the factor `(1+x)^q` cancels and the integrand is
/// `(1-t)^{p-1} τ^{q-1} G(t)`. `None` for `x` on the rays beyond `±1`.
fn j_by_integral(w: &WeightParams, f: &XPoly, phi: Complex64, x: Complex64) -> Option<Complex64> {
    let on_cut = x.im.abs() < 1e-12 && (x.re >= 1.0 || x.re <= -1.0);
    if on_cut {
        return None;
    }
    let g = |tau: f64| -> Complex64 {
        let t = -1.0 + (1.0 + x) * tau;
        (1.0 - t).powc(w.p - 1.0) * Complex64::new(tau, 0.0).powc(w.q - 1.0) * (f.eval(t) - phi)
    };
    let re = quadrature::double_exponential::integrate(|tau| g(tau).re, 0.0, 1.0, 1e-13).integral;
    let im = quadrature::double_exponential::integrate(|tau| g(tau).im, 0.0, 1.0, 1e-13).integral;
    Some((1.0 - x).powc(-w.p) * Complex64::new(re, im))
}
