//! Dormand–Prince 5(4) with complex state, integrating `du/dx = F(x, u)` along
//! straight segments `x(s) = a + s (b - a)`, `s ∈ [0, 1]`.

use num_complex::Complex64;

use super::path::PathSpec;
use crate::error::{Error, Result};

const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
/// Fifth-order weights minus the embedded fourth-order ones.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

const MIN_STEP: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntegratorOptions {
    /// Local error tolerance, used as both absolute and relative.
    pub tol: f64,
    /// Abort when `max_i |u_i|` reaches this.
    pub bound: Option<f64>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct IntegratorStats {
    pub accepted: usize,
    pub rejected: usize,
}

fn axpy(y: &[Complex64], terms: &[(f64, &[Complex64])], h: Complex64) -> Vec<Complex64> {
    let mut out = y.to_vec();
    for (coef, k) in terms {
        if *coef != 0.0 {
            for (o, ki) in out.iter_mut().zip(k.iter()) {
                *o += h * *coef * ki;
            }
        }
    }
    out
}

fn max_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn segment<F>(
    rhs: &F,
    a: Complex64,
    b: Complex64,
    y0: Vec<Complex64>,
    opts: &IntegratorOptions,
    stats: &mut IntegratorStats,
) -> Result<Vec<Complex64>>
where
    F: Fn(Complex64, &[Complex64]) -> Vec<Complex64>,
{
    let dx = b - a;
    let mut y = y0;
    let mut s = 0.0f64;
    let mut h = 0.02f64;
    let mut k1 = rhs(a, &y);
    while s < 1.0 {
        h = h.min(1.0 - s);
        let hx = dx * h;
        let mut k: Vec<Vec<Complex64>> = Vec::with_capacity(7);
        k.push(k1.clone());
        for stage in 1..7 {
            let terms: Vec<(f64, &[Complex64])> = (0..stage).map(|i| (A[stage][i], k[i].as_slice())).collect();
            let ys = axpy(&y, &terms, hx);
            k.push(rhs(a + dx * (s + C[stage] * h), &ys));
        }
        let terms: Vec<(f64, &[Complex64])> = (0..6).map(|i| (A[6][i], k[i].as_slice())).collect();
        let y_new = axpy(&y, &terms, hx);
        let err_terms: Vec<(f64, &[Complex64])> = (0..7).map(|i| (E[i], k[i].as_slice())).collect();
        let err_vec = axpy(&vec![Complex64::new(0.0, 0.0); y.len()], &err_terms, hx);
        let err = err_vec
            .iter()
            .zip(y.iter().zip(&y_new))
            .map(|(e, (u, v))| e.norm() / (opts.tol * (1.0 + u.norm().max(v.norm()))))
            .fold(0.0, f64::max);
        if err <= 1.0 {
            s += h;
            y = y_new;
            k1 = k.swap_remove(6);
            stats.accepted += 1;
            if let Some(bound) = opts.bound {
                if max_norm(&y) >= bound {
                    return Err(Error::LeftPolydisk {
                        x: a + dx * s,
                        radius: bound,
                    });
                }
            }
        } else {
            stats.rejected += 1;
        }
        let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
        h *= factor;
        if h < MIN_STEP && s < 1.0 {
            return Err(Error::StepUnderflow {
                x: a + dx * s,
                step: h * dx.norm(),
            });
        }
    }
    Ok(y)
}

/// Integrates `du/dx = rhs(x, u)` from the start of `path` to its end.
pub fn integrate_path<F>(rhs: F, path: &PathSpec, u0: &[Complex64], opts: &IntegratorOptions) -> Result<(Vec<Complex64>, IntegratorStats)>
where
    F: Fn(Complex64, &[Complex64]) -> Vec<Complex64>,
{
    let mut stats = IntegratorStats::default();
    let mut y = u0.to_vec();
    for (a, b) in path.segments() {
        y = segment(&rhs, a, b, y, opts, &mut stats)?;
    }
    Ok((y, stats))
}
