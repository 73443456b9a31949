//! Sampled sup-norms on polydisks `|x - c| < ρ`, `max_i |w_i| < R`.
//!
//! Every value is a maximum over a finite grid and so a lower bound for the
//! true supremum. `x` is sampled on the boundary circle only, where the
//! maximum modulus principle puts the supremum for fixed `w`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{FrozenSeries, WSeries};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Polydisk {
    pub c: Complex64,
    pub rho: f64,
    pub radius: f64,
}

impl Polydisk {
    /// `Δ_{ρ e^{-δ}, R e^{-δ}}`.
    pub fn shrink(&self, delta: f64) -> Polydisk {
        let s = (-delta).exp();
        Polydisk {
            c: self.c,
            rho: self.rho * s,
            radius: self.radius * s,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormGrid {
    pub x_points: usize,
    pub directions: usize,
    pub radii: usize,
}

impl Default for NormGrid {
    fn default() -> Self {
        NormGrid {
            x_points: 64,
            directions: 32,
            radii: 16,
        }
    }
}

/// `‖F‖ = sup |F|` and `‖F‖⁰ = sup |F| / |w|`, with `|·|` the max-norm.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SampledNorm {
    pub sup: f64,
    pub weighted: f64,
}

impl NormGrid {
    fn x_samples(&self, disk: &Polydisk) -> Vec<Complex64> {
        (0..self.x_points)
            .map(|i| disk.c + Complex64::from_polar(disk.rho, TAU * i as f64 / self.x_points as f64))
            .collect()
    }

    /// Unit vectors in the max-norm: one coordinate of modulus one, the others
    /// with moduli and phases from additive recurrences.
    fn directions(&self, dim: usize) -> Vec<Vec<Complex64>> {
        const PHASE: [f64; 4] = [0.0, 0.618_033_988_749_895, 0.414_213_562_373_095, 0.732_050_807_568_877];
        (0..self.directions)
            .map(|k| {
                let lead = k % dim;
                (0..dim)
                    .map(|i| {
                        let theta = TAU * (k as f64 / self.directions as f64 + PHASE[i % 4] * (k / dim) as f64);
                        let modulus = if i == lead {
                            1.0
                        } else {
                            0.25 + 0.75 * ((k as f64 + 1.0) * 0.754_877_666_246_693 * (i + 1) as f64).fract()
                        };
                        Complex64::from_polar(modulus, theta)
                    })
                    .collect()
            })
            .collect()
    }

    fn radii(&self, radius: f64) -> Vec<f64> {
        (1..=self.radii).map(|l| radius * l as f64 / self.radii as f64).collect()
    }

    fn points(&self, disk: &Polydisk, dim: usize) -> Vec<(f64, Vec<Complex64>)> {
        let dirs = self.directions(dim);
        self.radii(disk.radius)
            .into_iter()
            .flat_map(|r| dirs.iter().map(move |v| (r, v.iter().map(|z| z * r).collect())))
            .collect()
    }
}

fn max_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn sampled_norm(f: &WSeries, disk: &Polydisk, grid: &NormGrid) -> SampledNorm {
    if f.is_zero() {
        return SampledNorm::default();
    }
    let points = grid.points(disk, f.dim());
    grid.x_samples(disk)
        .par_iter()
        .map(|&x| {
            let frozen = FrozenSeries::new(f, x);
            points.iter().fold(SampledNorm::default(), |acc, (r, w)| {
                let v = max_norm(&frozen.eval(w));
                SampledNorm {
                    sup: acc.sup.max(v),
                    weighted: acc.weighted.max(v / r),
                }
            })
        })
        .reduce(SampledNorm::default, |a, b| SampledNorm {
            sup: a.sup.max(b.sup),
            weighted: a.weighted.max(b.weighted),
        })
}

/// Sampled sup of the max-row-sum norm of `d_w h`.
pub fn sampled_jacobian_norm(h: &WSeries, disk: &Polydisk, grid: &NormGrid) -> f64 {
    if h.is_zero() {
        return 0.0;
    }
    let dim = h.dim();
    let jac = h.jacobian();
    let rows: Vec<WSeries> = jac
        .into_iter()
        .map(|row| WSeries::from_components(row).expect("jacobian row shares header"))
        .collect();
    let points = grid.points(disk, dim);
    grid.x_samples(disk)
        .par_iter()
        .map(|&x| {
            let frozen: Vec<FrozenSeries> = rows.iter().map(|r| FrozenSeries::new(r, x)).collect();
            points
                .iter()
                .map(|(_, w)| {
                    frozen
                        .iter()
                        .map(|r| r.eval(w).iter().map(|z| z.norm()).sum::<f64>())
                        .fold(0.0, f64::max)
                })
                .fold(0.0, f64::max)
        })
        .reduce(|| 0.0, f64::max)
}

/// Sampled `‖∂_x F‖` on the shrunken disk against the Cauchy bound
/// `2/(ρδ) ‖F‖` on the full one. Both sides are sampled, so this is a sanity
/// check rather than a proof.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CauchyCheck {
    pub derivative: f64,
    pub bound: f64,
    pub holds: bool,
}

pub fn cauchy_check(f: &WSeries, disk: &Polydisk, delta: f64, grid: &NormGrid) -> CauchyCheck {
    let derivative = sampled_norm(&f.x_derivative(), &disk.shrink(delta), grid).sup;
    let bound = 2.0 / (disk.rho * delta) * sampled_norm(f, disk, grid).sup;
    CauchyCheck {
        derivative,
        bound,
        holds: derivative <= bound * (1.0 + 1e-12),
    }
}
