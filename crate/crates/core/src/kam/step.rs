use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::norms::{sampled_jacobian_norm, sampled_norm, NormGrid, Polydisk, SampledNorm};
use crate::algebra::{jacobian_apply, series_compose, MultiIndex, PointSeries, WSeries, XPoly};
use crate::beta_ops::{j_operator_with, JTolerances, WeightParams};
use crate::error::Result;
use crate::spectra::EigenData;

/// Norms measured for one step: `f` on the step's polydisk, `h` and `d_w h`
/// on the disk shrunk by `δ`, and the remainder on the next step's polydisk.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct StepNorms {
    pub f: SampledNorm,
    pub h: SampledNorm,
    pub dh: f64,
    pub fnext: SampledNorm,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StepResult {
    pub phi: PointSeries,
    pub h: WSeries,
    pub fnext: WSeries,
    pub zero_order_f: Option<usize>,
    pub zero_order_next: Option<usize>,
    pub max_residual: f64,
}

/// `Φ[f]` and `h` with `(1-x²)(∂_x h + d_w h · M w - M h) = f - Φ[f]`, solved
/// coefficient by coefficient.
pub fn solve_homological(f: &WSeries, eigen: &EigenData, tol: &JTolerances) -> Result<(PointSeries, WSeries, f64)> {
    let (d, order, c) = (f.dim(), f.order(), f.center());
    let items: Vec<(MultiIndex, usize, XPoly)> = f
        .terms()
        .into_iter()
        .flat_map(|(m, v)| v.into_iter().enumerate().map(move |(j, p)| (m.clone(), j, p)))
        .filter(|(_, _, p)| !p.is_zero())
        .collect();
    let solved = items
        .par_iter()
        .map(|(m, j, p)| {
            let w = WeightParams::for_term(eigen, m, *j);
            j_operator_with(&w, p, tol).map(|s| (m.clone(), *j, s))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut phi = PointSeries::zero(d, order);
    let mut h = WSeries::zero(d, order, c);
    let mut max_residual = 0.0f64;
    for (m, j, s) in solved {
        phi.set(m.clone(), j, s.phi);
        h.set_term(m, j, s.h);
        max_residual = max_residual.max(s.residual);
    }
    Ok((phi, h, max_residual))
}

/// `(I + d_w h)^{-1} v` by the Neumann iteration `g ← v - d_w h · g`; each
/// sweep fixes one more order since `d_w h` vanishes at `w = 0`.
fn solve_near_identity(h: &WSeries, v: &WSeries) -> Result<WSeries> {
    let jac = h.jacobian();
    let mut g = v.clone();
    let lo = v.min_order().unwrap_or(v.order());
    for _ in lo..v.order() {
        g = v.sub(&jacobian_apply(&jac, &g)?)?;
    }
    Ok(g)
}

/// One step of the iteration: solves the homological equation for `f` and
/// returns the new remainder
/// `(I + d_w h)^{-1} [f(w+h) - f(w) - Φ(w+h) + Φ(w)]`.
pub fn homological_step(f: &WSeries, eigen: &EigenData, tol: &JTolerances) -> Result<StepResult> {
    let (phi, h, max_residual) = solve_homological(f, eigen, tol)?;
    let g = f.sub(&phi.to_wseries(f.center()).with_order(f.order()))?;
    let diff = series_compose(&g, &h)?.sub(&g)?;
    let fnext = solve_near_identity(&h, &diff)?;
    Ok(StepResult {
        zero_order_f: f.min_order(),
        zero_order_next: fnext.min_order(),
        phi,
        h,
        fnext,
        max_residual,
    })
}

impl StepResult {
    pub fn measure(&self, f: &WSeries, disk: &Polydisk, delta: f64, grid: &NormGrid) -> StepNorms {
        let inner = disk.shrink(delta);
        StepNorms {
            f: sampled_norm(f, disk, grid),
            h: sampled_norm(&self.h, &inner, grid),
            dh: sampled_jacobian_norm(&self.h, &inner, grid),
            fnext: sampled_norm(&self.fnext, &inner, grid),
        }
    }
}
