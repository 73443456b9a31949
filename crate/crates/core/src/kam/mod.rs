//! The quadratically convergent iteration.
//!
//! Step `k` solves the homological equation for the current remainder
//! `f^{[k]}`, giving `Φ^{[k]}` and `H^{[k]} = w + h^{[k]}`, then pulls the
//! system back along `H^{[k]}` to get `f^{[k+1]}`, whose zero at `w = 0` has
//! order `2p - 1` when that of `f^{[k]}` is `p`. The composed maps
//! `H_k = H^{[1]} ∘ … ∘ H^{[k]}` and the pushed-forward corrections
//! `Ψ^{[k]} = Σ_i dH_{i-1}(K_{i-1}) Φ^{[i]}(K_{i-1})`, `K_i = H_i^{-1}`, agree
//! with the direct recursion on the orders the remainder no longer reaches.

mod norms;
mod schedule;
mod step;

pub use norms::{
    cauchy_check, sampled_jacobian_norm, sampled_norm, CauchyCheck, NormGrid, Polydisk, SampledNorm,
};
pub use schedule::{build_schedule, eta, ConditionFlag, Schedule, ScheduleParams};
pub use step::{homological_step, solve_homological, StepNorms, StepResult};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{jacobian_apply, scalar_compose, series_compose, series_invert, WSeries};
use crate::beta_ops::SlopeFit;
use crate::direct::NormalForm;
use crate::error::Result;
use crate::problem::ProblemSpec;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KamConfig {
    pub delta1: f64,
    pub beta: f64,
    pub nu: f64,
    pub kmax: usize,
    pub c2: f64,
    pub c4: f64,
    /// Defaults to the problem's `ρ`.
    pub rho1: Option<f64>,
    /// Defaults to the problem's `R`.
    pub radius1: Option<f64>,
    /// Halve `R_1` until `‖f‖⁰ <= δ_1^ν` (at most 64 times).
    pub shrink_to_gate: bool,
    /// Skip the sampled norms (they dominate the cost for small problems).
    pub measure: bool,
    pub grid: NormGrid,
}

impl Default for KamConfig {
    fn default() -> Self {
        KamConfig {
            delta1: 0.1,
            beta: 6.0,
            nu: 6.0,
            kmax: 4,
            c2: 1.0,
            c4: 1.0,
            rho1: None,
            radius1: None,
            shrink_to_gate: true,
            measure: true,
            grid: NormGrid::default(),
        }
    }
}

/// The size condition `‖f‖⁰ <= δ_1^ν` on the first polydisk.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct InitialGate {
    pub norm: f64,
    pub threshold: f64,
    pub holds: bool,
    pub halvings: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepLog {
    pub k: usize,
    pub delta: f64,
    pub rho: f64,
    pub radius: f64,
    pub zero_order_f: Option<usize>,
    pub zero_order_next: Option<usize>,
    /// `2^{k-1} + 1`.
    pub zero_order_bound: usize,
    pub max_residual: f64,
    pub norms: Option<StepNorms>,
    /// `‖f^{[k]}‖⁰ <= δ_k^ν` and `<= δ_k^β`; logged, not enforced.
    pub gate_nu: Option<bool>,
    pub gate_beta: Option<bool>,
    pub cauchy: Option<CauchyCheck>,
    /// `‖H_k - H_{k-1}‖⁰` on the limit polydisk.
    pub map_increment: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct KamRun {
    pub schedule: Schedule,
    pub gate: InitialGate,
    pub steps: Vec<StepLog>,
    /// `H_k` for `k = 1..`.
    pub maps: Vec<WSeries>,
    /// `Ψ^{[k]}` for `k = 1..`, in the problem's sign convention.
    pub psi: Vec<WSeries>,
    /// The remainder vanished through the truncation order.
    pub converged: bool,
}

/// Builds the schedule for `p`, halving `R_1` if requested until the initial
/// size condition holds.
pub fn plan_schedule(p: &ProblemSpec, cfg: &KamConfig) -> Result<(Schedule, InitialGate)> {
    let rho1 = cfg.rho1.unwrap_or(p.domain.rho);
    let mut radius1 = cfg.radius1.unwrap_or(p.domain.radius);
    let threshold = cfg.delta1.powf(cfg.nu);
    let f = p.effective_f();
    let mut halvings = 0;
    let norm_at = |r: f64| {
        let disk = Polydisk {
            c: p.center(),
            rho: rho1,
            radius: r,
        };
        sampled_norm(&f, &disk, &cfg.grid).weighted
    };
    let mut norm = norm_at(radius1);
    while cfg.shrink_to_gate && norm > threshold && halvings < 64 {
        radius1 *= 0.5;
        halvings += 1;
        norm = norm_at(radius1);
    }
    let schedule = build_schedule(ScheduleParams {
        delta1: cfg.delta1,
        rho1,
        radius1,
        beta: cfg.beta,
        nu: cfg.nu,
        kmax: cfg.kmax,
        c2: cfg.c2,
        c4: cfg.c4,
        rho_min: p.domain.rho_min,
    })?;
    Ok((
        schedule,
        InitialGate {
            norm,
            threshold,
            holds: norm <= threshold,
            halvings,
        },
    ))
}

/// `dH(K(u)) · Φ(K(u))`.
fn pushforward(map: &WSeries, inverse: &WSeries, field: &WSeries) -> Result<WSeries> {
    let shift = inverse.split_identity()?;
    let moved = series_compose(field, &shift)?;
    let jac = map
        .jacobian()
        .iter()
        .map(|row| row.iter().map(|e| scalar_compose(e, &shift)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    jacobian_apply(&jac, &moved)
}

pub fn run_kam(p: &ProblemSpec, schedule: &Schedule, gate: InitialGate, cfg: &KamConfig) -> Result<KamRun> {
    schedule.require_valid()?;
    p.assumptions()?.gate(p.scan.require_diophantine)?;
    let (d, order, c) = (p.dim(), p.order(), p.center());
    let sigma = Complex64::new(p.convention.sign(), 0.0);
    let (rho_inf, radius_inf) = schedule.limit_radii();
    let limit_disk = Polydisk {
        c,
        rho: rho_inf,
        radius: radius_inf,
    };

    let mut f = p.effective_f();
    let mut g = WSeries::zero(d, order, c);
    let mut map = WSeries::identity(d, order, c);
    let mut inverse = map.clone();
    let mut psi_eff = WSeries::zero(d, order, c);
    let mut steps = Vec::new();
    let mut maps = Vec::new();
    let mut psi = Vec::new();
    let mut converged = false;

    for k in 1..=schedule.delta.len() {
        let delta = schedule.delta[k - 1];
        let disk = Polydisk {
            c,
            rho: schedule.rho[k - 1],
            radius: schedule.radius[k - 1],
        };
        let step = homological_step(&f, &p.eigen, &p.tolerances.j)?;

        let field = step.phi.to_wseries(c).with_order(order);
        let push = if k == 1 { field } else { pushforward(&map, &inverse, &field)? };
        psi_eff = psi_eff.add(&push)?;

        let g_next = series_compose(&g, &step.h)?.add(&step.h)?;
        let increment = g_next.sub(&g)?;
        g = g_next;
        map = g.plus_identity();
        inverse = series_invert(&map)?;

        let (norms, gate_nu, gate_beta, cauchy, map_increment) = if cfg.measure {
            let norms = step.measure(&f, &disk, delta, &cfg.grid);
            (
                Some(norms),
                Some(norms.f.weighted <= delta.powf(schedule.params.nu)),
                Some(norms.f.weighted <= delta.powf(schedule.params.beta)),
                Some(cauchy_check(&step.h, &disk, delta, &cfg.grid)),
                Some(sampled_norm(&increment, &limit_disk, &cfg.grid).weighted),
            )
        } else {
            (None, None, None, None, None)
        };
        steps.push(StepLog {
            k,
            delta,
            rho: disk.rho,
            radius: disk.radius,
            zero_order_f: step.zero_order_f,
            zero_order_next: step.zero_order_next,
            zero_order_bound: (1usize << (k - 1).min(60)) + 1,
            max_residual: step.max_residual,
            norms,
            gate_nu,
            gate_beta,
            cauchy,
            map_increment,
        });
        maps.push(map.clone());
        psi.push(psi_eff.scale(sigma));
        f = step.fnext;
        if f.is_zero() {
            converged = true;
            break;
        }
    }
    Ok(KamRun {
        schedule: schedule.clone(),
        gate,
        steps,
        maps,
        psi,
        converged,
    })
}

/// Agreement between step `k` of the iteration and the direct recursion on
/// the orders `<= min(N, 2^{k-1} + 1)`.
///
/// When `h^{[1]}` depends on `x`, pushing later corrections through `K_{k-1}`
/// leaves `x`-dependent terms in `Ψ^{[k]}` from about order 4 on. The
/// iteration then linearizes `f - Ψ^{[k]}` rather than `f - φ`, and the two
/// agree only up to the last order where `Ψ^{[k]}` is constant in `x`. The
/// `_x_free` fields compare on those orders.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub k: usize,
    pub order_limit: usize,
    /// `max |Ψ^{[k]}_m - φ_m| / max(1, max |φ_m|)`, over all `x`-coefficients.
    pub psi_delta: f64,
    /// The same for `H_k` against `w + h`.
    pub map_delta: f64,
    /// Highest order `<= order_limit` through which `Ψ^{[k]}` is constant in `x`.
    pub x_free_limit: usize,
    pub psi_delta_x_free: f64,
    pub map_delta_x_free: f64,
}

/// Relative size below which an `x`-dependent coefficient counts as zero.
const X_FREE_TOL: f64 = 1e-10;

fn max_coeff(s: &WSeries, keep: impl Fn(usize) -> bool) -> f64 {
    s.components()
        .iter()
        .flat_map(|c| c.terms().filter(|(m, _)| keep(m.degree())).map(|(_, p)| p.max_abs_coeff()).collect::<Vec<_>>())
        .fold(0.0, f64::max)
}

fn relative_gap(a: &WSeries, b: &WSeries, limit: usize) -> Result<f64> {
    let scale = max_coeff(b, |n| n <= limit).max(1.0);
    Ok(max_coeff(&a.sub(b)?, |n| n <= limit) / scale)
}

/// Highest `n <= limit` such that every coefficient of `psi` of order `<= n`
/// is constant in `x`.
fn x_free_through(psi: &WSeries, limit: usize, scale: f64) -> usize {
    let mut worst = vec![0.0f64; psi.order() + 1];
    for comp in psi.components() {
        for (m, p) in comp.terms() {
            let varying = p.coeffs().iter().skip(1).map(|z| z.norm()).fold(0.0, f64::max);
            worst[m.degree()] = worst[m.degree()].max(varying);
        }
    }
    (2..=limit).take_while(|&n| worst[n] <= X_FREE_TOL * scale).last().unwrap_or(1)
}

pub fn cross_validate(run: &KamRun, nf: &NormalForm) -> Result<Vec<CrossCheck>> {
    let h = nf.map();
    let (order, c) = (h.order(), h.center());
    let phi = nf.phi.to_wseries(c).with_order(order);
    let scale = max_coeff(&phi, |_| true).max(1.0);
    run.maps
        .iter()
        .zip(&run.psi)
        .enumerate()
        .map(|(i, (map, psi))| {
            let k = i + 1;
            let limit = order.min((1usize << (k - 1).min(60)) + 1);
            let (psi, map) = (psi.recenter(c), map.recenter(c));
            let free = x_free_through(&psi, limit, scale);
            Ok(CrossCheck {
                k,
                order_limit: limit,
                psi_delta: relative_gap(&psi, &phi, limit)?,
                map_delta: relative_gap(&map, &h, limit)?,
                x_free_limit: free,
                psi_delta_x_free: relative_gap(&psi, &phi, free)?,
                map_delta_x_free: relative_gap(&map, &h, free)?,
            })
        })
        .collect()
}

/// For each step, the largest coefficient of order `<= min(N, 2^k)` of the
/// residual of `H_k` as a linearization of `u' = Mu + σ(f - Ψ^{[k]})/(1-x²)`,
/// relative to `max(1, max |f_m|)`. The remainder left by `H_k` starts at
/// order `2^k + 1`, so this is round-off.
pub fn corrected_conjugacy_gap(p: &ProblemSpec, run: &KamRun) -> Result<Vec<f64>> {
    let (order, c) = (p.order(), p.center());
    let scale = max_coeff(&p.f, |_| true).max(1.0);
    run.maps
        .iter()
        .zip(&run.psi)
        .enumerate()
        .map(|(i, (map, psi))| {
            let limit = order.min(1usize << (i + 1).min(60));
            let g = p.f.sub(&psi.recenter(c))?;
            let r = crate::direct::linearization_residual(p, &g, &map.recenter(c).split_identity()?)?;
            Ok(max_coeff(&r, |n| n <= limit) / scale)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundRow {
    pub delta: f64,
    /// `‖f‖` and `‖f‖⁰` on the full polydisk.
    pub f: SampledNorm,
    /// `‖h‖` on the shrunken polydisk.
    pub h: f64,
    pub dh: f64,
    pub fnext_weighted: f64,
    /// `‖fnext‖⁰ / (δ^{-6} (‖f‖⁰)²)`.
    pub quadratic_ratio: f64,
}

/// Measured surrogates for the step estimates over a sweep of losses `δ`:
/// `‖h‖_δ / ‖f‖` should grow no faster than `δ^{-2}`, and `‖fnext‖⁰` should
/// stay within a constant of `δ^{-6} (‖f‖⁰)²`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundFits {
    pub rows: Vec<BoundRow>,
    /// Slope of `log(‖h‖_δ / ‖f‖)` against `log δ`.
    pub h_slope: SlopeFit,
    pub h_slope_ok: bool,
    pub max_quadratic_ratio: f64,
}

pub fn bound_fits(p: &ProblemSpec, disk: &Polydisk, deltas: &[f64], grid: &NormGrid) -> Result<BoundFits> {
    let f = p.effective_f();
    let step = homological_step(&f, &p.eigen, &p.tolerances.j)?;
    let rows: Vec<BoundRow> = deltas
        .iter()
        .map(|&delta| {
            let norms = step.measure(&f, disk, delta, grid);
            let denom = delta.powi(-6) * norms.f.weighted * norms.f.weighted;
            BoundRow {
                delta,
                f: norms.f,
                h: norms.h.sup,
                dh: norms.dh,
                fnext_weighted: norms.fnext.weighted,
                quadratic_ratio: if denom > 0.0 { norms.fnext.weighted / denom } else { 0.0 },
            }
        })
        .collect();
    let usable: Vec<&BoundRow> = rows.iter().filter(|r| r.f.sup > 0.0 && r.h > 0.0).collect();
    let xs: Vec<f64> = usable.iter().map(|r| r.delta).collect();
    let ys: Vec<f64> = usable.iter().map(|r| r.h / r.f.sup).collect();
    let h_slope = if usable.len() >= 2 { SlopeFit::fit(&xs, &ys) } else { SlopeFit::ExactlySatisfied };
    let h_slope_ok = h_slope.slope().is_none_or(|s| s >= -2.0);
    let max_quadratic_ratio = rows.iter().map(|r| r.quadratic_ratio).fold(0.0, f64::max);
    Ok(BoundFits {
        rows,
        h_slope,
        h_slope_ok,
        max_quadratic_ratio,
    })
}
