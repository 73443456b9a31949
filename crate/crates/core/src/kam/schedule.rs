use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Inputs of [`build_schedule`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScheduleParams {
    pub delta1: f64,
    pub rho1: f64,
    pub radius1: f64,
    pub beta: f64,
    pub nu: f64,
    pub kmax: usize,
    /// Caller's estimate of the constant in the `J` bound.
    pub c2: f64,
    /// Caller's estimate of the constant in the `d_w h` bound.
    pub c4: f64,
    pub rho_min: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionFlag {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

impl ConditionFlag {
    fn less(name: &str, lhs: f64, rhs: f64) -> Self {
        ConditionFlag {
            name: name.to_string(),
            lhs,
            rhs,
            holds: lhs < rhs,
        }
    }
}

/// Loss sequence `δ_{k+1} = δ_k^{3/2}` and the radii it shrinks.
///
/// Index `i` holds step `k = i + 1`; `rho` and `radius` carry one extra entry,
/// the radii after the last step.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    pub params: ScheduleParams,
    pub delta: Vec<f64>,
    pub rho: Vec<f64>,
    pub radius: Vec<f64>,
    /// `η` approximated by partial sums of `δ_k`, with a bound on the rest.
    pub eta: f64,
    pub eta_tail_bound: f64,
    pub conditions: Vec<ConditionFlag>,
    /// `β > 5` and `ν >= max(β, 6)`.
    pub exponents_ok: bool,
}

/// Terms of `η = Σ δ_k` summed explicitly; the tail after them is bounded by
/// `δ_{K+1} / (1 - √δ_{K+1})` since consecutive ratios are `√δ_k`.
const ETA_TERMS: usize = 8;

pub fn eta(delta1: f64) -> (f64, f64) {
    let mut d = delta1;
    let mut sum = 0.0;
    for _ in 0..ETA_TERMS {
        sum += d;
        d = d.powf(1.5);
    }
    (sum, d / (1.0 - d.sqrt()))
}

pub fn build_schedule(params: ScheduleParams) -> Result<Schedule> {
    let ScheduleParams {
        delta1,
        rho1,
        radius1,
        beta,
        nu,
        kmax,
        c2,
        c4,
        rho_min,
    } = params;
    if !(delta1 > 0.0 && delta1 < 0.5) {
        return Err(Error::invalid("schedule.delta1", format!("{delta1} not in (0, 1/2)")));
    }
    if !(rho1 > 0.0 && radius1 > 0.0 && rho_min > 0.0) {
        return Err(Error::invalid("schedule", "radii must be positive"));
    }
    if kmax == 0 {
        return Err(Error::invalid("schedule.kmax", "at least one step is needed"));
    }
    let mut delta = Vec::with_capacity(kmax);
    let mut rho = vec![rho1];
    let mut radius = vec![radius1];
    let mut d = delta1;
    for k in 0..kmax {
        delta.push(d);
        rho.push(rho[k] * (-d).exp());
        radius.push(radius[k] * (-d).exp());
        d = d.powf(1.5);
    }
    let (eta, eta_tail_bound) = eta(delta1);
    let conditions = vec![
        ConditionFlag::less("(i) rho1 exp(-eta) > rho_min", rho_min, rho1 * (-eta).exp()),
        ConditionFlag::less("(ii) exp(-delta1) + c2 delta1^4 < 1", (-delta1).exp() + c2 * delta1.powi(4), 1.0),
        ConditionFlag::less("(iii) c4 delta1 < 1", c4 * delta1, 1.0),
    ];
    Ok(Schedule {
        params,
        delta,
        rho,
        radius,
        eta,
        eta_tail_bound,
        conditions,
        exponents_ok: beta > 5.0 && nu >= beta.max(6.0),
    })
}

impl Schedule {
    pub fn is_valid(&self) -> bool {
        self.conditions.iter().all(|c| c.holds)
    }

    /// Names of the failing conditions.
    pub fn failures(&self) -> Vec<&str> {
        self.conditions
            .iter()
            .filter(|c| !c.holds)
            .map(|c| c.name.as_str())
            .collect()
    }

    /// `ρ_1 e^{-η}` and `R_1 e^{-η}`, the radii every step stays above.
    pub fn limit_radii(&self) -> (f64, f64) {
        let shrink = (-(self.eta + self.eta_tail_bound)).exp();
        (self.params.rho1 * shrink, self.params.radius1 * shrink)
    }

    pub fn require_valid(&self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(Error::Schedule(format!("failing conditions: {}", self.failures().join("; "))))
        }
    }
}
