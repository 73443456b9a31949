use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{PointSeries, WSeries};
use crate::beta_ops::AsymptoticsReport;
use crate::direct::OrderAudit;
use crate::kam::{BoundFits, CrossCheck, InitialGate, Schedule, StepLog};
use crate::problem::{Convention, ProblemSpec, Tolerances};
use crate::spectra::{AssumptionReport, SaddleGeometry};
use crate::verify::{ConjugacyReport, MonodromyReport};

pub const REPORT_SCHEMA: &str = "fnf-report/1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProblemSummary {
    pub dimension: usize,
    pub order: usize,
    pub convention: Convention,
    pub a: Vec<Complex64>,
    pub b: Vec<Complex64>,
    pub center: Complex64,
    pub rho: f64,
    pub radius: f64,
    pub rho_min: f64,
}

impl ProblemSummary {
    pub fn of(p: &ProblemSpec) -> Self {
        ProblemSummary {
            dimension: p.dim(),
            order: p.order(),
            convention: p.convention,
            a: p.eigen.a.clone(),
            b: p.eigen.b.clone(),
            center: p.center(),
            rho: p.domain.rho,
            radius: p.domain.radius,
            rho_min: p.domain.rho_min,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhiEntry {
    pub multi_index: Vec<u32>,
    pub component: usize,
    pub value: Complex64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HEntry {
    pub multi_index: Vec<u32>,
    pub component: usize,
    /// Powers of `x - c`.
    pub centered: Vec<Complex64>,
    /// Powers of `x`.
    pub monomial: Vec<Complex64>,
}

/// Every `(m, j)` with `2 <= |m| <= order`, zeros included, in graded order.
pub fn phi_table(phi: &PointSeries) -> Vec<PhiEntry> {
    let mut out = Vec::new();
    for n in 2..=phi.order() {
        for m in crate::algebra::MultiIndex::of_degree(phi.dim(), n) {
            for j in 0..phi.dim() {
                out.push(PhiEntry {
                    multi_index: m.entries().to_vec(),
                    component: j,
                    value: phi.get(&m, j),
                });
            }
        }
    }
    out
}

pub fn h_table(h: &WSeries) -> Vec<HEntry> {
    let mut out = Vec::new();
    for n in 2..=h.order() {
        for m in crate::algebra::MultiIndex::of_degree(h.dim(), n) {
            for j in 0..h.dim() {
                let poly = h.coeff(&m, j);
                out.push(HEntry {
                    multi_index: m.entries().to_vec(),
                    component: j,
                    centered: poly.coeffs().to_vec(),
                    monomial: poly.to_monomial(),
                });
            }
        }
    }
    out
}

/// One pass/fail judgement: `value` compared against `tolerance`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    /// How `value` is compared: `"<="`, `">="` or `"within"` (`|value| <= tolerance`
    /// after subtracting the target given in the name).
    pub relation: String,
    pub passed: bool,
}

impl Check {
    pub fn at_most(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Check {
            name: name.into(),
            value,
            tolerance,
            relation: "<=".into(),
            passed: value <= tolerance,
        }
    }

    pub fn at_least(name: impl Into<String>, value: f64, bound: f64) -> Self {
        Check {
            name: name.into(),
            value,
            tolerance: bound,
            relation: ">=".into(),
            passed: value >= bound,
        }
    }

    pub fn within(name: impl Into<String>, value: f64, target: f64, tolerance: f64) -> Self {
        Check {
            name: format!("{} (target {target})", name.into()),
            value,
            tolerance,
            relation: "within".into(),
            passed: (value - target).abs() <= tolerance,
        }
    }

    pub fn flag(name: impl Into<String>, holds: bool) -> Self {
        Check {
            name: name.into(),
            value: if holds { 1.0 } else { 0.0 },
            tolerance: 1.0,
            relation: ">=".into(),
            passed: holds,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinearizeSection {
    pub phi: Vec<PhiEntry>,
    pub h: Vec<HEntry>,
    pub audit: Vec<OrderAudit>,
    /// Largest coefficient of the truncated conjugacy equation residual.
    pub formal_residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KamSection {
    pub schedule: Schedule,
    pub gate: InitialGate,
    pub steps: Vec<StepLog>,
    pub converged: bool,
    pub cross_validation: Vec<CrossCheck>,
    /// Per step, from `corrected_conjugacy_gap`.
    pub corrected_gap: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentAsymptotics {
    pub component: usize,
    pub report: AsymptoticsReport,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticsSection {
    pub asymptotics: Vec<ComponentAsymptotics>,
    pub bound_fits: BoundFits,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: String,
    pub subcommand: String,
    pub problem: ProblemSummary,
    pub tolerances: Tolerances,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub assumptions: Option<AssumptionReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub geometry: Option<SaddleGeometry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub linearize: Option<LinearizeSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kam: Option<KamSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conjugacy: Option<ConjugacyReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monodromy: Option<MonodromyReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagnostics: Option<DiagnosticsSection>,
    pub checks: Vec<Check>,
    /// Set when the run stopped early; the sections above are what completed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl RunReport {
    pub fn new(subcommand: &str, p: &ProblemSpec) -> Self {
        RunReport {
            schema: REPORT_SCHEMA.into(),
            subcommand: subcommand.into(),
            problem: ProblemSummary::of(p),
            tolerances: p.tolerances,
            assumptions: None,
            geometry: None,
            linearize: None,
            kam: None,
            conjugacy: None,
            monodromy: None,
            diagnostics: None,
            checks: Vec::new(),
            error: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}
