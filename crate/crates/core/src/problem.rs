use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::WSeries;
use crate::beta_ops::JTolerances;
use crate::error::{Error, Result};
use crate::spectra::{check_assumptions, saddle_geometry, AssumptionReport, DomainParams, EigenData};

/// Which side the nonlinearity is divided by.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// `u' = M u + (f - φ)/(1 - x²)`.
    #[default]
    Homolog,
    /// `u' = M u + (f - φ)/(x² - 1)`.
    Perfuchs,
}

impl Convention {
    /// `+1` for [`Convention::Homolog`], `-1` otherwise: the factor that turns the
    /// problem into the `1 - x²` form.
    pub fn sign(self) -> f64 {
        match self {
            Convention::Homolog => 1.0,
            Convention::Perfuchs => -1.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    pub j: JTolerances,
    /// Post-correction obstruction integrals must be below this.
    pub obstruction: f64,
    /// Local error tolerance of the path integrator.
    pub integrator: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            j: JTolerances::default(),
            obstruction: 1e-10,
            integrator: 1e-12,
        }
    }
}

/// Parameters of the bounded assumption scans.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ScanConfig {
    pub dio_c: f64,
    pub dio_nu: f64,
    /// Defaults to the truncation order.
    pub degree_bound: Option<usize>,
    /// Defaults to the truncation order plus the `x`-degree of `f`.
    pub k_bound: Option<usize>,
    pub require_diophantine: bool,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            dio_c: 0.01,
            dio_nu: 2.0,
            degree_bound: None,
            k_bound: None,
            require_diophantine: false,
        }
    }
}

/// A nonlinear system `u' = M u + σ (f(x,u) - φ(u))/(1 - x²)` together with the
/// domain and numerical settings.
#[derive(Clone, Debug, PartialEq)]
pub struct ProblemSpec {
    pub eigen: EigenData,
    /// Nonlinearity, centered at `domain.c`, truncated at the problem order.
    pub f: WSeries,
    pub domain: DomainParams,
    pub convention: Convention,
    pub tolerances: Tolerances,
    pub scan: ScanConfig,
}

impl ProblemSpec {
    pub fn new(eigen: EigenData, f: WSeries, domain: DomainParams, convention: Convention) -> Result<Self> {
        if f.dim() != eigen.dim() {
            return Err(Error::invalid(
                "nonlinearity",
                format!("dimension {} but {} eigenvalues", f.dim(), eigen.dim()),
            ));
        }
        if f.order() < 2 {
            return Err(Error::invalid("order", "truncation order must be at least 2"));
        }
        if let Some(p) = f.min_order() {
            if p < 2 {
                return Err(Error::invalid(
                    "nonlinearity",
                    format!("term of order {p}; the nonlinearity must vanish to order two"),
                ));
            }
        }
        let f = if f.center() == domain.c { f } else { f.recenter(domain.c) };
        Ok(ProblemSpec {
            eigen,
            f,
            domain,
            convention,
            tolerances: Tolerances::default(),
            scan: ScanConfig::default(),
        })
    }

    /// Builds the domain from the saddle geometry: default center, `ρ = 1.5 ρ_min`
    /// and `R = 1`.
    pub fn with_default_domain(eigen: EigenData, f: WSeries, convention: Convention) -> Result<Self> {
        let geom = saddle_geometry(&eigen, f.order().max(2), 33, None)?;
        let domain = DomainParams::new(geom.c, 1.5 * geom.rho_min, 1.0, geom.rho_min)?;
        ProblemSpec::new(eigen, f, domain, convention)
    }

    pub fn order(&self) -> usize {
        self.f.order()
    }

    pub fn dim(&self) -> usize {
        self.eigen.dim()
    }

    pub fn center(&self) -> Complex64 {
        self.domain.c
    }

    /// Same problem at another truncation order.
    pub fn with_order(&self, order: usize) -> Result<Self> {
        let mut out = self.clone();
        out.f = self.f.with_order(order);
        if order < 2 {
            return Err(Error::invalid("order", "truncation order must be at least 2"));
        }
        Ok(out)
    }

    /// The nonlinearity in the `1 - x²` form, `σ f`.
    pub fn effective_f(&self) -> WSeries {
        match self.convention {
            Convention::Homolog => self.f.clone(),
            Convention::Perfuchs => self.f.neg(),
        }
    }

    pub fn assumptions(&self) -> Result<AssumptionReport> {
        let n = self.order();
        check_assumptions(
            &self.eigen,
            self.scan.dio_c,
            self.scan.dio_nu,
            self.scan.degree_bound.unwrap_or(n).max(2),
            self.scan.k_bound.unwrap_or(n + self.f.max_x_degree()),
        )
    }
}
