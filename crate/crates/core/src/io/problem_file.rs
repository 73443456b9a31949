use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{MultiIndex, WSeries, XPoly};
use crate::error::{Error, Result};
use crate::kam::KamConfig;
use crate::problem::{Convention, ProblemSpec, ScanConfig, Tolerances};
use crate::spectra::{saddle_geometry, DomainParams, EigenData};
use crate::verify::VerifyConfig;

pub const PROBLEM_SCHEMA: &str = "fnf-problem/1";

/// Samples per boundary curve of `K` when the file does not fix the domain.
const GEOMETRY_SAMPLES: usize = 33;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    /// Coefficients of powers of `x - c`.
    Centered,
    /// Coefficients of powers of `x`.
    Monomial,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub component: usize,
    pub multi_index: Vec<u32>,
    pub basis: Basis,
    pub coeffs: Vec<Complex64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleSpec {
    pub delta1: f64,
    pub beta: f64,
    pub nu: f64,
    pub kmax: usize,
    #[serde(default = "one")]
    pub c2: f64,
    #[serde(default = "one")]
    pub c4: f64,
}

fn one() -> f64 {
    1.0
}

impl Default for ScheduleSpec {
    fn default() -> Self {
        let k = KamConfig::default();
        ScheduleSpec {
            delta1: k.delta1,
            beta: k.beta,
            nu: k.nu,
            kmax: k.kmax,
            c2: k.c2,
            c4: k.c4,
        }
    }
}

/// The on-disk problem description. Complex numbers are `[re, im]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub schema: String,
    pub dimension: usize,
    pub a: Vec<Complex64>,
    pub b: Vec<Complex64>,
    pub order: usize,
    #[serde(default)]
    pub convention: Convention,
    pub nonlinearity: Vec<TermSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center: Option<Complex64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerances: Option<Tolerances>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scan: Option<ScanConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schedule: Option<ScheduleSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verify: Option<VerifyConfig>,
}

impl ProblemFile {
    /// Parses and validates; errors name the offending field.
    pub fn parse(text: &str) -> Result<ProblemFile> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let file: ProblemFile = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            Error::invalid(if path == "." { "(root)".to_string() } else { path }, e.into_inner().to_string())
        })?;
        file.validate()?;
        Ok(file)
    }

    pub fn read(path: &std::path::Path) -> Result<ProblemFile> {
        ProblemFile::parse(&std::fs::read_to_string(path)?)
    }

    /// Canonical text: pretty JSON with fields in declaration order and a
    /// trailing newline.
    pub fn to_canonical(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn validate(&self) -> Result<()> {
        if self.schema != PROBLEM_SCHEMA {
            return Err(Error::invalid("schema", format!("expected \"{PROBLEM_SCHEMA}\", got \"{}\"", self.schema)));
        }
        let d = self.dimension;
        if d == 0 {
            return Err(Error::invalid("dimension", "must be at least 1"));
        }
        for (name, v) in [("a", &self.a), ("b", &self.b)] {
            if v.len() != d {
                return Err(Error::invalid(name, format!("{} entries for dimension {d}", v.len())));
            }
        }
        if self.order < 2 {
            return Err(Error::invalid("order", "must be at least 2"));
        }
        for (i, t) in self.nonlinearity.iter().enumerate() {
            let at = |field: &str| format!("nonlinearity[{i}].{field}");
            if t.component >= d {
                return Err(Error::invalid(at("component"), format!("{} out of range for dimension {d}", t.component)));
            }
            if t.multi_index.len() != d {
                return Err(Error::invalid(at("multi_index"), format!("{} entries for dimension {d}", t.multi_index.len())));
            }
            let deg: u32 = t.multi_index.iter().sum();
            if deg < 2 {
                return Err(Error::invalid(at("multi_index"), "nonlinearity terms must have degree >= 2"));
            }
            if deg as usize > self.order {
                return Err(Error::invalid(at("multi_index"), format!("degree {deg} exceeds order {}", self.order)));
            }
            if t.coeffs.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(Error::invalid(at("coeffs"), "non-finite coefficient"));
            }
        }
        if let Some(r) = self.rho {
            if !(r > 0.0) {
                return Err(Error::invalid("rho", "must be positive"));
            }
        }
        if let Some(r) = self.radius {
            if !(r > 0.0) {
                return Err(Error::invalid("radius", "must be positive"));
            }
        }
        Ok(())
    }

    pub fn eigen(&self) -> Result<EigenData> {
        EigenData::new(self.a.clone(), self.b.clone())
    }

    /// Builds the problem, optionally overriding order and convention. The
    /// domain comes from the saddle geometry unless the file fixes it.
    pub fn to_spec(&self, order: Option<usize>, convention: Option<Convention>) -> Result<ProblemSpec> {
        let eigen = self.eigen()?;
        let order = order.unwrap_or(self.order);
        if order < 2 {
            return Err(Error::invalid("order", "must be at least 2"));
        }
        let geom = saddle_geometry(&eigen, order, GEOMETRY_SAMPLES, self.center)?;
        let c = geom.c;
        let rho = self.rho.unwrap_or(1.5 * geom.rho_min);
        let domain = DomainParams::new(c, rho, self.radius.unwrap_or(1.0), geom.rho_min)
            .map_err(|e| Error::invalid("rho", e.to_string()))?;
        let mut f = WSeries::zero(self.dimension, order, c);
        for t in &self.nonlinearity {
            let poly = match t.basis {
                Basis::Centered => XPoly::from_centered(c, t.coeffs.clone()),
                Basis::Monomial => XPoly::from_monomial(c, &t.coeffs),
            };
            f.add_term(MultiIndex::new(t.multi_index.clone()), t.component, &poly);
        }
        let mut spec = ProblemSpec::new(eigen, f, domain, convention.unwrap_or(self.convention))?;
        if let Some(t) = self.tolerances {
            spec.tolerances = t;
        }
        if let Some(s) = self.scan {
            spec.scan = s;
        }
        Ok(spec)
    }

    pub fn kam_config(&self) -> KamConfig {
        let s = self.schedule.clone().unwrap_or_default();
        KamConfig {
            delta1: s.delta1,
            beta: s.beta,
            nu: s.nu,
            kmax: s.kmax,
            c2: s.c2,
            c4: s.c4,
            ..KamConfig::default()
        }
    }

    pub fn verify_config(&self) -> VerifyConfig {
        self.verify.unwrap_or_default()
    }
}
