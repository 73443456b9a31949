use std::collections::BTreeMap;

use num_complex::Complex64;

use super::{monomial, MultiIndex, ScalarSeries, WSeries, XPoly};

/// A truncated vector series with constant (x-independent) coefficients,
/// such as the correction `φ(u) = Σ φ_n u^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct PointSeries {
    dim: usize,
    order: usize,
    terms: BTreeMap<MultiIndex, Vec<Complex64>>,
}

impl PointSeries {
    pub fn zero(dim: usize, order: usize) -> Self {
        PointSeries {
            dim,
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Vec<Complex64>)> {
        self.terms.iter()
    }

    pub fn get(&self, m: &MultiIndex, j: usize) -> Complex64 {
        self.terms
            .get(m)
            .map(|v| v[j])
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn set(&mut self, m: MultiIndex, j: usize, value: Complex64) {
        if m.degree() > self.order {
            return;
        }
        let dim = self.dim;
        let entry = self
            .terms
            .entry(m.clone())
            .or_insert_with(|| vec![Complex64::new(0.0, 0.0); dim]);
        entry[j] = value;
        if entry.iter().all(|v| *v == Complex64::new(0.0, 0.0)) {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_order(&self) -> Option<usize> {
        self.terms.keys().next().map(|m| m.degree())
    }

    pub fn max_abs(&self) -> f64 {
        self.terms
            .values()
            .flatten()
            .map(|v| v.norm())
            .fold(0.0, f64::max)
    }

    pub fn neg(&self) -> PointSeries {
        PointSeries {
            dim: self.dim,
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v.iter().map(|z| -z).collect()))
                .collect(),
        }
    }

    pub fn scale(&self, s: Complex64) -> PointSeries {
        let mut out = PointSeries::zero(self.dim, self.order);
        for (m, v) in &self.terms {
            for (j, z) in v.iter().enumerate() {
                out.set(m.clone(), j, z * s);
            }
        }
        out
    }

    /// Terms of total degree at most `n`; the nominal order is unchanged.
    pub fn up_to(&self, n: usize) -> PointSeries {
        PointSeries {
            dim: self.dim,
            order: self.order,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= n)
                .map(|(m, v)| (m.clone(), v.clone()))
                .collect(),
        }
    }

    pub fn eval(&self, u: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim];
        for (m, v) in &self.terms {
            let mono = monomial(m, u);
            for (o, c) in out.iter_mut().zip(v) {
                *o += c * mono;
            }
        }
        out
    }

    /// The same series viewed as a [`WSeries`] with constant polynomial
    /// coefficients centered at `center`.
    pub fn to_wseries(&self, center: Complex64) -> WSeries {
        let comps = (0..self.dim)
            .map(|j| {
                let mut s = ScalarSeries::zero(self.dim, self.order, center);
                for (m, v) in &self.terms {
                    s.add_term(m.clone(), &XPoly::constant(center, v[j]));
                }
                s
            })
            .collect();
        WSeries::from_components(comps).expect("consistent components")
    }
}
