//! Jacobi-weight moments on `[-1, 1]`, the averaging functionals `Φ` and the
//! solution operators `J` of the scalar homological equation
//!
//! ```text
//! L h = (1 - x^2) h' + [(q - p) - (p + q) x] h = F - Φ[F].
//! ```
//!
//! The weight is `(1-t)^{p-1} (1+t)^{q-1}` with principal branches. Since
//! `d/dt[(1-t)^p (1+t)^q h] = (1-t)^{p-1} (1+t)^{q-1} L h`, the functional `Φ`
//! annihilates the range of `L`, and `J[F]` is the unique polynomial solution.

mod asymptotics;
mod gamma;
mod moments;
mod operator;

pub use asymptotics::{
    phi_j_asymptotics, AsymptoticsReport, AsymptoticsRow, QuadratureCheck, SlopeFit,
};
pub use gamma::{beta_fn, gamma, ln_gamma};
pub use moments::{jacobi_moment, jacobi_moment_continued, normalized_moments, phi_functional};
pub use operator::{apply_l, j_operator, j_operator_with, JSolution, JTolerances};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::MultiIndex;
use crate::spectra::EigenData;

/// Exponents of the weight `(1-t)^{p-1} (1+t)^{q-1}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightParams {
    pub p: Complex64,
    pub q: Complex64,
    /// The `(m, j)` that produced these exponents, if any.
    pub origin: Option<(MultiIndex, usize)>,
}

impl WeightParams {
    pub fn new(p: Complex64, q: Complex64) -> Self {
        WeightParams { p, q, origin: None }
    }

    /// `p = m·a - a_j`, `q = m·b - b_j`.
    pub fn for_term(eigen: &EigenData, m: &MultiIndex, j: usize) -> Self {
        let (p, q) = eigen.exponents(m, j);
        WeightParams {
            p,
            q,
            origin: Some((m.clone(), j)),
        }
    }

    /// Scalar weight of homogeneous order `order`: `p = (order-1) a`, `q = (order-1) b`.
    pub fn of_order(order: usize, a: Complex64, b: Complex64) -> Self {
        let n = order as f64 - 1.0;
        WeightParams::new(a * n, b * n)
    }

    pub fn sum(&self) -> Complex64 {
        self.p + self.q
    }

    /// `(q - p)/(p + q)`, the mean of `t` under the weight.
    pub fn mean(&self) -> Complex64 {
        (self.q - self.p) / self.sum()
    }

    /// `Re p > 0` and `Re q > 0`. For `d > 1` this can fail for `|m| >= 2` even
    /// when all `Re a_j, Re b_j > 0`; `Φ` and `J` do not need it.
    pub fn is_integrable(&self) -> bool {
        self.p.re > 0.0 && self.q.re > 0.0
    }
}
