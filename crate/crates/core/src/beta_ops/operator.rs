use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{phi_functional, WeightParams};
use crate::algebra::{MultiIndex, XPoly};
use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Thresholds for [`j_operator_with`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct JTolerances {
    /// Divisors `k + p + q` below `resonance * (1 + |p + q|)` are refused.
    pub resonance: f64,
    /// The leftover equation must vanish to `compatibility * ‖F‖₁`.
    pub compatibility: f64,
}

impl Default for JTolerances {
    fn default() -> Self {
        JTolerances {
            resonance: 1e-8,
            compatibility: 1e-10,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct JSolution {
    pub h: XPoly,
    pub phi: Complex64,
    /// `|G_0 - (1-c²) h_1 - e h_0|`, the unused equation of the triangular solve.
    pub residual: f64,
}

/// `L h = (1 - x²) h' + [(q - p) - (p + q) x] h`, in the basis of `h`.
pub fn apply_l(w: &WeightParams, h: &XPoly) -> XPoly {
    let c = h.center();
    let s = w.sum();
    let e = (w.q - w.p) - s * c;
    let one_c2 = 1.0 - c * c;
    let n = h.len();
    let mut out = vec![ZERO; n + 1];
    for (k, &a) in h.coeffs().iter().enumerate() {
        let kf = k as f64;
        if k > 0 {
            out[k - 1] += a * one_c2 * kf;
        }
        out[k] += a * (e - 2.0 * c * kf);
        out[k + 1] -= a * (s + kf);
    }
    XPoly::from_centered(c, out)
}

pub fn j_operator(w: &WeightParams, f: &XPoly) -> Result<JSolution> {
    j_operator_with(w, f, &JTolerances::default())
}

/// Solves `L h = F - Φ_w[F]` for the polynomial `h` of degree `deg F - 1` by
/// back-substitution from the top coefficient.
pub fn j_operator_with(w: &WeightParams, f: &XPoly, tol: &JTolerances) -> Result<JSolution> {
    let c = f.center();
    let s = w.sum();
    for j in 0..f.degree().unwrap_or(0) {
        let div = s + j as f64;
        if div.norm() < tol.resonance * (1.0 + s.norm()) {
            let (multi_index, component) = w
                .origin
                .clone()
                .unwrap_or_else(|| (MultiIndex::zero(1), 0));
            return Err(Error::NearResonance {
                multi_index,
                component,
                degree: j,
                modulus: div.norm(),
            });
        }
    }
    let phi = phi_functional(w, f)?;
    let g = f - &XPoly::constant(c, phi);
    let Some(deg) = g.degree() else {
        return Ok(JSolution {
            h: XPoly::zero(c),
            phi,
            residual: 0.0,
        });
    };
    let e = (w.q - w.p) - s * c;
    let one_c2 = 1.0 - c * c;

    let mut h = vec![ZERO; deg + 2];
    for j in (0..deg).rev() {
        let div = s + j as f64;
        let jf = j as f64;
        h[j] = ((e - 2.0 * c * (jf + 1.0)) * h[j + 1] + h[j + 2] * one_c2 * (jf + 2.0)
            - g.coeff(j + 1))
            / div;
    }
    let residual = (g.coeff(0) - one_c2 * h[1] - e * h[0]).norm();
    let scale = f.l1_norm();
    if residual > tol.compatibility * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::Consistency(format!(
            "J: leftover equation residual {residual:.3e} exceeds {:.1e} * ||F|| = {:.3e}",
            tol.compatibility,
            tol.compatibility * scale
        )));
    }
    h.truncate(deg);
    Ok(JSolution {
        h: XPoly::from_centered(c, h),
        phi,
        residual,
    })
}
