use num_complex::Complex64;

use super::{beta_fn, WeightParams};
use crate::algebra::XPoly;
use crate::error::{Error, Result};

fn check_integrable(w: &WeightParams) -> Result<()> {
    if w.is_integrable() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "weight (1-t)^(p-1) (1+t)^(q-1) not integrable: p = {}, q = {}",
            w.p, w.q
        )))
    }
}

/// `∫_{-1}^{1} (1-t)^{p-1} (1+t)^{q-1} (t-c)^k dt`, from the binomial
/// expansion of `(t-c)^k = ((1+t) - (1+c))^k` and
/// `∫ (1-t)^{p-1} (1+t)^{q+j-1} dt = 2^{p+q+j-1} B(p, q+j)`.
///
/// The alternating sum loses roughly `k log10(3)` digits when `|1+c| ~ 1`.
pub fn jacobi_moment(w: &WeightParams, k: usize, c: Complex64) -> Result<Complex64> {
    check_integrable(w)?;
    jacobi_moment_continued(w, k, c)
}

/// [`jacobi_moment`] continued analytically in `(p, q)` past the integrability
/// region (the Hadamard finite part); errors only at poles of `Γ(p)`, `Γ(q)`.
pub fn jacobi_moment_continued(w: &WeightParams, k: usize, c: Complex64) -> Result<Complex64> {
    let s = w.sum();
    let base = (std::f64::consts::LN_2 * (s - 1.0)).exp() * beta_fn(w.p, w.q)?;
    let shift = -(1.0 + c);
    // ratio_j = 2^j B(p, q+j) / B(p, q)
    let mut ratio = Complex64::new(1.0, 0.0);
    let mut binom = 1.0f64;
    let mut total = Complex64::new(0.0, 0.0);
    for j in 0..=k {
        if j > 0 {
            let i = (j - 1) as f64;
            ratio *= 2.0 * (w.q + i) / (s + i);
            binom *= (k - j + 1) as f64 / j as f64;
        }
        total += ratio * binom * shift.powu((k - j) as u32);
    }
    Ok(base * total)
}

/// `μ_k = ∫ w (t-c)^k / ∫ w` for `k = 0..=kmax`.
///
/// Uses the three-term recurrence that follows from `Φ[L (x-c)^k] = 0`,
///
/// ```text
/// (k + s) μ_{k+1} = k (1 - c^2) μ_{k-1} + (e - 2ck) μ_k,   e = (q - p) - s c,
/// ```
///
/// which is exact and avoids the cancellation in the binomial form. The
/// recurrence needs only `k + s != 0`, so it also defines `Φ` (as the unique
/// normalized annihilator of the range of `L`) when the weight is not integrable.
pub fn normalized_moments(w: &WeightParams, c: Complex64, kmax: usize) -> Result<Vec<Complex64>> {
    let s = w.sum();
    if let Some(k) = (0..kmax).find(|&k| (s + k as f64).norm() <= 1e-14 * (1.0 + s.norm())) {
        return Err(Error::Domain(format!(
            "moment recurrence divisor k + p + q vanishes at k = {k} (p = {}, q = {})",
            w.p, w.q
        )));
    }
    let e = (w.q - w.p) - s * c;
    let one_c2 = 1.0 - c * c;
    let mut mu = Vec::with_capacity(kmax + 1);
    mu.push(Complex64::new(1.0, 0.0));
    for k in 0..kmax {
        let kf = k as f64;
        let prev = if k > 0 { mu[k - 1] * one_c2 * kf } else { Complex64::new(0.0, 0.0) };
        let next = (prev + (e - 2.0 * c * kf) * mu[k]) / (s + kf);
        mu.push(next);
    }
    Ok(mu)
}

/// `Φ_w[F] = ∫ w F / ∫ w`, for `F` expanded about its own center.
pub fn phi_functional(w: &WeightParams, f: &XPoly) -> Result<Complex64> {
    let Some(deg) = f.degree() else {
        return Ok(Complex64::new(0.0, 0.0));
    };
    let mu = normalized_moments(w, f.center(), deg)?;
    Ok(f.coeffs().iter().zip(&mu).map(|(a, m)| a * m).sum())
}
