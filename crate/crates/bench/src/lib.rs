//! Fixed workloads shared by the criterion benches.

use fnf_core::algebra::{MultiIndex, WSeries, XPoly};
use fnf_core::problem::{Convention, ProblemSpec};
use fnf_core::spectra::EigenData;
use num_complex::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// A dense planar series: every monomial of degree 2..=order in every
/// component, with linear-in-`x` coefficients.
pub fn dense_series(order: usize, center: Complex64) -> WSeries {
    let mut f = WSeries::zero(2, order, center);
    for (i, m) in MultiIndex::up_to_degree(2, 2, order).into_iter().enumerate() {
        for j in 0..2 {
            let s = 1.0 / (1 + i + j) as f64;
            f.add_term(m.clone(), j, &XPoly::from_centered(center, vec![c(s, 0.1 * s), c(0.5 * s, -0.2 * s)]));
        }
    }
    f
}

/// `w + small dense terms`, a near-identity map suitable for inversion.
pub fn near_identity(order: usize) -> WSeries {
    dense_series(order, c(0.0, 0.0)).scale(c(0.1, 0.0)).plus_identity()
}

pub fn planar_problem(order: usize) -> ProblemSpec {
    let eigen = EigenData::new(vec![c(0.45, 0.05), c(0.7, 0.0)], vec![c(0.3, 0.0), c(0.55, -0.05)]).expect("eigenvalues");
    let base = ProblemSpec::with_default_domain(eigen.clone(), WSeries::zero(2, order, c(0.0, 0.0)), Convention::Homolog).expect("domain");
    let f = dense_series(order, base.center()).scale(c(0.2, 0.0));
    ProblemSpec::new(eigen, f, base.domain, Convention::Homolog).expect("problem")
}

pub fn scalar_problem(order: usize) -> ProblemSpec {
    let zero = c(0.0, 0.0);
    let mut f = WSeries::zero(1, order, zero);
    f.add_term(MultiIndex::new(vec![2]), 0, &XPoly::from_monomial(zero, &[zero, c(1.0, 0.0)]));
    ProblemSpec::with_default_domain(EigenData::scalar(0.5, 0.5), f, Convention::Homolog).expect("problem")
}
