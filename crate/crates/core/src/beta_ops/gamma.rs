use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn is_pole(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// `ln Γ(z)` on some branch; only `exp` of sums of these is meaningful.
pub fn ln_gamma(z: Complex64) -> Result<Complex64> {
    if is_pole(z) {
        return Err(Error::Domain(format!("Gamma has a pole at {z}")));
    }
    Ok(ln_gamma_unchecked(z))
}

fn ln_gamma_unchecked(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        let s = (z * PI).sin();
        return Complex64::new(PI.ln(), 0.0) - s.ln() - ln_gamma_unchecked(1.0 - z);
    }
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

pub fn gamma(z: Complex64) -> Result<Complex64> {
    Ok(ln_gamma(z)?.exp())
}

/// `B(p, q) = Γ(p)Γ(q)/Γ(p+q)`.
pub fn beta_fn(p: Complex64, q: Complex64) -> Result<Complex64> {
    for (name, z) in [("p", p), ("q", q)] {
        if is_pole(z) {
            return Err(Error::Domain(format!("beta: {name} = {z} is a pole of Gamma")));
        }
    }
    if is_pole(p + q) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok((ln_gamma_unchecked(p) + ln_gamma_unchecked(q) - ln_gamma_unchecked(p + q)).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn factorials_and_half() {
        let mut fact = 1.0;
        for n in 1..=20 {
            assert!(rel(gamma(c(n as f64, 0.0)).unwrap(), c(fact, 0.0)) < 1e-13, "n = {n}");
            fact *= n as f64;
        }
        assert!(rel(gamma(c(0.5, 0.0)).unwrap(), c(PI.sqrt(), 0.0)) < 1e-14);
        assert!(rel(gamma(c(-0.5, 0.0)).unwrap(), c(-2.0 * PI.sqrt(), 0.0)) < 1e-14);
    }

    #[test]
    fn beta_special_values() {
        assert!(rel(beta_fn(c(1.0, 0.0), c(1.0, 0.0)).unwrap(), c(1.0, 0.0)) < 1e-14);
        assert!(rel(beta_fn(c(0.5, 0.0), c(0.5, 0.0)).unwrap(), c(PI, 0.0)) < 1e-14);
        // B(p, 1) = 1/p
        let p = c(2.5, 1.0);
        assert!(rel(beta_fn(p, c(1.0, 0.0)).unwrap(), 1.0 / p) < 1e-13);
    }

    #[test]
    fn gamma_functional_equation_complex() {
        for z in [c(0.3, 2.0), c(-1.7, 0.4), c(12.0, -7.5), c(55.0, 30.0)] {
            let lhs = ln_gamma(z + 1.0).unwrap();
            let rhs = ln_gamma(z).unwrap() + z.ln();
            let d = (lhs - rhs).exp();
            assert!((d - 1.0).norm() < 1e-12, "z = {z}: {d}");
        }
    }

    #[test]
    fn reflection_formula() {
        for z in [c(0.25, 0.5), c(0.7, -1.3)] {
            let prod = gamma(z).unwrap() * gamma(1.0 - z).unwrap();
            assert!(rel(prod, PI / (z * PI).sin()) < 1e-13);
        }
    }

    #[test]
    fn poles() {
        assert!(matches!(beta_fn(c(0.0, 0.0), c(1.0, 0.0)), Err(Error::Domain(_))));
        assert!(matches!(beta_fn(c(1.0, 0.0), c(-3.0, 0.0)), Err(Error::Domain(_))));
        assert_eq!(beta_fn(c(-0.5, 0.0), c(-0.5, 0.0)).unwrap(), c(0.0, 0.0));
        assert!(gamma(c(-2.0, 0.0)).is_err());
    }

    #[test]
    fn large_arguments_stay_accurate() {
        // B(n, n) = Γ(n)² / Γ(2n) computed with exact factorial ratios.
        let n = 60u32;
        let mut ratio = 1.0f64;
        for k in 0..(n - 1) {
            ratio *= (k + 1) as f64 / (n + k) as f64;
        }
        let expect = ratio / (2 * n - 1) as f64;
        let got = beta_fn(c(n as f64, 0.0), c(n as f64, 0.0)).unwrap();
        assert!(rel(got, c(expect, 0.0)) < 1e-12);
    }
}
