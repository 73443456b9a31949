use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// A polynomial in `(x - c)` with complex coefficients.
///
/// `coeffs[k]` multiplies `(x - c)^k`. Trailing zero coefficients are always
/// trimmed, so the zero polynomial has no coefficients at all.
#[derive(Clone, Debug, PartialEq)]
pub struct XPoly {
    center: Complex64,
    coeffs: Vec<Complex64>,
}

impl XPoly {
    pub fn zero(center: Complex64) -> Self {
        XPoly {
            center,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(center: Complex64, value: Complex64) -> Self {
        XPoly::from_centered(center, vec![value])
    }

    /// Builds a polynomial from coefficients already expressed in powers of `(x - center)`.
    pub fn from_centered(center: Complex64, coeffs: Vec<Complex64>) -> Self {
        let mut p = XPoly { center, coeffs };
        p.trim();
        p
    }

    /// Builds a polynomial from coefficients in powers of `x` and re-expands
    /// it about `center`.
    pub fn from_monomial(center: Complex64, mono: &[Complex64]) -> Self {
        // Horner in the shifted variable: p(y + c) with y = x - c.
        let mut acc = XPoly::zero(center);
        let lin = XPoly::from_centered(center, vec![center, Complex64::new(1.0, 0.0)]);
        for &a in mono.iter().rev() {
            acc = &(&acc * &lin) + &XPoly::constant(center, a);
        }
        acc
    }

    /// Taylor coefficients of an analytic function about `center`, truncated at
    /// `degree`.
    ///
    /// Coefficients come from the trapezoid rule for the Cauchy integral on
    /// the circle `|x - center| = sample_radius`. Returns the polynomial and a
    /// Cauchy bound for the dropped tail on `|x - center| <= eval_radius`.
    pub fn truncate_analytic<F>(
        center: Complex64,
        degree: usize,
        sample_radius: f64,
        eval_radius: f64,
        f: F,
    ) -> (XPoly, f64)
    where
        F: Fn(Complex64) -> Complex64,
    {
        let n = (4 * (degree + 1)).max(64);
        let samples: Vec<Complex64> = (0..n)
            .map(|k| {
                let z = Complex64::from_polar(sample_radius, 2.0 * PI * k as f64 / n as f64);
                f(center + z)
            })
            .collect();
        let sup = samples.iter().map(|v| v.norm()).fold(0.0, f64::max);
        let coeffs = (0..=degree)
            .map(|j| {
                let s: Complex64 = samples
                    .iter()
                    .enumerate()
                    .map(|(k, v)| {
                        v * Complex64::from_polar(1.0, -2.0 * PI * (j * k) as f64 / n as f64)
                    })
                    .sum();
                s / (n as f64 * sample_radius.powi(j as i32))
            })
            .collect();
        let ratio = eval_radius / sample_radius;
        let tail = if ratio < 1.0 {
            sup * ratio.powi(degree as i32 + 1) / (1.0 - ratio)
        } else {
            f64::INFINITY
        };
        (XPoly::from_centered(center, coeffs), tail)
    }

    pub fn center(&self) -> Complex64 {
        self.center
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&ZERO) {
            self.coeffs.pop();
        }
    }

    pub fn eval(&self, x: Complex64) -> Complex64 {
        let y = x - self.center;
        self.coeffs.iter().rev().fold(ZERO, |acc, &a| acc * y + a)
    }

    pub fn derivative(&self) -> XPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &a)| a * k as f64)
            .collect();
        XPoly::from_centered(self.center, coeffs)
    }

    pub fn scale(&self, s: Complex64) -> XPoly {
        XPoly::from_centered(self.center, self.coeffs.iter().map(|&a| a * s).collect())
    }

    /// Sum of coefficient moduli; bounds `|p(x)|` on `|x - c| <= 1`.
    pub fn l1_norm(&self) -> f64 {
        self.coeffs.iter().map(|a| a.norm()).sum()
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    /// Coefficients in powers of `x`.
    pub fn to_monomial(&self) -> Vec<Complex64> {
        // p(x) = sum a_k (x - c)^k; expand with center 0.
        let lin = XPoly::from_centered(ZERO, vec![-self.center, Complex64::new(1.0, 0.0)]);
        let mut acc = XPoly::zero(ZERO);
        for &a in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &XPoly::constant(ZERO, a);
        }
        acc.coeffs
    }

    /// The same polynomial expanded about a different center.
    pub fn recenter(&self, center: Complex64) -> XPoly {
        XPoly::from_monomial(center, &self.to_monomial())
    }

    fn check_center(&self, other: &XPoly) {
        assert!(
            self.center == other.center,
            "XPoly centers differ: {} vs {}",
            self.center,
            other.center
        );
    }
}

impl Add for &XPoly {
    type Output = XPoly;

    fn add(self, rhs: &XPoly) -> XPoly {
        self.check_center(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        XPoly::from_centered(self.center, coeffs)
    }
}

impl Sub for &XPoly {
    type Output = XPoly;

    fn sub(self, rhs: &XPoly) -> XPoly {
        self.check_center(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect();
        XPoly::from_centered(self.center, coeffs)
    }
}

impl Mul for &XPoly {
    type Output = XPoly;

    fn mul(self, rhs: &XPoly) -> XPoly {
        self.check_center(rhs);
        if self.is_zero() || rhs.is_zero() {
            return XPoly::zero(self.center);
        }
        let mut coeffs = vec![ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        XPoly::from_centered(self.center, coeffs)
    }
}

impl Neg for &XPoly {
    type Output = XPoly;

    fn neg(self) -> XPoly {
        XPoly::from_centered(self.center, self.coeffs.iter().map(|&a| -a).collect())
    }
}

impl XPoly {
    /// In-place `self += other * s`.
    pub fn add_scaled(&mut self, other: &XPoly, s: Complex64) {
        self.check_center(other);
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), ZERO);
        }
        for (a, &b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b * s;
        }
        self.trim();
    }

    /// In-place `self += a * b`.
    pub fn add_product(&mut self, a: &XPoly, b: &XPoly) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        self.check_center(a);
        self.check_center(b);
        let need = a.coeffs.len() + b.coeffs.len() - 1;
        if self.coeffs.len() < need {
            self.coeffs.resize(need, ZERO);
        }
        for (i, &x) in a.coeffs.iter().enumerate() {
            for (j, &y) in b.coeffs.iter().enumerate() {
                self.coeffs[i + j] += x * y;
            }
        }
        self.trim();
    }
}
