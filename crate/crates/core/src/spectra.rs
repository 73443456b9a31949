//! Eigenvalue data, the standing assumptions on it, and the saddle-point
//! geometry that fixes the expansion center `c` and the radius `ρ_min`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::MultiIndex;
use crate::error::{Error, Result};

/// Spectra `a`, `b` of the diagonal residue matrices `A`, `B`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenData {
    pub a: Vec<Complex64>,
    pub b: Vec<Complex64>,
}

impl EigenData {
    pub fn new(a: Vec<Complex64>, b: Vec<Complex64>) -> Result<Self> {
        if a.is_empty() || a.len() != b.len() {
            return Err(Error::invalid(
                "b",
                format!("a has {} entries, b has {}", a.len(), b.len()),
            ));
        }
        Ok(EigenData { a, b })
    }

    /// Scalar case `d = 1` with real eigenvalues.
    pub fn scalar(a: f64, b: f64) -> Self {
        EigenData {
            a: vec![Complex64::new(a, 0.0)],
            b: vec![Complex64::new(b, 0.0)],
        }
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }

    /// Eigenvalues `λ = a + b` of `A + B`.
    pub fn lambda(&self) -> Vec<Complex64> {
        self.a.iter().zip(&self.b).map(|(a, b)| a + b).collect()
    }

    /// `(m·a - a_j, m·b - b_j)`: the Jacobi-weight exponents for monomial `m`
    /// in component `j`.
    pub fn exponents(&self, m: &MultiIndex, j: usize) -> (Complex64, Complex64) {
        (m.dot(&self.a) - self.a[j], m.dot(&self.b) - self.b[j])
    }

    /// `t·(b-a) / t·(b+a)`; `None` when the denominator vanishes.
    pub fn saddle_of(&self, t: &[f64]) -> Option<Complex64> {
        let (num, den) = self.saddle_parts(t);
        (den.norm() > 1e-12).then(|| divide(num, den))
    }

    fn saddle_parts(&self, t: &[f64]) -> (Complex64, Complex64) {
        let mut num = Complex64::new(0.0, 0.0);
        let mut den = Complex64::new(0.0, 0.0);
        for ((ti, a), b) in t.iter().zip(&self.a).zip(&self.b) {
            num += (b - a) * *ti;
            den += (b + a) * *ti;
        }
        (num, den)
    }
}

/// The polydisk `|x - c| < ρ, |w| < R` together with `ρ_min`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DomainParams {
    pub c: Complex64,
    pub rho: f64,
    pub radius: f64,
    pub rho_min: f64,
}

impl DomainParams {
    pub fn new(c: Complex64, rho: f64, radius: f64, rho_min: f64) -> Result<Self> {
        if !(rho > rho_min) {
            return Err(Error::invalid(
                "domain.rho",
                format!("rho = {rho} must exceed rho_min = {rho_min}"),
            ));
        }
        if !(radius > 0.0) {
            return Err(Error::invalid("domain.radius", "must be positive"));
        }
        Ok(DomainParams {
            c,
            rho,
            radius,
            rho_min,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    A,
    B,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiophantineWitness {
    pub n: MultiIndex,
    pub l: u32,
    pub s: usize,
    pub side: Side,
    pub modulus: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiophantineCheck {
    pub passed: bool,
    /// `min |n·a + l - a_s| - C (|n| + l)^{-ν}` over the scan (same for `b`).
    pub worst_margin: f64,
    pub witness: Option<DiophantineWitness>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NonIntegerCheck {
    pub passed: bool,
    /// `(side, index, value)` of an integer eigenvalue, if any.
    pub offending: Option<(Side, usize, Complex64)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResonanceWitness {
    pub k: u32,
    pub n: MultiIndex,
    pub j: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NonResonanceCheck {
    pub passed: bool,
    /// Minimal `|k + n·λ - λ_j|` over the scan.
    pub min_modulus: f64,
    pub witness: Option<ResonanceWitness>,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PositivityCheck {
    pub passed: bool,
    pub offending: Option<(Side, usize)>,
}

/// Outcome of the bounded scans. A pass means "no violation found up to the
/// bounds", not a proof.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AssumptionReport {
    pub diophantine: DiophantineCheck,
    pub non_integer: NonIntegerCheck,
    pub nonresonance: NonResonanceCheck,
    pub positivity: PositivityCheck,
    pub degree_bound: usize,
    pub k_bound: usize,
    pub scope: String,
}

impl AssumptionReport {
    /// Gating assumptions for the construction: positivity, non-integrality and
    /// non-resonance; the Diophantine condition only when requested.
    pub fn gate(&self, require_diophantine: bool) -> Result<()> {
        if !self.positivity.passed {
            let (side, i) = self.positivity.offending.expect("witness");
            return Err(Error::Assumption(format!(
                "(rhp) fails: Re {}_{} <= 0",
                side_name(side),
                i
            )));
        }
        if !self.non_integer.passed {
            let (side, i, v) = self.non_integer.offending.expect("witness");
            return Err(Error::Assumption(format!(
                "assumption (c) non-integer eigenvalues fails: {}_{} = {}",
                side_name(side),
                i,
                v
            )));
        }
        if !self.nonresonance.passed {
            let w = self.nonresonance.witness.as_ref().expect("witness");
            return Err(Error::Assumption(format!(
                "(non_res) fails at n={}, k={}, j={}",
                w.n, w.k, w.j
            )));
        }
        if require_diophantine && !self.diophantine.passed {
            let w = self.diophantine.witness.as_ref().expect("witness");
            return Err(Error::Assumption(format!(
                "(DioCond) fails at n={}, l={}, s={} ({})",
                w.n,
                w.l,
                w.s,
                side_name(w.side)
            )));
        }
        Ok(())
    }
}

fn side_name(s: Side) -> &'static str {
    match s {
        Side::A => "a",
        Side::B => "b",
    }
}

const INTEGER_TOL: f64 = 1e-12;
const RESONANCE_TOL: f64 = 1e-10;

/// Scans the Diophantine, non-integrality, non-resonance and positivity
/// conditions over `2 <= |n| <= degree_bound` and `0 <= l, k <= k_bound`.
pub fn check_assumptions(
    eigen: &EigenData,
    dio_c: f64,
    dio_nu: f64,
    degree_bound: usize,
    k_bound: usize,
) -> Result<AssumptionReport> {
    if degree_bound < 2 {
        return Err(Error::invalid("degree_bound", "must be >= 2"));
    }
    if !(dio_c > 0.0) || !(dio_nu > 0.0) {
        return Err(Error::invalid("diophantine", "C and nu must be positive"));
    }
    let d = eigen.dim();
    let indices = MultiIndex::up_to_degree(d, 2, degree_bound);
    let lambda = eigen.lambda();

    // (DioCond): the minimum over (n, l, s, side) of the margin.
    let dio = indices
        .par_iter()
        .map(|n| {
            let mut best: Option<(f64, DiophantineWitness)> = None;
            for (side, vals) in [(Side::A, &eigen.a), (Side::B, &eigen.b)] {
                let dot = n.dot(vals);
                for l in 0..=k_bound as u32 {
                    for (s, v) in vals.iter().enumerate() {
                        let modulus = (dot + l as f64 - v).norm();
                        let bound = dio_c * ((n.degree() + l as usize) as f64).powf(-dio_nu);
                        let margin = modulus - bound;
                        if best.as_ref().is_none_or(|(bm, _)| margin < *bm) {
                            best = Some((
                                margin,
                                DiophantineWitness {
                                    n: n.clone(),
                                    l,
                                    s,
                                    side,
                                    modulus,
                                },
                            ));
                        }
                    }
                }
            }
            best.expect("non-empty scan")
        })
        .collect::<Vec<_>>()
        .into_iter()
        .reduce(|x, y| if y.0 < x.0 { y } else { x })
        .expect("non-empty scan");

    let res = indices
        .par_iter()
        .map(|n| {
            let dot = n.dot(&lambda);
            let mut best: Option<(f64, ResonanceWitness)> = None;
            for k in 0..=k_bound as u32 {
                for (j, lj) in lambda.iter().enumerate() {
                    let modulus = (dot + k as f64 - lj).norm();
                    if best.as_ref().is_none_or(|(bm, _)| modulus < *bm) {
                        best = Some((modulus, ResonanceWitness { k, n: n.clone(), j }));
                    }
                }
            }
            best.expect("non-empty scan")
        })
        .collect::<Vec<_>>()
        .into_iter()
        .reduce(|x, y| if y.0 < x.0 { y } else { x })
        .expect("non-empty scan");

    let is_integer = |z: &Complex64| z.im.abs() < INTEGER_TOL && (z.re - z.re.round()).abs() < INTEGER_TOL;
    let non_integer = eigen
        .a
        .iter()
        .enumerate()
        .map(|(i, v)| (Side::A, i, *v))
        .chain(eigen.b.iter().enumerate().map(|(i, v)| (Side::B, i, *v)))
        .find(|(_, _, v)| is_integer(v));
    let positivity = eigen
        .a
        .iter()
        .enumerate()
        .map(|(i, v)| (Side::A, i, *v))
        .chain(eigen.b.iter().enumerate().map(|(i, v)| (Side::B, i, *v)))
        .find(|(_, _, v)| v.re <= 0.0)
        .map(|(s, i, _)| (s, i));

    Ok(AssumptionReport {
        diophantine: DiophantineCheck {
            passed: dio.0 > 0.0,
            worst_margin: dio.0,
            witness: Some(dio.1),
        },
        non_integer: NonIntegerCheck {
            passed: non_integer.is_none(),
            offending: non_integer,
        },
        nonresonance: NonResonanceCheck {
            passed: res.0 > RESONANCE_TOL,
            min_modulus: res.0,
            witness: Some(res.1),
            note: "scan over |n| >= 2 (n = e_j, k = 0 vanishes identically and is excluded)"
                .to_string(),
        },
        positivity: PositivityCheck {
            passed: positivity.is_none(),
            offending: positivity,
        },
        degree_bound,
        k_bound,
        scope: format!("verified up to |n| <= {degree_bound}, k, l <= {k_bound}; not a proof"),
    })
}

/// A circle through three points, or the line through them when they are
/// collinear (including coincident points).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CircleOrLine {
    Circle { center: Complex64, radius: f64 },
    Line { point: Complex64, direction: Complex64 },
}

impl CircleOrLine {
    pub fn through(p: Complex64, q: Complex64, r: Complex64) -> Self {
        let (b, cc) = (q - p, r - p);
        let det = b.re * cc.im - b.im * cc.re;
        let scale = b.norm().max(cc.norm()).max(1e-300);
        if det.abs() <= 1e-12 * scale * scale {
            let dir = if b.norm() > 1e-14 { b } else { cc };
            let direction = if dir.norm() > 0.0 {
                dir / dir.norm()
            } else {
                Complex64::new(1.0, 0.0)
            };
            return CircleOrLine::Line {
                point: p,
                direction,
            };
        }
        let b2 = b.norm_sqr();
        let c2 = cc.norm_sqr();
        let ux = (cc.im * b2 - b.im * c2) / (2.0 * det);
        let uy = (b.re * c2 - cc.re * b2) / (2.0 * det);
        let center = p + Complex64::new(ux, uy);
        CircleOrLine::Circle {
            center,
            radius: (p - center).norm(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SaddleGeometry {
    pub c_m: Vec<(MultiIndex, Complex64)>,
    pub k_samples: Vec<Complex64>,
    /// Convex hull of the samples, counter-clockwise.
    pub hull: Vec<Complex64>,
    pub c: Complex64,
    pub c0: f64,
    pub rho_min: f64,
    pub circle_minus: CircleOrLine,
    pub circle_plus: CircleOrLine,
}

const RHO_MARGIN: f64 = 1.05;

impl SaddleGeometry {
    /// Whether `z` lies in the sampled hull, or within `tol` of it.
    pub fn hull_contains(&self, z: Complex64, tol: f64) -> bool {
        distance_to_hull(&self.hull, z) <= tol
    }
}

/// Saddle points `c_m` for `2 <= |m| <= degree_bound`, a boundary sample of
/// the set `K` (the `t`-simplex image of `t·(b-a)/t·(b+a)`), the center `c`,
/// `ρ_min`, `c₀` and the two circles bounding the steep-ascent regions.
///
/// The default center is the image of the simplex barycenter, which always
/// lies in `K`.
pub fn saddle_geometry(
    eigen: &EigenData,
    degree_bound: usize,
    samples: usize,
    center_override: Option<Complex64>,
) -> Result<SaddleGeometry> {
    let d = eigen.dim();
    let eval = |t: &[f64]| -> Result<Complex64> {
        let (num, den) = eigen.saddle_parts(t);
        if den.norm() <= 1e-12 * (1.0 + num.norm()) {
            return Err(Error::ResonantDirection {
                direction: t.to_vec(),
                denominator: den,
            });
        }
        Ok(divide(num, den))
    };

    let mut c_m = Vec::new();
    for m in MultiIndex::up_to_degree(d, 2, degree_bound.max(2)) {
        let n = m.degree() as f64;
        let t: Vec<f64> = m.entries().iter().map(|&e| e as f64 / n).collect();
        c_m.push((m, eval(&t)?));
    }

    let mut k_samples = Vec::new();
    if d == 1 {
        k_samples.push(eval(&[1.0])?);
    } else {
        let steps = samples.max(2);
        for i in 0..d {
            for j in (i + 1)..d {
                for s in 0..steps {
                    let mut t = vec![0.0; d];
                    let frac = s as f64 / (steps - 1) as f64;
                    t[i] = frac;
                    t[j] = 1.0 - frac;
                    k_samples.push(eval(&t)?);
                }
            }
        }
    }

    let bary = vec![1.0 / d as f64; d];
    let c = match center_override {
        Some(c) => c,
        None => eval(&bary)?,
    };
    let (num, den) = eigen.saddle_parts(&bary);
    let c0 = num.re / den.re;

    let far = [Complex64::new(-1.0, 0.0), Complex64::new(1.0, 0.0)]
        .iter()
        .chain(k_samples.iter())
        .chain(c_m.iter().map(|(_, z)| z))
        .map(|z| (z - c).norm())
        .fold(0.0, f64::max);
    let rho_min = RHO_MARGIN * far;

    let c0z = Complex64::new(c0, 0.0);
    Ok(SaddleGeometry {
        hull: convex_hull(&k_samples),
        c_m,
        k_samples,
        c,
        c0,
        rho_min,
        circle_minus: CircleOrLine::through(Complex64::new(1.0, 0.0), c0z, c),
        circle_plus: CircleOrLine::through(Complex64::new(-1.0, 0.0), c0z, c),
    })
}

/// Complex division that reduces to real division for real operands, so real
/// spectra give bit-identical `c` and `c₀`.
fn divide(num: Complex64, den: Complex64) -> Complex64 {
    if num.im == 0.0 && den.im == 0.0 {
        Complex64::new(num.re / den.re, 0.0)
    } else {
        num / den
    }
}

fn cross(o: Complex64, a: Complex64, b: Complex64) -> f64 {
    (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re)
}

/// Andrew's monotone chain.
fn convex_hull(points: &[Complex64]) -> Vec<Complex64> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    pts.dedup_by(|a, b| (*a - *b).norm() < 1e-15);
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<Complex64> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Complex64> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn segment_distance(a: Complex64, b: Complex64, z: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (z - a).norm();
    }
    let t = (((z - a) * ab.conj()).re / len2).clamp(0.0, 1.0);
    (z - (a + ab * t)).norm()
}

fn distance_to_hull(hull: &[Complex64], z: Complex64) -> f64 {
    match hull.len() {
        0 => f64::INFINITY,
        1 => (z - hull[0]).norm(),
        2 => segment_distance(hull[0], hull[1], z),
        n => {
            let inside = (0..n).all(|i| cross(hull[i], hull[(i + 1) % n], z) >= 0.0);
            if inside {
                0.0
            } else {
                (0..n)
                    .map(|i| segment_distance(hull[i], hull[(i + 1) % n], z))
                    .fold(f64::INFINITY, f64::min)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Independent scan: the direct triple loop without parallelism.
    fn brute_min_resonance(lambda: &[Complex64], deg: usize, kb: u32) -> f64 {
        let mut best = f64::INFINITY;
        for n in MultiIndex::up_to_degree(lambda.len(), 2, deg) {
            for k in 0..=kb {
                for lj in lambda {
                    let v: Complex64 = n
                        .entries()
                        .iter()
                        .zip(lambda)
                        .map(|(&e, l)| l * e as f64)
                        .sum::<Complex64>()
                        + k as f64
                        - lj;
                    best = best.min(v.norm());
                }
            }
        }
        best
    }

    #[test]
    fn scalar_half_half_passes_everything() {
        let e = EigenData::scalar(0.5, 0.5);
        let r = check_assumptions(&e, 0.1, 1.0, 50, 50).unwrap();
        assert!(r.diophantine.passed && r.non_integer.passed);
        assert!(r.nonresonance.passed && r.positivity.passed);
        assert_eq!(r.nonresonance.min_modulus, 1.0);
        assert_eq!(r.nonresonance.min_modulus, brute_min_resonance(&e.lambda(), 50, 50));
        let w = r.nonresonance.witness.clone().unwrap();
        assert_eq!((w.k, w.n.entries().to_vec()), (0, vec![2]));
        r.gate(true).unwrap();
    }

    #[test]
    fn integer_eigenvalue_is_reported() {
        let e = EigenData::scalar(1.0, 0.5);
        let r = check_assumptions(&e, 0.1, 1.0, 10, 10).unwrap();
        assert!(!r.non_integer.passed);
        assert_eq!(r.non_integer.offending, Some((Side::A, 0, c(1.0, 0.0))));
        let msg = r.gate(false).unwrap_err().to_string();
        assert!(msg.contains("non-integer"), "{msg}");
    }

    #[test]
    fn resonance_found_with_witness() {
        // λ = (1, 3) via a = (0.5, 1.5), b = (0.5, 1.5).
        let e = EigenData::new(vec![c(0.5, 0.0), c(1.5, 0.0)], vec![c(0.5, 0.0), c(1.5, 0.0)]).unwrap();
        let r = check_assumptions(&e, 0.1, 1.0, 5, 5).unwrap();
        assert!(!r.nonresonance.passed);
        assert_eq!(r.nonresonance.min_modulus, 0.0);
        assert_eq!(brute_min_resonance(&e.lambda(), 5, 5), 0.0);
        let w = r.nonresonance.witness.clone().unwrap();
        let dot: Complex64 = w.n.dot(&e.lambda()) + w.k as f64 - e.lambda()[w.j];
        assert_eq!(dot.norm(), 0.0);
        // n = (3, 0), k = 0, j = 1 is one of the resonances: 3·1 - 3 = 0.
        let n = MultiIndex::new(vec![3, 0]);
        assert_eq!((n.dot(&e.lambda()) - e.lambda()[1]).norm(), 0.0);
        assert!(r.gate(false).unwrap_err().to_string().contains("(non_res)"));
    }

    #[test]
    fn positivity_and_bounds() {
        let e = EigenData::scalar(-0.5, 0.5);
        let r = check_assumptions(&e, 0.1, 1.0, 4, 4).unwrap();
        assert_eq!(r.positivity.offending, Some((Side::A, 0)));
        assert!(check_assumptions(&e, 0.1, 1.0, 1, 4).is_err());
        assert!(check_assumptions(&e, 0.0, 1.0, 4, 4).is_err());
    }

    #[test]
    fn margins_do_not_increase_with_bounds() {
        let e = EigenData::new(vec![c(0.3, 0.1), c(0.7, 0.0)], vec![c(0.45, 0.0), c(1.1, -0.2)]).unwrap();
        let mut prev = (f64::INFINITY, f64::INFINITY);
        for bound in [2, 4, 8, 16] {
            let r = check_assumptions(&e, 0.01, 2.0, bound, bound).unwrap();
            assert!(r.diophantine.worst_margin <= prev.0);
            assert!(r.nonresonance.min_modulus <= prev.1);
            prev = (r.diophantine.worst_margin, r.nonresonance.min_modulus);
        }
    }

    #[test]
    fn symmetric_scalar_geometry() {
        let g = saddle_geometry(&EigenData::scalar(0.5, 0.5), 10, 50, None).unwrap();
        assert!(g.c_m.iter().all(|(_, z)| z.norm() == 0.0));
        assert_eq!(g.k_samples, vec![c(0.0, 0.0)]);
        assert_eq!(g.c, c(0.0, 0.0));
        assert_eq!(g.c0, 0.0);
        assert!((g.rho_min - 1.05).abs() < 1e-15);
    }

    #[test]
    fn two_dimensional_real_segment() {
        let e = EigenData::new(vec![c(0.5, 0.0), c(0.5, 0.0)], vec![c(1.5, 0.0), c(0.5, 0.0)]).unwrap();
        let g = saddle_geometry(&e, 8, 101, Some(c(0.25, 0.0))).unwrap();
        // g(t, 1-t) = t / (1 + t) on [0, 1/2].
        for (i, z) in g.k_samples.iter().enumerate() {
            let t = i as f64 / 100.0;
            assert!((z - c(t / (1.0 + t), 0.0)).norm() < 1e-15);
        }
        assert!((g.rho_min - 1.3125).abs() < 1e-14);
        for (_, z) in &g.c_m {
            assert!(g.hull_contains(*z, 1e-12));
        }
    }

    #[test]
    fn positive_real_scalar_has_c0_equal_c() {
        for (a, b) in [(0.3, 0.8), (1.7, 0.2), (0.5, 0.5)] {
            let g = saddle_geometry(&EigenData::scalar(a, b), 4, 10, None).unwrap();
            assert_eq!(g.c0, g.c.re);
            assert_eq!(g.c.im, 0.0);
            assert!(matches!(g.circle_minus, CircleOrLine::Line { .. }));
        }
    }

    #[test]
    fn complex_spectra_give_genuine_circles() {
        let e = EigenData::new(vec![c(0.4, 0.3)], vec![c(0.9, -0.2)]).unwrap();
        let g = saddle_geometry(&e, 4, 10, None).unwrap();
        match g.circle_minus {
            CircleOrLine::Circle { center, radius } => {
                for p in [c(1.0, 0.0), c(g.c0, 0.0), g.c] {
                    assert!(((p - center).norm() - radius).abs() < 1e-12);
                }
            }
            other => panic!("expected circle, got {other:?}"),
        }
    }

    #[test]
    fn c_m_inside_hull_and_rho_min_monotone() {
        let e = EigenData::new(
            vec![c(0.4, 0.1), c(0.9, 0.0), c(0.3, -0.2)],
            vec![c(0.6, 0.0), c(0.35, 0.2), c(1.2, 0.0)],
        )
        .unwrap();
        let center = Some(c(0.1, 0.05));
        let mut prev = 0.0;
        for (deg, samples) in [(3, 9), (6, 17), (12, 33), (20, 65)] {
            let g = saddle_geometry(&e, deg, samples, center).unwrap();
            assert!(g.rho_min >= prev);
            prev = g.rho_min;
            for (_, z) in &g.c_m {
                assert!(g.hull_contains(*z, 1e-2), "{z}");
            }
        }
    }

    #[test]
    fn resonant_direction_is_an_error() {
        let e = EigenData::new(vec![c(0.5, 0.0), c(-0.5, 0.0)], vec![c(0.5, 0.0), c(-0.5, 0.0)]).unwrap();
        assert!(matches!(
            saddle_geometry(&e, 3, 11, None),
            Err(Error::ResonantDirection { .. })
        ));
    }
}
