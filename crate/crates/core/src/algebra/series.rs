use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_complex::Complex64;

use super::{MultiIndex, XPoly};
use crate::error::{Error, Result};

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// A truncated power series in `w ∈ C^d` whose coefficients are polynomials in
/// `(x - c)`. Terms with `|m| > order` are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarSeries {
    dim: usize,
    order: usize,
    center: Complex64,
    terms: BTreeMap<MultiIndex, XPoly>,
}

impl ScalarSeries {
    pub fn zero(dim: usize, order: usize, center: Complex64) -> Self {
        ScalarSeries {
            dim,
            order,
            center,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(dim: usize, order: usize, center: Complex64) -> Self {
        let mut s = ScalarSeries::zero(dim, order, center);
        s.add_term(MultiIndex::zero(dim), &XPoly::constant(center, ONE));
        s
    }

    /// The coordinate function `w_i`.
    pub fn variable(dim: usize, order: usize, center: Complex64, i: usize) -> Self {
        let mut s = ScalarSeries::zero(dim, order, center);
        if order >= 1 {
            s.add_term(MultiIndex::unit(dim, i), &XPoly::constant(center, ONE));
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn center(&self) -> Complex64 {
        self.center
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &XPoly)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, m: &MultiIndex) -> Option<&XPoly> {
        self.terms.get(m)
    }

    pub fn coeff(&self, m: &MultiIndex) -> XPoly {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| XPoly::zero(self.center))
    }

    /// Adds `p · w^m`; silently dropped when `|m| > order`. Exact zeros are pruned.
    pub fn add_term(&mut self, m: MultiIndex, p: &XPoly) {
        if m.degree() > self.order || p.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                existing.add_scaled(p, ONE);
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, p.clone());
            }
        }
    }

    pub fn set_term(&mut self, m: MultiIndex, p: XPoly) {
        if m.degree() > self.order {
            return;
        }
        if p.is_zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, p);
        }
    }

    /// Smallest `|m|` carrying a nonzero coefficient.
    pub fn min_order(&self) -> Option<usize> {
        self.terms.keys().next().map(|m| m.degree())
    }

    pub fn max_x_degree(&self) -> usize {
        self.terms.values().filter_map(|p| p.degree()).max().unwrap_or(0)
    }

    fn check_compatible(&self, other: &ScalarSeries) -> Result<()> {
        if self.dim != other.dim || self.order != other.order || self.center != other.center {
            return Err(Error::structure(format!(
                "series mismatch: (d={}, N={}, c={}) vs (d={}, N={}, c={})",
                self.dim, self.order, self.center, other.dim, other.order, other.center
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &ScalarSeries) -> Result<ScalarSeries> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, p) in &other.terms {
            out.add_term(m.clone(), p);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &ScalarSeries) -> Result<ScalarSeries> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, p) in &other.terms {
            out.add_term(m.clone(), &-p);
        }
        Ok(out)
    }

    pub fn neg(&self) -> ScalarSeries {
        self.scale(-ONE)
    }

    pub fn scale(&self, s: Complex64) -> ScalarSeries {
        let mut out = ScalarSeries::zero(self.dim, self.order, self.center);
        for (m, p) in &self.terms {
            out.add_term(m.clone(), &p.scale(s));
        }
        out
    }

    /// Truncated product.
    pub fn mul(&self, other: &ScalarSeries) -> Result<ScalarSeries> {
        self.check_compatible(other)?;
        let mut acc: BTreeMap<MultiIndex, XPoly> = BTreeMap::new();
        for (m1, p1) in &self.terms {
            let room = self.order - m1.degree();
            for (m2, p2) in &other.terms {
                if m2.degree() > room {
                    break;
                }
                acc.entry(m1.add(m2))
                    .or_insert_with(|| XPoly::zero(self.center))
                    .add_product(p1, p2);
            }
        }
        acc.retain(|_, p| !p.is_zero());
        Ok(ScalarSeries {
            dim: self.dim,
            order: self.order,
            center: self.center,
            terms: acc,
        })
    }

    pub fn mul_poly(&self, p: &XPoly) -> ScalarSeries {
        let mut out = ScalarSeries::zero(self.dim, self.order, self.center);
        for (m, q) in &self.terms {
            out.add_term(m.clone(), &(q * p));
        }
        out
    }

    /// `∂/∂w_i`.
    pub fn derivative(&self, i: usize) -> ScalarSeries {
        let mut out = ScalarSeries::zero(self.dim, self.order, self.center);
        for (m, p) in &self.terms {
            if let Some(lower) = m.lower(i) {
                let e = m.get(i) as f64;
                out.add_term(lower, &p.scale(Complex64::new(e, 0.0)));
            }
        }
        out
    }

    /// Terms of total degree exactly `n`.
    pub fn homogeneous(&self, n: usize) -> ScalarSeries {
        let mut out = ScalarSeries::zero(self.dim, self.order, self.center);
        for (m, p) in self.terms.iter().filter(|(m, _)| m.degree() == n) {
            out.terms.insert(m.clone(), p.clone());
        }
        out
    }

    /// Drops terms of degree above `n` and lowers the truncation order to `n`.
    pub fn truncate(&self, n: usize) -> ScalarSeries {
        let mut out = ScalarSeries::zero(self.dim, n, self.center);
        for (m, p) in self.terms.iter().filter(|(m, _)| m.degree() <= n) {
            out.terms.insert(m.clone(), p.clone());
        }
        out
    }

    /// Keeps the terms but changes the nominal truncation order (dropping terms
    /// above it when lowering).
    pub fn with_order(&self, n: usize) -> ScalarSeries {
        let mut out = self.truncate(n.min(self.order));
        out.order = n;
        out
    }

    pub fn eval(&self, x: Complex64, w: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(m, p)| p.eval(x) * monomial(m, w))
            .sum()
    }
}

/// `w^m`.
pub fn monomial(m: &MultiIndex, w: &[Complex64]) -> Complex64 {
    m.entries()
        .iter()
        .zip(w)
        .fold(ONE, |acc, (&e, &wi)| acc * wi.powu(e))
}

/// A truncated vector-valued series `w ↦ (F_1(x,w), ..., F_d(x,w))`.
///
/// Nonlinearities and correction steps live here with `min_order >= 2`; maps
/// such as `w + h(x,w)` carry their linear part explicitly.
#[derive(Clone, Debug, PartialEq)]
pub struct WSeries {
    dim: usize,
    order: usize,
    center: Complex64,
    comps: Vec<ScalarSeries>,
}

impl WSeries {
    pub fn zero(dim: usize, order: usize, center: Complex64) -> Self {
        WSeries {
            dim,
            order,
            center,
            comps: vec![ScalarSeries::zero(dim, order, center); dim],
        }
    }

    pub fn identity(dim: usize, order: usize, center: Complex64) -> Self {
        WSeries {
            dim,
            order,
            center,
            comps: (0..dim)
                .map(|i| ScalarSeries::variable(dim, order, center, i))
                .collect(),
        }
    }

    pub fn from_components(comps: Vec<ScalarSeries>) -> Result<Self> {
        let first = comps
            .first()
            .ok_or_else(|| Error::structure("series needs at least one component"))?;
        let (dim, order, center) = (first.dim, first.order, first.center);
        if comps.len() != dim {
            return Err(Error::structure(format!(
                "{} components for dimension {dim}",
                comps.len()
            )));
        }
        for c in &comps {
            first.check_compatible(c)?;
        }
        Ok(WSeries {
            dim,
            order,
            center,
            comps,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn center(&self) -> Complex64 {
        self.center
    }

    pub fn component(&self, j: usize) -> &ScalarSeries {
        &self.comps[j]
    }

    pub fn components(&self) -> &[ScalarSeries] {
        &self.comps
    }

    /// Coefficient of `w^m` in component `j` (zero if absent).
    pub fn coeff(&self, m: &MultiIndex, j: usize) -> XPoly {
        self.comps[j].coeff(m)
    }

    pub fn add_term(&mut self, m: MultiIndex, j: usize, p: &XPoly) {
        self.comps[j].add_term(m, p);
    }

    pub fn set_term(&mut self, m: MultiIndex, j: usize, p: XPoly) {
        self.comps[j].set_term(m, p);
    }

    /// All stored multi-indices (union over components), graded-lex ordered.
    pub fn support(&self) -> BTreeSet<MultiIndex> {
        self.comps
            .iter()
            .flat_map(|c| c.terms.keys().cloned())
            .collect()
    }

    /// Terms as `m ↦ [component polynomials]`, graded-lex ordered.
    pub fn terms(&self) -> BTreeMap<MultiIndex, Vec<XPoly>> {
        self.support()
            .into_iter()
            .map(|m| {
                let v = (0..self.dim).map(|j| self.coeff(&m, j)).collect();
                (m, v)
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    pub fn min_order(&self) -> Option<usize> {
        self.comps.iter().filter_map(|c| c.min_order()).min()
    }

    pub fn max_x_degree(&self) -> usize {
        self.comps.iter().map(|c| c.max_x_degree()).max().unwrap_or(0)
    }

    fn check_compatible(&self, other: &WSeries) -> Result<()> {
        if self.dim != other.dim || self.order != other.order || self.center != other.center {
            return Err(Error::structure(format!(
                "series mismatch: (d={}, N={}, c={}) vs (d={}, N={}, c={})",
                self.dim, self.order, self.center, other.dim, other.order, other.center
            )));
        }
        Ok(())
    }

    fn zip_with(
        &self,
        other: &WSeries,
        op: impl Fn(&ScalarSeries, &ScalarSeries) -> Result<ScalarSeries>,
    ) -> Result<WSeries> {
        self.check_compatible(other)?;
        let comps = self
            .comps
            .iter()
            .zip(&other.comps)
            .map(|(a, b)| op(a, b))
            .collect::<Result<Vec<_>>>()?;
        Ok(WSeries {
            dim: self.dim,
            order: self.order,
            center: self.center,
            comps,
        })
    }

    fn map(&self, op: impl Fn(&ScalarSeries) -> ScalarSeries) -> WSeries {
        WSeries {
            dim: self.dim,
            order: self.order,
            center: self.center,
            comps: self.comps.iter().map(op).collect(),
        }
    }

    pub fn add(&self, other: &WSeries) -> Result<WSeries> {
        self.zip_with(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &WSeries) -> Result<WSeries> {
        self.zip_with(other, |a, b| a.sub(b))
    }

    pub fn neg(&self) -> WSeries {
        self.map(|c| c.neg())
    }

    pub fn scale(&self, s: Complex64) -> WSeries {
        self.map(|c| c.scale(s))
    }

    pub fn homogeneous(&self, n: usize) -> WSeries {
        self.map(|c| c.homogeneous(n))
    }

    pub fn truncate(&self, n: usize) -> WSeries {
        WSeries {
            order: n,
            ..self.map(|c| c.truncate(n))
        }
    }

    pub fn with_order(&self, n: usize) -> WSeries {
        WSeries {
            order: n,
            ..self.map(|c| c.with_order(n))
        }
    }

    /// Applies `op` to every stored coefficient; the results are centered at `center`.
    pub fn map_terms(
        &self,
        center: Complex64,
        op: impl Fn(&MultiIndex, usize, &XPoly) -> XPoly,
    ) -> WSeries {
        let mut out = WSeries::zero(self.dim, self.order, center);
        for (j, c) in self.comps.iter().enumerate() {
            for (m, p) in c.terms() {
                out.set_term(m.clone(), j, op(m, j, p));
            }
        }
        out
    }

    pub fn x_derivative(&self) -> WSeries {
        self.map_terms(self.center, |_, _, p| p.derivative())
    }

    /// The same series with coefficients expanded about another center.
    pub fn recenter(&self, center: Complex64) -> WSeries {
        self.map_terms(center, |_, _, p| p.recenter(center))
    }

    /// `∂F_r/∂w_i` as `jac[r][i]`.
    pub fn jacobian(&self) -> Vec<Vec<ScalarSeries>> {
        self.comps
            .iter()
            .map(|c| (0..self.dim).map(|i| c.derivative(i)).collect())
            .collect()
    }

    /// Returns `h` for a map `H = w + h`, checking that `H` is tangent to the
    /// identity (no constant term and exactly the identity as linear part).
    pub fn split_identity(&self) -> Result<WSeries> {
        let id = WSeries::identity(self.dim, self.order, self.center);
        let h = self.sub(&id)?;
        match h.min_order() {
            Some(p) if p < 2 => Err(Error::structure(format!(
                "map is not tangent to the identity (residual term of order {p})"
            ))),
            _ => Ok(h),
        }
    }

    /// `w + self`.
    pub fn plus_identity(&self) -> WSeries {
        let id = WSeries::identity(self.dim, self.order, self.center);
        self.add(&id).expect("identity shares header")
    }

    pub fn eval(&self, x: Complex64, w: &[Complex64]) -> Vec<Complex64> {
        series_eval(self, x, w)
    }
}

/// Matrix-of-series times vector-of-series, truncated.
pub fn jacobian_apply(jac: &[Vec<ScalarSeries>], v: &WSeries) -> Result<WSeries> {
    let dim = v.dim();
    let comps = jac
        .iter()
        .map(|row| {
            let mut acc = ScalarSeries::zero(dim, v.order(), v.center());
            for (i, entry) in row.iter().enumerate() {
                acc = acc.add(&entry.mul(v.component(i))?)?;
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    WSeries::from_components(comps)
}

/// Memoized products `Π_i P_i^{m_i}` of the substituted coordinates.
struct SubstitutionProducts<'a> {
    coords: &'a [ScalarSeries],
    cache: HashMap<MultiIndex, ScalarSeries>,
}

impl<'a> SubstitutionProducts<'a> {
    fn new(coords: &'a [ScalarSeries]) -> Self {
        let first = &coords[0];
        let mut cache = HashMap::new();
        cache.insert(
            MultiIndex::zero(first.dim),
            ScalarSeries::one(first.dim, first.order, first.center),
        );
        SubstitutionProducts { coords, cache }
    }

    fn get(&mut self, m: &MultiIndex) -> Result<&ScalarSeries> {
        if !self.cache.contains_key(m) {
            let i = m
                .entries()
                .iter()
                .position(|&e| e > 0)
                .expect("nonzero multi-index");
            let lower = m.lower(i).expect("positive entry");
            let coords = self.coords;
            let prod = self.get(&lower)?.mul(&coords[i])?;
            self.cache.insert(m.clone(), prod);
        }
        Ok(&self.cache[m])
    }
}

fn compose_with_coords(f: &WSeries, coords: &[ScalarSeries]) -> Result<WSeries> {
    let mut products = SubstitutionProducts::new(coords);
    let mut comps = vec![ScalarSeries::zero(f.dim, f.order, f.center); f.dim];
    for m in f.support() {
        let prod = products.get(&m)?;
        for (j, out) in comps.iter_mut().enumerate() {
            if let Some(p) = f.comps[j].get(&m) {
                for (mm, q) in prod.terms() {
                    out.add_term(mm.clone(), &(p * q));
                }
            }
        }
    }
    WSeries::from_components(comps)
}

/// Truncation of `f(x, w + shift(x, w))` to the common order.
///
/// `shift` must vanish to order two so that the truncation is consistent.
pub fn series_compose(f: &WSeries, shift: &WSeries) -> Result<WSeries> {
    f.check_compatible(shift)?;
    if let Some(p) = shift.min_order() {
        if p < 2 {
            return Err(Error::structure(format!(
                "composition shift has a term of order {p}; expected order >= 2"
            )));
        }
    }
    let coords: Vec<ScalarSeries> = (0..f.dim)
        .map(|i| {
            ScalarSeries::variable(f.dim, f.order, f.center, i)
                .add(shift.component(i))
                .expect("compatible")
        })
        .collect();
    compose_with_coords(f, &coords)
}

/// Composes a scalar series with `w + shift`.
pub fn scalar_compose(f: &ScalarSeries, shift: &WSeries) -> Result<ScalarSeries> {
    let mut comps = vec![ScalarSeries::zero(f.dim, f.order, f.center); f.dim];
    comps[0] = f.clone();
    let wrapped = WSeries::from_components(comps)?;
    Ok(series_compose(&wrapped, shift)?.comps.swap_remove(0))
}

/// Inverse `K` (in `w`) of a map `H = w + h` tangent to the identity, so that
/// `K(x, H(x, w)) = w` through the truncation order.
///
/// Uses the fixed point `K = u + k`, `k ← -h(x, u + k)`; each sweep fixes one
/// more order, so `N - 1` sweeps suffice.
pub fn series_invert(map: &WSeries) -> Result<WSeries> {
    let h = map.split_identity()?;
    let mut k = WSeries::zero(map.dim, map.order, map.center);
    for _ in 1..map.order.max(1) {
        k = series_compose(&h, &k)?.neg();
    }
    Ok(k.plus_identity())
}

/// Numerical value of the truncated series at `(x, w)`, summed in
/// graded-lexicographic order.
pub fn series_eval(f: &WSeries, x: Complex64, w: &[Complex64]) -> Vec<Complex64> {
    f.comps.iter().map(|c| c.eval(x, w)).collect()
}

/// Evaluates the `x`-coefficients once at a fixed `x`, giving a constant-coefficient
/// series that can be evaluated repeatedly in `w`.
#[derive(Clone, Debug)]
pub struct FrozenSeries {
    comps: Vec<Vec<(MultiIndex, Complex64)>>,
}

impl FrozenSeries {
    pub fn new(f: &WSeries, x: Complex64) -> Self {
        FrozenSeries {
            comps: f
                .comps
                .iter()
                .map(|c| c.terms().map(|(m, p)| (m.clone(), p.eval(x))).collect())
                .collect(),
        }
    }

    pub fn eval(&self, w: &[Complex64]) -> Vec<Complex64> {
        self.comps
            .iter()
            .map(|terms| terms.iter().map(|(m, v)| v * monomial(m, w)).sum())
            .collect()
    }

    pub fn eval_component(&self, j: usize, w: &[Complex64]) -> Complex64 {
        self.comps[j]
            .iter()
            .map(|(m, v)| v * monomial(m, w))
            .fold(ZERO, |a, b| a + b)
    }
}
