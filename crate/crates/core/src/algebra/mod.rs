//! Truncated series arithmetic.
//!
//! Series in `w ∈ C^d` have polynomial coefficients in `(x - c)` ([`XPoly`]),
//! stored sparsely by [`MultiIndex`]. All operations truncate at the series'
//! order `N` and use plain double-precision complex arithmetic.

mod multi_index;
mod point;
mod series;
mod xpoly;

pub use multi_index::MultiIndex;
pub use point::PointSeries;
pub use series::{
    jacobian_apply, monomial, scalar_compose, series_compose, series_eval, series_invert,
    FrozenSeries, ScalarSeries, WSeries,
};
pub use xpoly::XPoly;
