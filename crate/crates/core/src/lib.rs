//! Correction series and analytic linearization maps for nonlinear
//! perturbations of Fuchsian systems with two regular singular points,
//!
//! ```text
//! u' = (A/(x-1) + B/(x+1)) u + f(x,u) / (1 - x^2),
//! ```
//!
//! with diagonal `A`, `B`. The crate computes the unique `x`-independent
//! correction `φ(u)` that makes the corrected system linearizable and the
//! linearizing map `u = H(x,w) = w + h(x,w)`, in two independent ways (a direct
//! order-by-order recursion and a quadratically convergent iteration), and
//! checks the results by integrating the systems along complex paths.

pub mod algebra;
pub mod beta_ops;
pub mod direct;
pub mod error;
pub mod io;
pub mod kam;
pub mod problem;
pub mod spectra;
pub mod verify;

pub use error::{Error, Result};
