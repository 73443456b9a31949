use num_complex::Complex64;
use thiserror::Error;

use crate::algebra::MultiIndex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Dimension, truncation order, or center mismatch between series, or a
    /// series lacking a required shape (e.g. not tangent to the identity).
    #[error("structural error: {0}")]
    Structure(String),

    /// Arguments outside the domain of a special function or integral.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid input at {path}: {message}")]
    Invalid { path: String, message: String },

    #[error(
        "near-resonant divisor at m={multi_index}, j={component}, k={degree}: |k + p + q| = {modulus:.3e}"
    )]
    NearResonance {
        multi_index: MultiIndex,
        component: usize,
        degree: usize,
        modulus: f64,
    },

    #[error("internal consistency: {0}")]
    Consistency(String),

    /// One of the standing eigenvalue assumptions failed; the message names it.
    #[error("assumption failure: {0}")]
    Assumption(String),

    #[error("resonant direction: t.(a+b) = {denominator} vanishes at t = {direction:?}")]
    ResonantDirection {
        direction: Vec<f64>,
        denominator: Complex64,
    },

    #[error("path segment passes within {distance:.3e} of the singular point {point}")]
    SingularPath { point: f64, distance: f64 },

    #[error("solution left the polydisk |u| < {radius} at x = {x}")]
    LeftPolydisk { x: Complex64, radius: f64 },

    #[error("step size underflow at x = {x} (step {step:.3e})")]
    StepUnderflow { x: Complex64, step: f64 },

    #[error("schedule invalid: {0}")]
    Schedule(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn structure(msg: impl Into<String>) -> Self {
        Error::Structure(msg.into())
    }

    pub(crate) fn invalid(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Invalid {
            path: path.into(),
            message: message.into(),
        }
    }
}
