use thiserror::Error;

use crate::quad::QuadResult;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0}")]
    Domain(String),

    #[error("grading error: {0}")]
    Grading(String),

    #[error("quadrature did not converge after {} levels (error estimate {})", .0.levels, .0.error_estimate.to_scientific(3))]
    NoConvergence(Box<QuadResult>),

    #[error("integrand returned a non-finite value at t = {0}")]
    NonFiniteSample(String),

    #[error("lemma violated for p = {p}: got {got}")]
    LemmaViolation { p: u32, got: String },

    #[error("expected {expected} arguments, got {got}")]
    Arity { expected: usize, got: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
