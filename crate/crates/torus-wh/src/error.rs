use num_complex::Complex64;
use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("point {xi} lies on a branch cut")]
    BranchCut { xi: Complex64 },
    #[error("configuration error: {0}")]
    Config(String),
    #[error("symbol is not invertible on the contour: min |f| = {min_modulus:e} (max {max_modulus:e})")]
    NotInvertible { min_modulus: f64, max_modulus: f64 },
    #[error("grid does not resolve the phase on sheet {sheet}: step {step:.3} rad at node {node}")]
    Resolution { sheet: u8, node: usize, step: f64 },
    #[error("nonzero sheet indices ({n1}, {n2}); a continuous logarithm needs both zero")]
    Index { n1: i64, n2: i64 },
    #[error("condition failed: {0}")]
    Condition(String),
    #[error("pole on the contour: {0}")]
    PoleOnContour(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("iteration did not converge: {0}")]
    Convergence(String),
    #[error("unsupported middle form: {0}")]
    UnsupportedForm(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("parse error at byte {offset}: expected one of {}", expected.join(", "))]
    Parse { offset: usize, expected: Vec<String> },
    #[error("evaluation error: {0}")]
    Eval(String),
    #[error("context error: {0}")]
    Context(String),
}

pub type Result<T> = std::result::Result<T, Error>;
