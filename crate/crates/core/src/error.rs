use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::matcore::CMatrix;

/// Named residuals attached to a numerical failure.
pub type Residuals = BTreeMap<String, f64>;

/// Errors produced by the inverse computations and generators.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("matrix has {rows}x{cols} shape, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },

    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("matrix has index {index} > 1 and therefore no group inverse")]
    NoGroupInverse { index: usize },

    #[error("no (b,c)-inverse: rank(cab) = {rank_cab}, rank(b) = {rank_b}, rank(c) = {rank_c}")]
    NoBcInverse {
        rank_cab: usize,
        rank_b: usize,
        rank_c: usize,
    },

    #[error("core-EP routes disagree (max residual {max_residual:e})")]
    RouteMismatch {
        max_residual: f64,
        candidates: Vec<CMatrix>,
    },

    #[error("numerical verification failed in {context}: {residuals:?}")]
    NumericalFailure {
        context: &'static str,
        residuals: Residuals,
    },

    #[error("dimension {dim} exceeds the cap of {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("pair is not ordered: a is not below b in the core-EP order")]
    OrderViolation,

    #[error("inconsistent generator specification: {0}")]
    InvalidSpec(String),
}

/// Result alias for this crate.
pub type Result<T> = core::result::Result<T, Error>;
