use std::fmt;

use thiserror::Error;

/// Which equation a weak Drazin inverse satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `X A^{k+1} = A^k`
    Left,
    /// `A^{k+1} X = A^k`
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Left => f.write_str("left"),
            Side::Right => f.write_str("right"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix data has {got} entries, expected {rows}x{cols}")]
    EntryCount { rows: usize, cols: usize, got: usize },
    #[error("matrix contains a non-finite entry")]
    NonFinite,
    #[error("matrix must have at least one row and one column")]
    Empty,
    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is numerically singular (smallest singular value {sigma_min:e})")]
    Singular { sigma_min: f64 },
    #[error("the zero matrix has no Hartwig-Spindelböck form")]
    ZeroMatrix,
    #[error("index {index} exceeds 1")]
    IndexTooLarge { index: usize },
    #[error(
        "not a minimal rank {side} weak Drazin inverse (residual {residual:e}, rank {rank_x} vs rank(A^D) {rank_ad})"
    )]
    NotMrwd {
        side: Side,
        residual: f64,
        rank_x: usize,
        rank_ad: usize,
    },
    #[error("range and null space arguments are not complementary")]
    NotComplementary,
    #[error("{which} is not idempotent (residual {residual:e})")]
    NotIdempotent { which: &'static str, residual: f64 },
    #[error("infeasible generator request: {0}")]
    InfeasibleSpec(String),
    #[error("Drazin axioms violated beyond tolerance (residuals {0:?})")]
    DrazinResidual([f64; 3]),
    #[error("invalid tolerance: {0}")]
    InvalidTolerance(String),
    #[error("singular value decomposition did not converge")]
    NoConvergence,
    #[error("invalid matrix JSON: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
