use thiserror::Error;

/// Errors produced by the solver.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid contest: {0}")]
    InvalidContest(String),

    #[error("invalid kernel: {0}")]
    InvalidKernel(String),

    #[error("derivative order {order} exceeds the supported order {max}")]
    UnsupportedOrder { order: usize, max: usize },

    #[error("{what} is undefined at X = {x}")]
    Domain { what: &'static str, x: f64 },

    #[error("polynomial has no root in [0, 1]")]
    NoRootInUnit,

    #[error("f_{period} has no root above the next threshold")]
    ThresholdNotFound { period: usize },

    #[error(
        "recursive and measure-based f_{period} disagree at X = {x}: {recursion} vs {measures}"
    )]
    ConstructionMismatch {
        period: usize,
        x: f64,
        recursion: f64,
        measures: f64,
    },

    #[error("value {0} is outside [0, 1]")]
    OutOfRange(f64),

    #[error("contest too large for this operation: {0}")]
    TooLarge(String),

    #[error("within-period best responses have no fixed point (period {period}, state {state})")]
    NoFixedPoint { period: usize, state: f64 },

    #[error("iteration did not converge after {0} steps")]
    NoConvergence(usize),

    #[error("operation requires a solved contest (status: {0})")]
    NotSolved(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
