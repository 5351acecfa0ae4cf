use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument lies outside the domain of the function being evaluated.
    #[error("domain error: {0}")]
    Domain(String),

    /// Target value lies outside the range of the function being inverted.
    #[error("range error: {0}")]
    Range(String),

    /// Parameters yield a function that is not strictly increasing.
    #[error("monotonicity error: {0}")]
    Monotonicity(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// A premium solution left its admissible band.
    #[error("infeasible premium: {0}")]
    Infeasible(String),

    #[error("bracket error: objective does not change sign on [{lo}, {hi}]")]
    Bracket { lo: f64, hi: f64 },

    #[error("root finder hit the iteration cap ({iterations}) with residual {residual:e}")]
    MaxIter { iterations: usize, residual: f64 },

    /// The bracket shrank to adjacent floats without meeting the tolerance.
    #[error("root finder stalled at {at} with residual {residual:e}")]
    Stalled { at: f64, residual: f64 },

    #[error("invalid lottery: {0}")]
    Lottery(String),

    #[error("invalid scenario: {0}")]
    Scenario(String),

    #[error("invalid grid: {0}")]
    Grid(String),

    #[error("parse error: {0}")]
    Parse(String),
}
