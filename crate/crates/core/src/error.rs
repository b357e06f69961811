use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("breakpoints and values differ in length ({breakpoints} vs {values})")]
    LengthMismatch { breakpoints: usize, values: usize },

    #[error("a model needs at least two breakpoints, got {0}")]
    TooFewBreakpoints(usize),

    #[error("breakpoints must be strictly increasing (at index {index})")]
    NonMonotone { index: usize },

    #[error("breakpoint {value} at index {index} is negative")]
    NegativeBreakpoint { index: usize, value: f64 },

    #[error("non-finite input value")]
    NonFinite,

    #[error("invalid interval [{a}, {b}]")]
    InvalidInterval { a: f64, b: f64 },

    #[error("block index must be at least 1, got {0}")]
    BlockIndex(i64),

    #[error("tolerance must be positive, got {0}")]
    Tolerance(f64),

    #[error("sequence is empty")]
    EmptySequence,

    #[error("dyadic window is empty")]
    EmptyWindow,

    #[error("evaluation point must be positive, got {0}")]
    NonPositivePoint(f64),

    #[error("principal value diverges at t = {0}: the model jumps there")]
    Singular(f64),

    #[error("model jumps at a support edge; a locally absolutely continuous model is required")]
    JumpModel,

    #[error("quantity is undefined for the zero function")]
    ZeroFunction,

    #[error("{what} = {value} is out of range")]
    OutOfRange { what: &'static str, value: f64 },

    #[error("quadrature did not reach tolerance: value {value}, error estimate {error}")]
    Quadrature { value: f64, error: f64 },

    #[error("oscillatory integral did not converge within {0} half-periods")]
    NoConvergence(usize),
}
