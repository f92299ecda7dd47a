use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A subgroup parameter that must be invertible was zero.
    #[error("degenerate parameter: {0}")]
    DegenerateParameter(&'static str),

    #[error("determinant {re}{im:+}i is not 1 within {tolerance:e}")]
    DeterminantNotUnit { re: f64, im: f64, tolerance: f64 },

    /// The coset label leaves the big cell (denominator below cutoff).
    #[error("big-cell violation: |denominator| = {0:e}")]
    BigCellViolation(f64),

    /// The origin is its own double coset and has no H₂ link to other labels.
    #[error("zero coset label")]
    ZeroLabel,

    #[error("grid functions live on different grids")]
    SpecMismatch,

    #[error("invalid grid: {0}")]
    InvalidGrid(&'static str),

    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),

    /// The function does not vanish quadratically at a multiplier pole.
    #[error("unremovable pole at {re}{im:+}i")]
    UnremovablePole { re: f64, im: f64 },

    #[error("wavepacket spectrum is empty")]
    EmptySpectrum,
}
