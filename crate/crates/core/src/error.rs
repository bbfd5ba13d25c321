use thiserror::Error;

/// Errors raised by the symbolic kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("coordinate index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("pole: denominator vanishes at the evaluation point")]
    Pole,

    #[error("expected grade {expected}, found {found}")]
    GradeMismatch { expected: usize, found: usize },

    #[error("volume density, multiplier or divisor must be non-zero")]
    ZeroFunction,

    #[error("bivector is not Poisson: [pi, pi] does not vanish")]
    NotPoisson,

    #[error("bivector is not exact: its curl does not vanish")]
    NotExact,

    #[error("volume form must have unit density for the coordinate formula")]
    NonUnitDensity,

    #[error("residual map failed the linearity spot check")]
    NonLinearMap,

    #[error("invalid structure constants: {0}")]
    InvalidStructureConstants(String),

    #[error("invalid chart: {0}")]
    InvalidChart(String),

    #[error("polynomial coefficients required: {0}")]
    NotPolynomial(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn same_dim(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { left, right })
    }
}
