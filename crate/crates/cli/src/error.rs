use std::fmt;

use thiserror::Error;

/// Source position, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("{span}: syntax error: {message}")]
    Syntax { span: Span, message: String },

    #[error("{span}: {message}")]
    Invalid { span: Span, message: String },

    #[error("{message}")]
    Usage { message: String },

    #[error("json: {0}")]
    Json(String),

    #[error("{span}: {source}")]
    MathAt { span: Span, source: mvcurl_core::Error },

    #[error(transparent)]
    Math(#[from] mvcurl_core::Error),
}

/// Process exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_MATH: i32 = 3;

fn core_code(e: &mvcurl_core::Error) -> i32 {
    use mvcurl_core::Error::*;
    match e {
        ZeroDenominator | Pole | ZeroFunction | NotPoisson | NotExact | NonLinearMap | InvalidStructureConstants(_) => {
            EXIT_MATH
        }
        DimensionMismatch { .. }
        | IndexOutOfRange { .. }
        | GradeMismatch { .. }
        | NonUnitDensity
        | InvalidChart(_)
        | NotPolynomial(_) => EXIT_INVALID,
    }
}

impl DslError {
    pub fn exit_code(&self) -> i32 {
        match self {
            DslError::Syntax { .. } | DslError::Invalid { .. } | DslError::Usage { .. } | DslError::Json(_) => {
                EXIT_INVALID
            }
            DslError::MathAt { source, .. } => core_code(source),
            DslError::Math(e) => core_code(e),
        }
    }

    pub(crate) fn invalid(span: Span, message: impl Into<String>) -> Self {
        DslError::Invalid { span, message: message.into() }
    }

    pub(crate) fn usage(message: impl Into<String>) -> Self {
        DslError::Usage { message: message.into() }
    }
}

pub type Result<T> = std::result::Result<T, DslError>;
