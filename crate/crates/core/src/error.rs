use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the kernel reports as an error rather than as a failed check.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("patch mismatch: {left} vs {right} base coordinates")]
    PatchMismatch { left: usize, right: usize },

    #[error("shape mismatch in {context}: expected {expected}, found {found}")]
    Shape {
        context: &'static str,
        expected: String,
        found: String,
    },

    #[error("coordinate index {index} out of range for {dim} coordinates")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("invalid patch: {0}")]
    InvalidPatch(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid document: {0}")]
    Document(String),

    #[error("{what} is not antisymmetric: {detail}")]
    NotAntisymmetric { what: &'static str, detail: String },

    #[error("unsupported Schouten bracket of degrees ({0}, {1})")]
    UnsupportedDegree(usize, usize),

    #[error("structural failure: {0}")]
    Structural(String),

    #[error("not a Lie algebroid: {0}")]
    NotAlgebroid(String),

    #[error("quotient is a local Lie algebra only, not an algebroid: {0}")]
    LocalLieOnly(String),

    #[error("bivector is not Poisson: [Pi,Pi] component {index:?} = {defect}")]
    NotPoisson { index: Vec<usize>, defect: String },
}

impl Error {
    pub(crate) fn shape(context: &'static str, expected: impl ToString, found: impl ToString) -> Self {
        Error::Shape {
            context,
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }
}
