use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("polynomial has no finite terms")]
    EmptySupport,

    #[error("exponent {0:?} appears more than once")]
    DuplicateExponent(Vec<u32>),

    #[error("polynomial degree {degree} exceeds bound {bound}")]
    DegreeBound { degree: u32, bound: u32 },

    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },

    #[error("ragged matrix: row {row} has {found} entries, expected {expected}")]
    RaggedMatrix { row: usize, expected: usize, found: usize },

    #[error("polynomial {index} is not linear (degree {degree})")]
    NotLinear { index: usize, degree: u32 },

    #[error("row {0} of the coefficient matrix has no finite entry")]
    EmptyRow(usize),

    #[error("cell enumeration exceeded the cap of {cap} search nodes")]
    CapExceeded { cap: u64 },

    #[error("the prevariety is empty")]
    EmptyPrevariety,

    #[error("clause {clause} has {len} literals after normalization, at most 3 are supported")]
    ClauseTooLarge { clause: usize, len: usize },

    #[error("variable {var} is out of range 1..={n_vars}")]
    VariableOutOfRange { var: usize, n_vars: usize },

    #[error("{n_vars} variables exceed the brute-force limit of {max}")]
    TooManyVariables { n_vars: usize, max: usize },

    #[error("expected a polynomial in 2 variables, got {0}")]
    NotPlanar(usize),

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
