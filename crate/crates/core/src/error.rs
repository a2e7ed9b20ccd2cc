use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Malformed line in a constants override file.
    #[error("{source_name}:{line}: {message}")]
    ConstantsParse {
        source_name: String,
        line: usize,
        message: String,
    },

    #[error("unknown constant '{key}' (valid keys: {})", valid.join(", "))]
    UnknownConstant { key: String, valid: Vec<String> },

    /// A value outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch for {argument}: expected {expected}, found {found}")]
    Dimension {
        argument: String,
        expected: String,
        found: String,
    },

    #[error("unit expression error at position {position}: {message}")]
    UnitParse { position: usize, message: String },

    #[error("unsupported grammar at position {position}: {message}")]
    UnsupportedGrammar { position: usize, message: String },

    #[error("ill-posed boundary value problem: {0}")]
    WellPosedness(String),

    #[error("grid mismatch: expected {expected} values, found {found}")]
    GridMismatch { expected: usize, found: usize },

    #[error("quadrature did not converge: achieved error {achieved:e}, requested {requested:e}")]
    Quadrature { achieved: f64, requested: f64 },

    #[error("singular tridiagonal system at row {row}")]
    Singular { row: usize },

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
