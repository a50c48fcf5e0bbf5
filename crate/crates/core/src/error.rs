use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid series spec: {0}")]
    InvalidSeries(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("parse error{}: {msg}", line.map(|l| format!(" at line {l}")).unwrap_or_default())]
    Parse { line: Option<usize>, msg: String },

    #[error("chamber seed lies on the wall of root {0}")]
    SeedOnWall(String),

    #[error("not a root: {0}")]
    NotARoot(String),

    #[error("Weyl group enumeration exceeded the cap of {0} elements")]
    CapExceeded(usize),

    #[error("invalid lattice: {0}")]
    InvalidLattice(String),

    #[error("invalid nerve: {0}")]
    InvalidNerve(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A certificate that a theorem guarantees failed to verify. This always
    /// points at an arithmetic bug.
    #[error("certificate violation: {0}")]
    Certificate(String),

    #[error("numeric oracle failure: {0}")]
    Oracle(String),
}

impl Error {
    pub(crate) fn parse(line: Option<usize>, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
