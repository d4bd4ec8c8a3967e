use thiserror::Error;

/// Errors raised by the library.
///
/// The variants are grouped by the CLI exit code they map to, see
/// [`Error::exit_code`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("structural mismatch: {0}")]
    Structure(String),

    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),

    #[error("polynomial is zero, its degree is undefined")]
    ZeroPolynomial,

    #[error("polynomial is not homogeneous; term degrees: {degrees}")]
    NotHomogeneous { degrees: String },

    #[error("grading is not pointed; graded components may be infinite-dimensional")]
    NotPointed,

    #[error("the free parts of the generator degrees contain no lattice basis; run `check` for the full validation report")]
    NoLatticeBasis,

    #[error("presentation invalid: {0}")]
    Validation(String),

    #[error("the weight automorphism admits no invertible matrix: {0}")]
    StructurallySingular(String),

    #[error("component dimension mismatch: dim S_{from} = {source_dim} but dim S_{to} = {target_dim}")]
    DimensionMismatch {
        from: String,
        to: String,
        source_dim: usize,
        target_dim: usize,
    },

    #[error("{0} is not an effective class: it lies outside the weight cone")]
    NotEffectiveClass(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unsupported dialect `{0}` (available: singular-like, macaulay2-like)")]
    UnsupportedDialect(String),

    #[error("report schema version {found} is not supported (expected {expected})")]
    SchemaVersion { found: u32, expected: u32 },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code used by the command line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::SchemaVersion { .. } => 2,
            Error::ResourceLimit(_) => 3,
            _ => 1,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
