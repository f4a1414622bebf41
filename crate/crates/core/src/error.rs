use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("boundary composition is nonzero: {context}")]
    CompositionNonzero { context: String },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix has non-integral entries")]
    NonIntegral,

    #[error("invalid ground ring: {0}")]
    InvalidRing(String),

    #[error("invalid generator `{name}`: {reason}")]
    InvalidGenerator { name: String, reason: String },

    #[error("derivation has no value on generator `{name}`")]
    UndefinedGenerator { name: String },

    #[error("image of {source_term} leaves the truncation window ({detail})")]
    TruncationOverflow { source_term: String, detail: String },

    #[error("element has a component outside the augmentation ideal: {term}")]
    NotInIdeal { term: String },

    #[error("presentation is not quasi-monic: {0}")]
    NotQuasiMonic(String),

    #[error("tate extension requires V_0 = 0, found degree-0 generator `{name}`")]
    UnsupportedV0 { name: String },

    #[error("window too small: {what} needs bound {required}, have {available}")]
    WindowTooSmall {
        what: String,
        required: usize,
        available: usize,
    },

    #[error("degeneracy hypothesis violated: generator `{generator}` has degree {hdeg} >= 2")]
    HypothesisViolated { generator: String, hdeg: u32 },

    #[error("{p} is invertible in {ring}; the witness cannot exist")]
    UnitP { p: i64, ring: String },

    #[error("{count} variables; at most 2 are supported here")]
    TooManyVariables { count: usize },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{0}")]
    Unsupported(String),
}

impl Error {
    /// Stable name of the variant, used in machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::CompositionNonzero { .. } => "CompositionNonzero",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::NonIntegral => "NonIntegral",
            Error::InvalidRing(_) => "InvalidRing",
            Error::InvalidGenerator { .. } => "InvalidGenerator",
            Error::UndefinedGenerator { .. } => "UndefinedGenerator",
            Error::TruncationOverflow { .. } => "TruncationOverflow",
            Error::NotInIdeal { .. } => "NotInIdeal",
            Error::NotQuasiMonic(_) => "NotQuasiMonic",
            Error::UnsupportedV0 { .. } => "UnsupportedV0",
            Error::WindowTooSmall { .. } => "WindowTooSmall",
            Error::HypothesisViolated { .. } => "HypothesisViolated",
            Error::UnitP { .. } => "UnitP",
            Error::TooManyVariables { .. } => "TooManyVariables",
            Error::Parse { .. } => "ParseError",
            Error::Unsupported(_) => "Unsupported",
        }
    }
}
