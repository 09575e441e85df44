use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("invalid ambient: {0}")]
    InvalidAmbient(String),
    #[error("degree mismatch: `{left}` has degree {left_degree}, `{right}` has degree {right_degree}")]
    DegreeMismatch {
        left: String,
        left_degree: u32,
        right: String,
        right_degree: u32,
    },
    #[error("`{0}` is not tangible in this ambient")]
    NotTangible(String),
    #[error("slice of degree {0} is unbounded: weight-0 generators need an exponent bound")]
    UnboundedSlice(u32),
    #[error("not tangibly finite up to degree {0}")]
    NotTangiblyFinite(u32),
    #[error("invalid relation: {0}")]
    InvalidRelation(String),
    #[error("`{element}` lies beyond the computed bound ({reason})")]
    OutOfBound { element: String, reason: String },
    #[error("not decidable: {0}")]
    Undecidable(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("operands live over different ambients")]
    AmbientMismatch,
    #[error("no alien cover: {0}")]
    NoAlienCover(String),
    #[error("incompatible pair: {0}")]
    Incompatible(String),
    #[error("ill-defined map: {0}")]
    IllDefined(String),
    #[error("limit exceeded: {0}")]
    LimitExceeded(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
