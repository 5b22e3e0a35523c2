//! Error type shared across the crate.

#[derive(thiserror::Error, Debug)]
pub enum Error {
    #[error("unknown catalog spec `{0}`")]
    UnknownSpec(String),
    #[error("bound exceeded: {what} has order {order}, bound {bound}")]
    BoundExceeded { what: String, order: u64, bound: u64 },
    #[error("subgroup is not normal in {0}")]
    NotNormal(String),
    #[error("not a subgroup of {0}")]
    NotSubgroup(String),
    #[error("ill-formed homomorphism: {0}")]
    BadHom(String),
    #[error("endpoint mismatch: {0}")]
    EndpointMismatch(String),
    #[error("group mismatch: expected {expected}, got {got}")]
    GroupMismatch { expected: String, got: String },
    #[error("invalid functor spec: {0}")]
    BadSpec(String),
    #[error("unsupported field for this operation: {0}")]
    FieldUnsupported(String),
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error("cache: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Exit code the CLI maps this error to (3 = bound exceeded, 2 = usage).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BoundExceeded { .. } => 3,
            _ => 2,
        }
    }
}
