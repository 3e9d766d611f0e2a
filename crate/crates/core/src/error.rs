use thiserror::Error;

/// Errors produced by constructors and operations across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("not a member of the group: {0}")]
    NotAMember(String),

    #[error("operands belong to different groups")]
    GroupMismatch,

    #[error("invalid group table: {0}")]
    InvalidTable(String),

    #[error("not a group homomorphism: {0}")]
    NotAHomomorphism(String),

    #[error("invalid object: {0}")]
    InvalidObject(String),

    #[error("morphisms belong to different alphabet instances")]
    InstanceMismatch,

    #[error("morphism typing mismatch: {0}")]
    ShapeMismatch(String),

    #[error("instance has no element layer")]
    NoElementLayer,

    #[error("operation requires a finite group: {0}")]
    NotFinite(String),

    #[error("unknown check suite: {0}")]
    UnknownSuite(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
