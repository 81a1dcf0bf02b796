use crate::poly::{ParseError, PolyError};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid flag type: {0}")]
    InvalidFlag(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("leading monomial {0} involves parameters; the quotient is not presented as a free module")]
    ParametricLeadingMonomial(String),
    #[error("standard monomials are infinite: no pure power of {0} is a leading monomial")]
    InfiniteStaircase(String),
    #[error("elements belong to different rings")]
    ContextMismatch,
    #[error("residue system degenerate: {0}")]
    ResidueDegenerate(String),
    #[error("residue value is not a polynomial in the parameters: {0}")]
    NonPolynomialResidue(String),
    #[error("`{0}` is not a linear combination of first Chern classes")]
    NotDivisor(String),
    #[error("element is not weighted-homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("invalid specialization: {0}")]
    Specialization(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("cache: {0}")]
    Cache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Machine-readable category of an [`Error`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorCode {
    Usage,
    ResourceCap,
    Math,
    Io,
}

impl ErrorCode {
    pub fn as_str(&self) -> &'static str {
        match self {
            ErrorCode::Usage => "usage",
            ErrorCode::ResourceCap => "resource_cap",
            ErrorCode::Math => "math",
            ErrorCode::Io => "io",
        }
    }
}

impl Error {
    pub fn code(&self) -> ErrorCode {
        match self {
            Error::Poly(_)
            | Error::Parse(_)
            | Error::InvalidFlag(_)
            | Error::ContextMismatch
            | Error::NotDivisor(_)
            | Error::NotHomogeneous(_)
            | Error::Specialization(_)
            | Error::InvalidPartition(_) => ErrorCode::Usage,
            Error::ResourceLimit(_) => ErrorCode::ResourceCap,
            Error::ParametricLeadingMonomial(_)
            | Error::InfiniteStaircase(_)
            | Error::ResidueDegenerate(_)
            | Error::NonPolynomialResidue(_) => ErrorCode::Math,
            Error::Cache(_) | Error::Io(_) | Error::Json(_) => ErrorCode::Io,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
