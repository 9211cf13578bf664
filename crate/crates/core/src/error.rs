use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modules live over different rings")]
    RingMismatch,

    #[error("dimension mismatch: {0}")]
    Shape(String),

    #[error("scale exceeded: {what} needs {needed}, cap is {cap}")]
    ScaleExceeded { what: String, needed: String, cap: usize },

    #[error("module is infinite")]
    InfiniteModule,

    #[error("operation needs a finite ring (Z/m)")]
    InfiniteRing,

    #[error("matrix does not define a homomorphism: {0}")]
    NotWellDefined(String),

    #[error("sequence is not exact: {0}")]
    NotExact(String),

    #[error("element does not lie in the module: {0}")]
    NotAnElement(String),

    #[error("purity criteria disagree: {0}")]
    CriteriaDisagree(String),

    #[error("class hypothesis fails: {0}")]
    InclusionFails(String),

    #[error("theory violation: {0}")]
    TheoryViolation(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn scale(what: impl Into<String>, needed: impl ToString, cap: usize) -> Error {
    Error::ScaleExceeded {
        what: what.into(),
        needed: needed.to_string(),
        cap,
    }
}
