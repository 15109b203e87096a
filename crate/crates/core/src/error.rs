use thiserror::Error;

/// Errors raised by the group engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("malformed permutation: {0}")]
    MalformedPermutation(String),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("{what} would need {required} elements, above the cap of {cap}")]
    SizeLimit {
        what: String,
        required: String,
        cap: usize,
    },
    #[error("search space of {tuples} lift tuples exceeds the cap of {cap}")]
    SearchSpace { tuples: String, cap: u64 },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("invalid central identification: {0}")]
    InvalidIdentification(String),
    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("{0}")]
    Parse(String),
    #[error("time budget of {0:?} exhausted")]
    Budget(std::time::Duration),
}

pub type Result<T, E = GroupError> = std::result::Result<T, E>;

impl GroupError {
    pub(crate) fn size(what: impl Into<String>, required: impl ToString, cap: usize) -> Self {
        GroupError::SizeLimit {
            what: what.into(),
            required: required.to_string(),
            cap,
        }
    }
}
