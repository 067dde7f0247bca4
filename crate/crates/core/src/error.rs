use thiserror::Error;

/// Errors raised by group construction and the algebra built on top of it.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed group spec {0:?}")]
    MalformedSpec(String),
    #[error("invalid Cayley table: {0}")]
    InvalidTable(String),
    #[error("group order {order} exceeds the configured cap {cap}")]
    OrderCap { order: usize, cap: usize },
    #[error("{0} is not a subgroup")]
    NotSubgroup(String),
    #[error("subgroup is not normal in the given overgroup")]
    NotNormal,
    #[error("subgroups belong to different parent groups")]
    ParentMismatch,
    #[error("morphisms are not composable: middle groups differ")]
    MiddleMismatch,
    #[error("invalid Goursat data: {0}")]
    InvalidGoursat(String),
    #[error("group map is not {0}")]
    MapProperty(&'static str),
    #[error("elements belong to different algebra contexts")]
    ContextMismatch,
    #[error("group {0} is not a member of the configured set")]
    NotInContext(String),
    #[error("no epimorphisms from {from} onto {onto}")]
    NoEpimorphisms { from: String, onto: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("cache document: {0}")]
    Cache(String),
}

/// Errors from exact scalar arithmetic and specialization.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("no value assigned to the variable for prime {0}")]
    MissingPrime(u64),
    #[error("denominator vanishes at the specialization point")]
    VanishingDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero polynomial has no degree")]
    ZeroPolynomial,
    #[error("polynomial division is not exact")]
    InexactDivision,
    #[error("malformed ell spec {0:?}")]
    MalformedEll(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
