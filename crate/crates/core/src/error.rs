use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed table: {0}")]
    MalformedTable(String),
    #[error("not associative: ({a}·{b})·{c} ≠ {a}·({b}·{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("no two-sided identity")]
    NoIdentity,
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("order exceeds cap {cap}")]
    OrderCapExceeded { cap: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("subgroup is not normal: {0}")]
    NotNormal(String),
    #[error("subset is not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("not a right loop: {0}")]
    NotRightLoop(String),
    #[error("map does not preserve the identity")]
    IdentityNotPreserved,
    #[error("search space exceeds cap {cap}")]
    CapExceeded { cap: usize },
    #[error("kernel is not abelian")]
    KernelNotAbelian,
    #[error("cochain is not a 2-cocycle: {0}")]
    NotACocycle(String),
    #[error("extension is not central")]
    NotCentral,
    #[error("extension has no section attached")]
    NoSection,
    #[error("bad modulus: {0}")]
    BadModulus(String),
    #[error("automorphism data missing: {0}")]
    AutDataMissing(String),
    #[error("relation violated: {0}")]
    RelationViolation(String),
    #[error("subset is not a sub right loop: {0}")]
    NotSubloop(String),
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("unknown group {0:?}")]
    UnknownGroup(String),
    #[error("i/o: {0}")]
    Io(String),
}
