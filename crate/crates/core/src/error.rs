use thiserror::Error;

use crate::boolalg::VarId;

/// A violated orthonormality condition, naming the offending member(s).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OnViolation {
    NotOrthogonal(usize, usize),
    NotNormal,
    NotReduced(usize),
}

impl std::fmt::Display for OnViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OnViolation::NotOrthogonal(i, j) => write!(f, "members {i} and {j} are not orthogonal"),
            OnViolation::NotNormal => write!(f, "members do not sum to 1"),
            OnViolation::NotReduced(i) => write!(f, "member {i} is identically 0"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("variable {0} is not declared in the assignment")]
    UndeclaredVariable(VarId),
    #[error("{vars} variables exceed the enumeration cap of {cap} evaluations")]
    TooManyVariables { vars: usize, cap: u64 },
    #[error("variable {0} is assigned twice")]
    ConflictingAssignment(VarId),
    #[error("variable {0} appears twice")]
    DuplicateVariable(VarId),
    #[error("not an orthonormal set: {}", fmt_violations(.0))]
    InvalidOnSet(Vec<OnViolation>),
    #[error("member {0} is identically 0")]
    NotReduced(usize),
    #[error("product of members ({0}, {1}) is identically 0")]
    ProductNotReduced(usize, usize),
    #[error("a chain needs at least one element")]
    EmptyChain,
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("ratio coefficient requested for non-term member {0}")]
    RatioUnavailable(usize),
    #[error("expansions are over different ON sets")]
    BaseMismatch,
    #[error("expected {expected} arguments, got {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("variable {0} does not occur in the function")]
    VariableAbsent(VarId),
    #[error("CNF set has no pure literals")]
    NoPureLiterals,
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("header mismatch: {0}")]
    HeaderMismatch(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("leading coefficient is zero")]
    NotQuadratic,
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid hex field element {0:?}")]
    InvalidHex(String),
    #[error("invalid field modulus: {0}")]
    InvalidModulus(String),
}

fn fmt_violations(v: &[OnViolation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
