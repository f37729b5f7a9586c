use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("n = {n} exceeds the enumeration limit {limit}")]
    LimitExceeded { n: usize, limit: usize },

    #[error("invalid sequence: {0}")]
    InvalidSequence(String),

    #[error("invalid pattern: {0}")]
    InvalidPattern(String),

    #[error("pattern family violation: {0}")]
    FamilyViolation(String),

    #[error("rep is undefined on the empty partition")]
    EmptyPartition,

    #[error("series constant term {0} is not invertible")]
    NonInvertibleConstantTerm(String),

    #[error("series constant term must be 1, found {0}")]
    ConstantTermNotOne(String),

    #[error("no power series solution: {0}")]
    NoSeriesSolution(String),

    #[error("derivative at the initial value is singular: {0}")]
    SingularDerivative(String),

    #[error("Newton iteration failed to gain order: {0}")]
    NoConvergence(String),

    #[error("unsupported pattern family for {what}; applicable methods: {hint}")]
    UnsupportedFamily { what: String, hint: String },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("v = {0} makes a required constant term vanish")]
    VSpecializationSingular(String),

    #[error("patterns have different lengths ({0} vs {1})")]
    PatternLengthMismatch(usize, usize),

    #[error("bijection invariant violated: {0}")]
    InvariantViolation(String),

    #[error("parse error: {0}")]
    Parse(String),
}
