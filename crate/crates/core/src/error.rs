use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("divisor is not a unit of the Laurent ring")]
    NonUnitDivisor,
    #[error("variable `{0}` has no assigned value")]
    UnassignedVariable(String),
    #[error("variable `{0}` appears with a negative exponent but was assigned zero")]
    ZeroAssignedToInvertedVariable(String),
    #[error("value is not representable in the target ring: {0}")]
    NotRepresentable(String),
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("degree must be at least 2, got {0}")]
    BadDegree(i64),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is singular")]
    Singular,
    #[error("determinant is not a unit")]
    NonUnitDeterminant,
    #[error("operation needs evaluated entries, found free variables")]
    SymbolicInput,
    #[error("no solution")]
    NoSolution,
    #[error("strand count must be at least {min}, got {n}")]
    BadStrandCount { n: usize, min: usize },
    #[error("words live in different groups (n = {0} vs n = {1})")]
    StrandMismatch(usize, usize),
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("generator index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("free word exceeded {0} letters")]
    LetterCapExceeded(usize),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("representation has no alpha images")]
    MissingAlphaImages,
    #[error("image of alpha_{0} is not an involution")]
    NotInvolution(usize),
    #[error("no non-faithfulness witness found")]
    NoWitnessFound,
    #[error("image of theta^n is not scalar")]
    ImageNotIdentity,
    #[error("not an extension: {0}")]
    NotAnExtension(String),
    #[error("n = {n}, dim = {dim} lies outside the classified range")]
    OutOfClassifiedRange { n: usize, dim: usize },
    #[error("indeterminate at current tolerance: {0}")]
    Indeterminate(String),
    #[error("invariant subspace is not defined over the coefficient field")]
    SubspaceNotRational,
    #[error("invariant subspace search exhausted its retries")]
    SearchExhausted,
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
