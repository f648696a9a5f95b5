use thiserror::Error;

pub type Result<T> = std::result::Result<T, CkfError>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CkfError {
    #[error("no image given for variable {0}")]
    MissingImage(String),
    #[error("variable mismatch: {0}")]
    VariableMismatch(String),
    #[error("variable collision: {0}")]
    VariableCollision(String),
    #[error("not a Lie algebra: {0}")]
    NotALieAlgebra(String),
    #[error("not a subalgebra: {0}")]
    NotASubalgebra(String),
    #[error("not an involutive automorphism: {0}")]
    NotAnInvolution(String),
    #[error("invalid symmetric pair: {0}")]
    InvalidPair(String),
    #[error("spectrum of ad({0}) is not rational; use catalog root data")]
    IrrationalSpectrum(String),
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("rank {rank} exceeds the configured bound {bound}")]
    RankTooLarge { rank: usize, bound: usize },
    #[error("invalid root data: {0}")]
    InvalidRootData(String),
    #[error("unsupported family: {0}")]
    UnsupportedFamily(String),
    #[error("parity violation: {0}")]
    ParityViolation(String),
    #[error("parameter violation: {0}")]
    ParameterViolation(String),
    #[error("pair is not of type (C,R): {0}")]
    NotTypeCR(String),
    #[error("input pair is not basic")]
    NotBasicInput,
    #[error("half-signature does not square to the signature")]
    LiftMismatch,
    #[error("candidate ill-formed: {0}")]
    CandidateIllFormed(String),
    #[error("parse error at line {line}, field `{field}`: {message}")]
    Parse { line: usize, field: String, message: String },
    #[error("validation error in `{entry}`: {invariant}")]
    Validation { entry: String, invariant: String },
    #[error("cannot resolve pair selector `{0}`")]
    UnresolvedSelector(String),
    #[error("I/O error: {0}")]
    Io(String),
}
