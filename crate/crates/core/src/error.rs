use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty target set")]
    EmptyTargetSet,

    #[error("qubit count must be in 1..={max}, got {n}")]
    InvalidQubitCount { n: usize, max: usize },

    #[error("label {label} does not fit in {n} bits")]
    LabelOutOfRange { label: u64, n: usize },

    #[error("duplicate target label {0}")]
    DuplicateLabel(u64),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{what} out of range: {value} (allowed {allowed})")]
    OutOfRange {
        what: &'static str,
        value: u64,
        allowed: String,
    },

    #[error("conditional on empty branch: prefix {alpha} at depth {depth} has no targets")]
    ConditionalOnEmptyBranch { depth: usize, alpha: u64 },

    #[error("invalid branch probabilities ({p0}, {p1})")]
    InvalidProbabilities { p0: f64, p1: f64 },

    #[error("invalid gate: {0}")]
    InvalidGate(String),

    #[error("circuit on {n} qubits exceeds the limit of {limit}")]
    TooManyQubits { n: usize, limit: usize },

    #[error("gray path endpoints coincide ({0})")]
    DegeneratePath(u64),

    #[error("paper-mode permutation failed validation: {0}; rerun with mode=exact")]
    PermutationValidation(String),

    #[error("circuit is not lowered: {0}")]
    NotLowered(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::TooManyQubits { .. } => 3,
            Error::PermutationValidation(_) => 4,
            Error::Io(_) => 1,
            _ => 2,
        }
    }
}
