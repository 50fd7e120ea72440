use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("words have different lengths ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },

    #[error("letter {letter} at position {position} is outside the alphabet [1..{alphabet}]")]
    LetterOutOfRange {
        letter: usize,
        position: usize,
        alphabet: usize,
    },

    #[error("matrix was not produced by ball throwing; no throw trace is available")]
    NoThrowTrace,

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("not a permutation: {0}")]
    InvalidPermutation(String),

    #[error("n = {n} is too large for enumeration (limit {limit})")]
    TooLargeForEnumeration { n: usize, limit: usize },

    #[error(
        "exact solve at n = {n} exceeds the dense solver budget (n <= {limit}); use bracket mode"
    )]
    OverBudget { n: usize, limit: usize },

    #[error("c must be positive and finite, got {0}")]
    NonPositiveC(f64),

    #[error("no lower-branch solution for c = {0} (requires c > 1; zero-minimum regime)")]
    NoLowerBranch(f64),

    #[error("invalid regime: {0}")]
    InvalidRegime(String),

    #[error("invalid experiment plan: {0}")]
    InvalidPlan(String),

    #[error("per-trial invariant violated at n = {n}, trial {trial}: {what}")]
    Coherence { n: usize, trial: u64, what: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
