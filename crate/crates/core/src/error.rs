use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator index {index} out of range 1..={max} for genus {genus}")]
    GeneratorOutOfRange { index: usize, max: usize, genus: usize },

    #[error("genus mismatch: {left} vs {right}")]
    GenusMismatch { left: usize, right: usize },

    #[error("genus must be at least {min}, got {genus}")]
    GenusTooSmall { genus: usize, min: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("word {word} has nonzero abelianization and does not lie in the commutator subgroup")]
    NotInCommutatorSubgroup { word: String },

    #[error("endomorphism does not act trivially on H (generator {generator})")]
    DoesNotFixHomology { generator: usize },

    #[error("truncation unstable for {operation}: value {at_m} at m = {m} but {at_next} at m = {next}; increase the truncation bound")]
    TruncationUnstable {
        operation: String,
        m: usize,
        next: usize,
        at_m: String,
        at_next: String,
    },

    #[error("truncation bound {m} too small for {operation}: need at least {min}")]
    TruncationTooSmall { operation: String, m: usize, min: usize },

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("weight {0} is not dominant")]
    NonDominantWeight(String),

    #[error("zero vector where a nonzero vector is required")]
    ZeroVector,

    #[error("handle count {h} out of range 1..{genus}")]
    HandleOutOfRange { h: usize, genus: usize },

    #[error("unknown check id `{0}`")]
    UnknownCheck(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
