use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: String,
        expected: usize,
        found: usize,
    },

    #[error("invalid arrangement: {0}")]
    InvalidArrangement(String),

    #[error("invalid flag: {0}")]
    InvalidFlag(String),

    #[error("arrangement is not essential (no flat of full rank)")]
    NonEssential,

    #[error("flag is not generic at level {q}")]
    NotGeneric { q: usize },

    #[error("stratum {q} has {found} chambers but b_{q} = {expected}")]
    StratumMismatch { q: usize, expected: u64, found: usize },

    #[error("no generic flag found after {attempts} attempts")]
    FlagSearchExhausted { attempts: usize },

    #[error("hyperplanes {indices:?} are dependent in the flag subspace")]
    Dependent { indices: Vec<usize> },

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("chamber basis system in degree {degree} is unsolvable")]
    Unsolvable { degree: usize },

    #[error("structure constant {from} -> {to} does not factor: {detail}")]
    FactorizationFailure { from: String, to: String, detail: String },

    #[error("not a cochain complex in degree {degree}: relative composition norm {ratio:e}")]
    NotAComplex { degree: usize, ratio: f64 },

    #[error("invalid weights: {0}")]
    InvalidWeights(String),
}

impl Error {
    /// Stable snake_case name of the variant, for machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::InvalidArrangement(_) => "invalid_arrangement",
            Error::InvalidFlag(_) => "invalid_flag",
            Error::NonEssential => "non_essential",
            Error::NotGeneric { .. } => "not_generic",
            Error::StratumMismatch { .. } => "stratum_mismatch",
            Error::FlagSearchExhausted { .. } => "flag_search_exhausted",
            Error::Dependent { .. } => "dependent",
            Error::DegreeMismatch { .. } => "degree_mismatch",
            Error::Unsolvable { .. } => "unsolvable",
            Error::FactorizationFailure { .. } => "factorization_failure",
            Error::NotAComplex { .. } => "not_a_complex",
            Error::InvalidWeights(_) => "invalid_weights",
        }
    }
}
