use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty alphabet")]
    EmptyAlphabet,
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("class {class} out of range (1..={cap})")]
    ClassOutOfRange { class: usize, cap: usize },
    #[error("alphabet or class mismatch")]
    Mismatch,
    #[error("not primitive")]
    NotPrimitive,
    #[error("constant term must be {expected} for {op}")]
    ConstantTerm { op: &'static str, expected: &'static str },
    #[error("invalid Lie algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid simplicial set: {0}")]
    InvalidSpace(String),
    #[error("space is not connected")]
    Disconnected,
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("relator {0} does not map to the identity")]
    RelatorViolation(usize),
    #[error("not a cocycle: {0}")]
    NotCocycle(String),
    #[error("not a morphism: {0}")]
    NotMorphism(String),
    #[error("complex not pointed; homogeneity unavailable")]
    NotPointed,
    #[error("cup product hypotheses fail: {0}")]
    MasseyUndefined(String),
    #[error("weight-inhomogeneous input: {0}")]
    WeightInhomogeneous(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("malformed JSON: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Semantic input errors versus internal consistency failures; the CLI
    /// maps these onto exit codes 3 and 4.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
