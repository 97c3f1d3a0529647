use thiserror::Error;

/// Everything that can go wrong in this crate.
///
/// Decoding failures (bad JSON, bad rational literals, malformed
/// permutations) are separated from mathematically invalid inputs by
/// [`Error::is_malformed`], which front ends use to pick exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid rational literal {literal:?}: {reason}")]
    Rational { literal: String, reason: &'static str },

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("malformed permutation {name}: {reason}")]
    MalformedPermutation { name: &'static str, reason: String },

    #[error("decomposition has no components")]
    EmptyDecomposition,

    #[error("component {index}: {field} must be positive")]
    NonPositive { index: usize, field: &'static str },

    #[error("duplicate component id {0:?}")]
    DuplicateId(String),

    #[error("length mismatch: decomposition has {expected} components, got {found} entries")]
    LengthMismatch { expected: usize, found: usize },

    #[error("entry {0} is negative")]
    NegativeEntry(usize),

    #[error("foliation has no positive coefficient")]
    ZeroFoliation,

    #[error("certificate is 0/0 and carries no information")]
    IndeterminateCertificate,

    #[error("general foliation needs at least one informative certificate")]
    NoCertificates,

    #[error("rays are not absolutely continuous")]
    NotComparable,

    #[error("flow parameter {0} leaves the representable range")]
    NonFiniteFlow(f64),

    #[error("torus modulus must have finite coordinates and positive imaginary part")]
    InvalidTorus,

    #[error("curve class ({p}, {q}) is not primitive")]
    NonPrimitiveCurve { p: i64, q: i64 },

    #[error("origami is disconnected: orbit of square 1 has {orbit} of {n} squares")]
    Disconnected { orbit: usize, n: usize },

    #[error("index {index} out of range (len {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("cylinder matching is not a bijection: {0}")]
    InvalidMatching(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    /// True when the input could not be decoded at all, as opposed to
    /// decoding fine but violating a mathematical precondition.
    pub fn is_malformed(&self) -> bool {
        matches!(
            self,
            Error::Rational { .. } | Error::Json(_) | Error::MalformedPermutation { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
