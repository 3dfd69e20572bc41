use thiserror::Error;

pub type Result<T> = std::result::Result<T, BiError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BiError {
    #[error("invalid scalar: {0}")]
    InvalidScalar(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("polynomial not divisible by (x - {root}): remainder {remainder}")]
    NotDivisible { root: String, remainder: String },
    #[error("degenerate parameters: {0}")]
    DegenerateParameters(String),
    #[error("degenerate spectrum: eigenvalue {value} of degree {n} repeats degree {m}")]
    DegenerateSpectrum { n: usize, m: usize, value: String },
    #[error("Casimir is not scalar: degree {degree} gives {got}, degree 0 gives {expected}")]
    NonScalarCasimir { degree: usize, expected: String, got: String },
    #[error("not finitely orthogonal: {0}")]
    NotFinitelyOrthogonal(String),
    #[error("representation is not unitary: B_(k-1) D_k = {value} <= 0 at k = {k}")]
    NotUnitary { k: usize, value: String },
    #[error("truncation failure: B_N = {0} (expected 0)")]
    TruncationFailure(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
