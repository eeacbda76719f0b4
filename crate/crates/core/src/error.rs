use thiserror::Error;

use crate::systole::SearchResult;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("minimal polynomial is not monic")]
    NotMonic,
    #[error("minimal polynomial must have degree at least 1")]
    ZeroDegree,
    #[error("degree {0} exceeds the supported maximum of {max}", max = crate::number_field::MAX_DEGREE)]
    DegreeTooLarge(usize),
    #[error("minimal polynomial is not squarefree")]
    NotSquarefree,
    #[error("minimal polynomial has {real} real roots, expected {degree}")]
    NotTotallyReal { real: usize, degree: usize },
    #[error("minimal polynomial is reducible (monic factor {factor:?})")]
    Reducible { factor: Vec<i64> },
    #[error("operands belong to different number fields")]
    FieldMismatch,
    #[error("element has {got} coordinates, field degree is {expected}")]
    WrongLength { got: usize, expected: usize },
    #[error("the zero element does not generate a nonzero ideal")]
    ZeroElement,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("ideal norm {0} is too large to factor by trial division")]
    NormTooLargeToFactor(String),
    #[error("matrix does not have determinant 1")]
    NotUnimodular,
    #[error("matrix is not in the principal congruence subgroup")]
    NotInGamma,
    #[error("y0 vanishes (trace is exactly 2)")]
    ZeroY0,
    #[error("{what} exceeded cap {cap}")]
    CapExceeded { what: &'static str, cap: u64 },
    #[error("trace {0} is not hyperbolic")]
    NotHyperbolic(f64),
    #[error("not totally hyperbolic: embeddings {indices:?} have |tr| <= 2")]
    NotTotallyHyperbolic { indices: Vec<usize> },
    #[error("real matrix is degenerate (det = {det})")]
    DegenerateMatrix { det: f64 },
    #[error("point is not in the upper half plane (y = {0})")]
    NotInUpperHalfPlane(f64),
    #[error("ideal norm {0} is too small (need N(I) > 2)")]
    NormTooSmall(String),
    #[error("search budget of {cap} candidates exceeded")]
    BudgetExceeded { cap: u64, partial: Box<SearchResult> },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid descriptor at {path}: {message}")]
    Descriptor { path: String, message: String },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn descriptor(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Descriptor { path: path.into(), message: message.into() }
    }
}
