use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("multidegree too small in variable {variable}: bound {bound}, degree {degree}")]
    MultidegreeTooSmall {
        variable: usize,
        bound: u32,
        degree: u32,
    },

    #[error("insufficient Schur parameters: need r_0..r_{needed}, have {available} entries")]
    InsufficientParameters { needed: usize, available: usize },

    #[error("invalid Schur data: {0}")]
    InvalidSchurData(String),

    #[error("level {level} out of range 0..={max}")]
    LevelOutOfRange { level: usize, max: usize },

    #[error("denominator {modulus:e} below conditioning guard")]
    IllConditioned { modulus: f64 },

    #[error(
        "parameter r_{index} has modulus {modulus} (not a strict Schur function at this depth)"
    )]
    ParameterOnBoundary { index: usize, modulus: f64 },

    #[error("step {step}: numerator not divisible by z (residual {residual:e})")]
    NotDivisible { step: usize, residual: f64 },

    #[error("monomial substitution maps variable {variable} to the zero multi-index")]
    ZeroMultiIndex { variable: usize },

    #[error("non-finite integrand value at {location}")]
    NonFinite { location: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("eta entry {index} is not strictly positive")]
    NonPositiveEta { index: usize },

    #[error("no lattice decomposition within budget (last usable approximant {best_index:?}, last t = {last_t})")]
    LatticeBudget {
        best_index: Option<usize>,
        last_t: String,
    },

    #[error("invalid field element: {0}")]
    Field(String),

    #[error("invalid medium: {0}")]
    InvalidMedium(String),

    #[error("singular transfer system at omega = {omega} (|incident| = {modulus:e})")]
    SingularTransfer { omega: f64, modulus: f64 },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
