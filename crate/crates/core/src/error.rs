use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Error, Debug)]
pub enum Error {
    #[error("all coordinates are zero")]
    AllZero,

    #[error("variable count mismatch: expected {expected}, found {found}")]
    VarMismatch { expected: usize, found: usize },

    #[error("variable index {index} out of range for {num_vars} variables")]
    VarIndex { index: usize, num_vars: usize },

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("quadrature did not converge: estimate {estimate}, error bound {error_bound}")]
    NoConvergence { estimate: f64, error_bound: f64 },

    #[error("integrand produced {count} non-finite values")]
    SingularIntegrand { count: usize },

    #[error("section restricts to zero on the base cycle (factor {factor})")]
    BaseLocusHit { factor: usize },

    #[error("unsupported intersection problem: {0}")]
    UnsupportedShape(String),

    #[error("polarization is not fairly large: slot {slot}: {reason}")]
    NotFairlyLarge { slot: usize, reason: String },

    #[error("matrix is not positive semidefinite: {0}")]
    NotPsd(String),

    #[error("search box holds {candidates} candidates, budget is {budget}")]
    BoxOverflow { candidates: u128, budget: u128 },

    #[error("binary form is not square-free: {0}")]
    NotSquareFree(String),

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Errors caused by malformed user input rather than a failed computation.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::AllZero
                | Error::VarMismatch { .. }
                | Error::VarIndex { .. }
                | Error::Parse { .. }
                | Error::Invalid(_)
                | Error::UnknownSymbol(_)
                | Error::NotSquareFree(_)
                | Error::NotPsd(_)
        )
    }

    /// Stable snake-case name of the variant, for structured reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::AllZero => "all_zero",
            Error::VarMismatch { .. } => "var_mismatch",
            Error::VarIndex { .. } => "var_index",
            Error::Parse { .. } => "parse",
            Error::NoConvergence { .. } => "no_convergence",
            Error::SingularIntegrand { .. } => "singular_integrand",
            Error::BaseLocusHit { .. } => "base_locus_hit",
            Error::UnsupportedShape(_) => "unsupported_shape",
            Error::NotFairlyLarge { .. } => "not_fairly_large",
            Error::NotPsd(_) => "not_psd",
            Error::BoxOverflow { .. } => "box_overflow",
            Error::NotSquareFree(_) => "not_square_free",
            Error::UnknownSymbol(_) => "unknown_symbol",
            Error::Invalid(_) => "invalid",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
        }
    }
}
