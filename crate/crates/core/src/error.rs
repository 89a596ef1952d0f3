use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("no roots of a nonzero constant")]
    ConstantPolynomial,

    #[error("root finder did not converge for degree {degree} (residual {residual:e})")]
    RootsNotConverged { degree: usize, residual: f64 },

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("non-finite integrand value {value} at theta = {theta}")]
    NonFiniteSample { theta: f64, value: f64 },

    /// A precondition on the scalar parameters of a check (|alpha|, |beta|, p, K, mu).
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A hypothesis on the polynomial itself (zero location, shape) could not be certified.
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),

    #[error("sampler accepted {accepted} of {requested} after {draws} draws (acceptance rate {rate:.2e})")]
    SamplerExhausted {
        requested: usize,
        accepted: usize,
        draws: usize,
        rate: f64,
    },

    #[error("unknown check `{0}`")]
    UnknownCheck(String),

    #[error("search failed: {0}")]
    Search(String),
}

impl Error {
    /// Preconditions and hypotheses both mean "the theorem does not apply".
    pub fn is_hypothesis_failure(&self) -> bool {
        matches!(self, Error::Precondition(_) | Error::HypothesisFailed(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
