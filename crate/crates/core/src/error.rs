use thiserror::Error;

/// Errors raised by series evaluation, polynomial evaluation and the harness.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("base q = {0} is not admissible (need q != 0 and |q| != 1)")]
    InvalidBase(String),
    #[error("infinite product requires |q| < 1 (got |q| = {0})")]
    DivergentProduct(f64),
    #[error("infinite product needs more than {0} factors")]
    TermCapExceeded(usize),
    #[error("denominator factor vanishes at term {index}")]
    ZeroDenominator { index: usize },
    #[error("series did not converge within {0} terms")]
    NoConvergence(usize),
    #[error("nonterminating series outside its convergence region: {0}")]
    DivergenceRegion(String),
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("non-finite value produced in {0}")]
    NonFinite(&'static str),
    #[error("quadrature did not reach tolerance {tol:e} (estimate {estimate:e})")]
    QuadratureFailure { tol: f64, estimate: f64 },
    #[error("no admissible parameter draw after {0} attempts")]
    DomainExhausted(usize),
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("unknown function `{0}`")]
    UnknownFunction(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
}

impl Error {
    /// Short machine-readable name used in JSON reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidBase(_) => "InvalidBase",
            Error::DivergentProduct(_) => "DivergentProduct",
            Error::TermCapExceeded(_) => "TermCapExceeded",
            Error::ZeroDenominator { .. } => "ZeroDenominator",
            Error::NoConvergence(_) => "NoConvergence",
            Error::DivergenceRegion(_) => "DivergenceRegion",
            Error::DomainError(_) => "DomainError",
            Error::NonFinite(_) => "NonFinite",
            Error::QuadratureFailure { .. } => "QuadratureFailure",
            Error::DomainExhausted(_) => "DomainExhausted",
            Error::UnknownIdentity(_) => "UnknownIdentity",
            Error::UnknownFunction(_) => "UnknownFunction",
            Error::BadParameter(_) => "BadParameter",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
