use thiserror::Error;

/// Errors raised by the evaluators and zero finders.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid q parameter {0}: must lie in (0, 1)")]
    InvalidQ(f64),
    #[error("invalid character: {0}")]
    InvalidCharacter(String),
    #[error("evaluation sits on or near a pole: {0}")]
    PoleProximity(String),
    #[error("series does not converge: {0}")]
    NotConvergent(String),
    #[error("term budget of {0} exhausted before the tolerance was met")]
    BudgetExceeded(usize),
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("pole of the continuation in alpha: {0}")]
    PoleAtAlpha(String),
    #[error("pole of the continuation in beta: {0}")]
    PoleAtBeta(String),
    #[error("pole: {0}")]
    PoleError(String),
    #[error("invalid parameters: {0}")]
    ParamError(String),
    #[error("s lies outside the crystal domain: {0}")]
    OutsideCrystalDomain(String),
    #[error("bracket endpoints have the same sign")]
    NoSignChange,
    #[error("bracket contains a pole: {0}")]
    BracketContainsPole(String),
    #[error("search entered the zero-free region Re(s) >= 2nu: {0}")]
    EnteredZeroFreeRegion(String),
    #[error("zero search did not converge: {0}")]
    NotConverged(String),
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("Hurwitz zeta has a pole at s = 1")]
    PoleAtOne,
}

impl Error {
    /// True for errors signalling a mathematical domain problem rather than
    /// a malformed request.
    pub fn is_domain(&self) -> bool {
        !matches!(self, Error::InvalidQ(_) | Error::InvalidCharacter(_) | Error::ParamError(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
