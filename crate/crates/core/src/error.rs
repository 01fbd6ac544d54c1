use thiserror::Error;

/// Errors raised by the evaluators and identity checks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parameter error: {0}")]
    Parameter(String),
    #[error("series did not converge: {0}")]
    Convergence(String),
    #[error("quadrature did not converge: {0}")]
    NonConvergence(String),
    #[error("pole hit at recursion depth {depth}: {detail}")]
    Pole { depth: usize, detail: String },
    #[error("branch error: {0}")]
    Branch(String),
    #[error("branch path error: {0}")]
    BranchPath(String),
    #[error("branch cut error: {0}")]
    BranchCut(String),
    #[error("Q vanishes at the given point")]
    SingularQ,
    #[error("coordinate {0} is zero")]
    ZeroCoordinate(usize),
    #[error("third coordinate is zero; permute a nonzero coordinate into the last slot first")]
    ZeroX3,
    #[error("unsupported dimension n = {0}")]
    UnsupportedDimension(usize),
}

impl Error {
    /// True for errors that mean "the point is outside where this method applies".
    pub fn is_domain_like(&self) -> bool {
        matches!(
            self,
            Error::Domain(_)
                | Error::Pole { .. }
                | Error::BranchCut(_)
                | Error::BranchPath(_)
                | Error::Branch(_)
                | Error::SingularQ
                | Error::ZeroCoordinate(_)
                | Error::ZeroX3
                | Error::UnsupportedDimension(_)
                | Error::Parameter(_)
        )
    }

    pub fn is_convergence(&self) -> bool {
        matches!(self, Error::Convergence(_) | Error::NonConvergence(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
