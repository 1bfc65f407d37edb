use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole of {function} at s = {re} + {im}i")]
    Pole {
        function: &'static str,
        re: f64,
        im: f64,
    },

    #[error("{function} is singular at s = {re} + {im}i")]
    Singular {
        function: &'static str,
        re: f64,
        im: f64,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("the target a = 0 is excluded (its points are tied to the trivial zeros of zeta)")]
    ZeroTarget,

    #[error("no a-point solution for branch {branch} above 2*pi*e")]
    NoSolution { branch: i64 },

    #[error("Newton iteration did not converge after {iterations} steps (residual {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },

    #[error("Newton iterate drifted to {re} + {im}i ({reason})")]
    Drift {
        re: f64,
        im: f64,
        reason: &'static str,
    },

    #[error("branch {branch}: {source}")]
    Branch {
        branch: i64,
        #[source]
        source: Box<Error>,
    },

    #[error("contour winding {value} is not within {tol} of an integer")]
    Quadrature { value: f64, tol: f64 },
}

impl Error {
    pub(crate) fn with_branch(self, branch: i64) -> Self {
        Error::Branch {
            branch,
            source: Box::new(self),
        }
    }

    /// Branch index of a solver failure, if the error carries one.
    pub fn branch(&self) -> Option<i64> {
        match self {
            Error::Branch { branch, .. } | Error::NoSolution { branch } => Some(*branch),
            _ => None,
        }
    }

    /// True for failures of the a-point solver (as opposed to bad input).
    pub fn is_solver_failure(&self) -> bool {
        match self {
            Error::NonConvergence { .. } | Error::Drift { .. } => true,
            Error::Branch { source, .. } => source.is_solver_failure(),
            _ => false,
        }
    }
}
