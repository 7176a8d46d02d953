use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A probability fed to `p log p` lies outside `[0, 1]`.
    #[error("probability {0} is outside [0, 1]")]
    Domain(f64),

    /// A weight table violates nonnegativity or normalization.
    #[error("invalid distribution: {0}")]
    Distribution(String),

    /// Caller-supplied parameters are outside the model's validity window.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// Adaptive quadrature ran out of subdivision depth before reaching tolerance.
    #[error("quadrature did not converge in {stage}: estimate {estimate:e}, error bound {error_bound:e}")]
    Convergence {
        stage: String,
        estimate: f64,
        error_bound: f64,
    },

    /// The Bethe-equation fixed point failed or landed outside case II.
    #[error("Bethe solver: {0}")]
    Solver(String),

    /// A closed form left the floating-point range.
    #[error("overflow: {0}")]
    Overflow(String),

    /// Brute-force enumeration above the configured size ceiling.
    #[error("L = {length} exceeds the enumeration ceiling {ceiling} (would need 2^{length} ≈ {work:.3e} configurations)")]
    TooLarge { length: usize, ceiling: usize, work: f64 },
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    /// True for failures of an iterative numerical stage (solver, quadrature, overflow).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Convergence { .. } | Error::Solver(_) | Error::Overflow(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
