use num_bigint::BigUint;

/// Errors produced by construction, verification and bound evaluation.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    /// The Las Vegas resampler hit its safety cap before converging.
    #[error("resampling round limit of {cap} exceeded without convergence")]
    RoundLimitExceeded { cap: u64 },

    /// Exhaustive verification would exceed the configured work budget.
    /// This means "cannot verify", never "verification failed".
    #[error("verification budget exceeded: instance needs {required} tuple-column checks, budget is {budget}")]
    BudgetExceeded { required: BigUint, budget: u64 },

    #[error("column length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    /// A support sequence is not strictly increasing, out of range, or
    /// violates the runlength constraint where one is required.
    #[error("invalid column: {0}")]
    InvalidColumn(String),
}

pub type Result<T> = std::result::Result<T, Error>;
