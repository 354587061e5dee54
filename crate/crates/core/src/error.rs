use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed graph6 input: {0}")]
    MalformedGraph6(String),

    #[error("unsupported size: {what} is {got}, maximum is {max}")]
    UnsupportedSize {
        what: &'static str,
        got: usize,
        max: usize,
    },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Jacobi rotations did not reach the off-diagonal threshold.
    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e}) for matrix {matrix}")]
    NumericFailure {
        sweeps: usize,
        off_norm: f64,
        matrix: String,
    },

    /// Float and exact computations disagree about a discrete quantity.
    #[error("tolerance failure: {0}")]
    ToleranceFailure(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("line {line}: {source}")]
    Line {
        line: usize,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
