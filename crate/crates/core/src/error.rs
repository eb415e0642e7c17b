use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GapError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid angle: {0}")]
    InvalidAngle(String),
    #[error("radicand {0} exceeds 10^12, refusing squarefree canonicalization")]
    RadicandTooLarge(String),
    #[error("cannot combine values over different radicands {0} and {1}")]
    MixedRadicand(String, String),
    #[error("need at least 2 points, got {0}")]
    TooFewPoints(usize),
    #[error("point collision: N exceeds denominator ({n} > {q})")]
    PointCollision { n: usize, q: String },
    #[error("empty circle: N = 0")]
    EmptyCircle,
    #[error("m out of range: {m} is not below N = {n}")]
    IndexOutOfRange { m: usize, n: usize },
}

impl GapError {
    /// True for the errors caused by the circle itself rather than by input syntax.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            GapError::PointCollision { .. } | GapError::EmptyCircle | GapError::TooFewPoints(_)
        )
    }
}

pub type Result<T, E = GapError> = std::result::Result<T, E>;
