use thiserror::Error;

/// Errors raised by the numerical constructions in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CrError {
    #[error("length ratio {ratio} is not an integer within {tol:e}")]
    NonIntegerRatio { ratio: f64, tol: f64 },

    #[error("level F0 = {f0} lies outside the periodic window ({lo}, {hi})")]
    OutsideWindow { f0: f64, lo: f64, hi: f64 },

    #[error("integration step too large: first-integral drift {drift:e} exceeds {limit:e}")]
    StepTooLarge { drift: f64, limit: f64 },

    #[error("no cone metric exists: {0}")]
    NoSolution(String),

    #[error("curvature derivative did not vanish again before t = {horizon}")]
    EventNotFound { horizon: f64 },

    #[error("bracketed root search failed: {0}")]
    NoRootFound(String),

    #[error("point lies on the circle y = 0 where the chart is singular")]
    PoleOfChart,

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl CrError {
    /// Variant name, used verbatim in CLI reports.
    pub fn name(&self) -> &'static str {
        match self {
            CrError::NonIntegerRatio { .. } => "NonIntegerRatio",
            CrError::OutsideWindow { .. } => "OutsideWindow",
            CrError::StepTooLarge { .. } => "StepTooLarge",
            CrError::NoSolution(_) => "NoSolution",
            CrError::EventNotFound { .. } => "EventNotFound",
            CrError::NoRootFound(_) => "NoRootFound",
            CrError::PoleOfChart => "PoleOfChart",
            CrError::InvalidInput(_) => "InvalidInput",
        }
    }
}

pub type Result<T> = std::result::Result<T, CrError>;
