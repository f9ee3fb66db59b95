use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid boost: |v| = {speed} must be < 1")]
    InvalidBoost { speed: f64 },

    #[error("frame mismatch: {left} vs {right}")]
    FrameMismatch { left: String, right: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("evanescent regime: |p| = {momentum} < m_s = {mass}")]
    Evanescent { momentum: f64, mass: f64 },

    #[error("singular threshold |p| = m_s = {mass}: energy is zero")]
    SingularThreshold { mass: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("grid mismatch between field states")]
    GridMismatch,

    #[error("time step {dt} exceeds stability bound {bound}")]
    Stability { dt: f64, bound: f64 },

    #[error("evanescent blow-up: modes {modes:?} exceed amplitude cap {cap}")]
    EvanescentBlowup { modes: Vec<i64>, cap: f64 },

    #[error("non-finite field values after step")]
    NonFinite,
}

impl Error {
    /// True for errors caused by the physical regime of the input rather than
    /// by malformed parameters or numerical failure.
    pub fn is_regime(&self) -> bool {
        matches!(
            self,
            Error::Evanescent { .. } | Error::SingularThreshold { .. } | Error::Domain(_)
        )
    }

    pub fn is_blowup(&self) -> bool {
        matches!(self, Error::EvanescentBlowup { .. } | Error::NonFinite)
    }
}
