use thiserror::Error;

/// Errors raised by the quaternion, jet, operator and integration layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by a quaternion of norm {norm:e} (below threshold {epsilon:e})")]
    ZeroDivisor { norm: f64, epsilon: f64 },

    #[error("point lies on the real axis (imaginary norm {r:e})")]
    OnRealAxis { r: f64 },

    #[error("spherical chart is degenerate at this point (sin beta = {sin_beta:e})")]
    DegenerateChart { sin_beta: f64 },

    #[error("jet order {0} exceeds the supported maximum of 3")]
    OrderTooHigh(usize),

    #[error("jet orders differ ({left} vs {right})")]
    BasisMismatch { left: usize, right: usize },

    #[error("multi-index of degree {degree} is deeper than jet order {order}")]
    IndexTooDeep { degree: usize, order: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("unknown function `{0}`")]
    UnknownFunction(String),

    #[error("bad parameters for `{name}`: {reason}")]
    BadParams { name: String, reason: String },

    #[error("hypersurface comes within {distance:e} of the real axis")]
    TouchesRealAxis { distance: f64 },

    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn bad_params(name: &str, reason: impl Into<String>) -> Self {
        Error::BadParams {
            name: name.to_string(),
            reason: reason.into(),
        }
    }
}
