use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by validation and by the individual detection stages.
///
/// Absence of seasonality is not an error; see [`crate::Season::None`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("TooShort: series has {len} observations, at least {min} required")]
    TooShort { len: usize, min: usize },
    #[error("NonFinite: observation at index {index} is not finite")]
    NonFinite { index: usize },
    #[error("NonPositiveDelta: sampling interval must be > 0, got {0}")]
    NonPositiveDelta(f64),
    #[error("InvalidConfig: {0}")]
    InvalidConfig(String),
    #[error("DegreeUnsupported: polynomial degree {0} is not 1 or 2")]
    DegreeUnsupported(usize),
    #[error("InsufficientPoints: {n} points cannot determine a degree-{degree} fit")]
    InsufficientPoints { n: usize, degree: usize },
    #[error("SingularSystem: normal equations are not positive definite")]
    SingularSystem,
    #[error("LengthMismatch: model fitted on {expected} points, series has {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("CutoffOutOfRange: cutoff {0} rad/sample is outside (0, pi)")]
    CutoffOutOfRange(f64),
    #[error("InvalidOrder: filter order must be >= 1")]
    InvalidOrder,
    #[error("SeriesTooShortForFilter: {len} samples, more than {min} required")]
    SeriesTooShortForFilter { len: usize, min: usize },
    #[error("ZeroVariance: series is constant")]
    ZeroVariance,
    #[error("AlreadyDetrended: autocorrelation trend was already removed")]
    AlreadyDetrended,
    #[error("TooFewDistances: {0} distances, at least 2 required")]
    TooFewDistances(usize),
    #[error("TooFewQuotients: {0} quotients, at least 2 required")]
    TooFewQuotients(usize),
    #[error("NoInterval: {0} change points, at least 2 required")]
    NoInterval(usize),
    #[error("InvalidSpec: {0}")]
    InvalidSpec(String),
    #[error("UnknownFamily: {0}")]
    UnknownFamily(String),
}
