use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate spiral: |theta_plus - theta_minus| = pi (theta_plus = {theta_plus}, theta_minus = {theta_minus})")]
    DegenerateSpiral { theta_plus: f64, theta_minus: f64 },

    #[error("non-finite input: {0}")]
    NonFinite(&'static str),

    #[error("degenerate amplitude: d = 0, the oscillatory phase is undefined")]
    DegenerateAmplitude,

    #[error("Gamma has a pole at z = {0}")]
    PoleOfGamma(f64),

    #[error("solution blew up near x = {x} (|p| = {magnitude:e})")]
    BlowUp { x: f64, magnitude: f64 },

    #[error("shooting did not converge after {iterations} iterations (last amplitude mismatch {mismatch:e})")]
    NoConvergence { iterations: usize, mismatch: f64 },

    #[error("fit window [{lo}, {hi}] is too short: {periods:.2} oscillation periods, need at least 5")]
    WindowTooShort { lo: f64, hi: f64, periods: f64 },

    #[error("envelope fit is degenerate: amplitude {0:e} below 1e-10")]
    DegenerateFit(f64),

    #[error("x = {x} is outside the covered range [{lo}, {hi}]")]
    OutOfRange { x: f64, lo: f64, hi: f64 },

    #[error("argument must be nonzero")]
    ZeroArgument,

    #[error("grid too short: need |x| >= {needed}, grid reaches {reached}")]
    GridTooShort { needed: f64, reached: f64 },

    #[error("(t, x) = ({t}, {x}) lies outside the expansion region")]
    RegionViolation { t: f64, x: f64 },

    #[error("tolerance {0:e} outside [1e-13, 1e-6]")]
    BadTolerance(f64),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
