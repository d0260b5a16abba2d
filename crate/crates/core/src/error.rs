use thiserror::Error;

use crate::expr::ParseError;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("parameter u = {u} lies outside the domain [{lo}, {hi}]")]
    OutOfDomain { u: f64, lo: f64, hi: f64 },

    #[error("invalid interval [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },

    #[error("torsal ruling at u = {u}: director speed {speed:e} is below tolerance")]
    TorsalRuling { u: f64, speed: f64 },

    #[error("degenerate director at u = {u}: |d| = {norm:e}")]
    DegenerateDirector { u: f64, norm: f64 },

    #[error("surface is not skew at u = {u}: parameter of distribution {delta:e}")]
    NonSkew { u: f64, delta: f64 },

    #[error("standard gauge violated at u = {u}: {condition} residual {residual:e} exceeds {tolerance:e}")]
    GaugeViolation {
        u: f64,
        condition: &'static str,
        residual: f64,
        tolerance: f64,
    },

    #[error("curve has no third-order jets; standardize needs expression-backed input")]
    MissingDerivatives,

    #[error("frame integration failed at u = {u}")]
    IntegrationFailure { u: f64 },

    #[error("striction {sigma} at u = {u} is outside (-pi/2, pi/2] or zero")]
    InvalidSigma { u: f64, sigma: f64 },

    #[error("initial frame is not a right-handed orthonormal frame")]
    InvalidFrame,

    #[error("invariant samples are invalid: {0}")]
    InvalidSamples(String),

    #[error("unknown gallery surface `{0}`")]
    UnknownGalleryName(String),

    #[error("unknown parameter `{param}` for gallery surface `{surface}`")]
    UnknownParameter { surface: String, param: String },

    #[error("parameter `{param}` = {value} is out of range: {reason}")]
    ParamOutOfRange {
        param: String,
        value: f64,
        reason: &'static str,
    },

    #[error("zero tangent direction")]
    ZeroDirection,

    #[error("direction field of {family} is degenerate at (u, v) = ({u}, {v})")]
    DegenerateField {
        family: &'static str,
        u: f64,
        v: f64,
    },

    #[error("empty grid")]
    EmptyGrid,

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error("invalid surface spec: {0}")]
    InvalidSpec(String),
}
