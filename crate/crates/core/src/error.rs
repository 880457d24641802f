use thiserror::Error;

/// Errors produced by the library and surfaced by the CLI.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown function '{name}'; available: {available}")]
    UnknownFunction { name: String, available: String },

    #[error("theta = {theta} lies outside [-pi, pi]")]
    ThetaOutOfRange { theta: f64 },

    #[error("'{name}' is undefined at theta = {theta} ({kind} singularity)")]
    UndefinedAtSingularity {
        name: String,
        theta: f64,
        kind: String,
    },

    #[error("rho = {rho} lies outside [0, 1)")]
    RhoOutOfRange { rho: f64 },

    #[error(
        "quadrature did not reach tolerance for k = {k}: achieved {achieved:.3e}, requested {requested:.3e}"
    )]
    QuadratureNonConvergence {
        k: usize,
        achieved: f64,
        requested: f64,
    },

    #[error("chain offset {offset} exceeds the configured bound {max}")]
    OffsetBound { offset: i64, max: i64 },

    #[error(
        "truncation-limited: estimated series tail {tail:.3e} at rho = {rho} exceeds {limit:.3e}; raise N or shorten the ladder"
    )]
    TruncationLimited { rho: f64, tail: f64, limit: f64 },

    #[error("invalid rho ladder: {0}")]
    InvalidLadder(String),

    #[error("exclusion radius leaves no grid points on the circle")]
    EmptyGrid,

    #[error("invalid piecewise definition: {0}")]
    InvalidPiecewise(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
