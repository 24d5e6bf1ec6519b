use thiserror::Error;

/// Errors produced by the analysis toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("triangle inequality violated at ({i}, {j}, {k}): d(i,k) = {direct} > d(i,j) + d(j,k) = {via}")]
    TriangleViolation {
        i: usize,
        j: usize,
        k: usize,
        direct: f64,
        via: f64,
    },

    #[error("measure weight at point {index} must be strictly positive, got {value}")]
    NonPositiveMeasure { index: usize, value: f64 },

    #[error("invalid distance matrix: {0}")]
    InvalidMatrix(String),

    #[error("unknown point id {id} (space has {n} points)")]
    UnknownPoint { id: usize, n: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("value {value} outside represented range [{min}, {max}]")]
    OutOfRange { value: f64, min: f64, max: f64 },

    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),

    #[error("include set is not separated: d({a}, {b}) = {dist} < {eps}")]
    IncludeNotSeparated {
        a: usize,
        b: usize,
        dist: f64,
        eps: f64,
    },

    #[error("disconnected: {0}")]
    Disconnected(String),

    #[error("time below chain resolution: t = {t} is below F(eps) at every admissible scale")]
    TimeBelowChainResolution { t: f64 },

    #[error("chain quantities are infinite (no eps-chain joins the points)")]
    InfiniteChain,

    #[error("fit quality: {0}")]
    FitQuality(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error("linear algebra: {0}")]
    Linalg(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
