use crate::bandwidth::ConvergenceTrace;

/// Errors produced by the estimation pipeline.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("need at least {min} points, got {got}")]
    TooFewPoints { got: usize, min: usize },

    #[error("non-finite coordinate in point {index}")]
    NonFiniteCoordinate { index: usize },

    #[error("gap fraction must lie in (0, 1), got {0}")]
    InvalidGapFraction(f64),

    #[error("epsilon must be positive, got {0}")]
    InvalidEpsilon(f64),

    #[error("degenerate {axis} axis: all coordinate gaps are zero")]
    DegenerateAxis { axis: &'static str },

    #[error("spacing must be positive, got {0}")]
    InvalidSpacing(f64),

    #[error("point {index} at ({x}, {y}) falls outside the grid")]
    PointOutsideGrid { index: usize, x: f64, y: f64 },

    #[error("sigma_tilde must be positive, got {0}")]
    InvalidSigmaTilde(f64),

    #[error("inverse transform has imaginary residue {residue:.3e} above tolerance {tolerance:.3e}")]
    NonRealInverse { residue: f64, tolerance: f64 },

    #[error("zero variance: correlation of a constant array is undefined")]
    ZeroVariance,

    #[error("mismatched array lengths: {a} vs {b}")]
    LengthMismatch { a: usize, b: usize },

    #[error("bandwidth selection did not converge within {max_iter} iterations (last delta {last_delta:.3e})")]
    NoConvergence {
        max_iter: usize,
        last_delta: f64,
        trace: ConvergenceTrace,
    },

    #[error("bandwidth too coarse for grid: window span {width_px} px is below the minimum of 5")]
    BandwidthTooCoarse { width_px: usize },

    #[error("threshold must lie in [0, 1), got {0}")]
    InvalidThreshold(f64),

    #[error("no clusters detected: peak set is empty")]
    NoClustersDetected,

    #[error("k = {k} exceeds the number of points ({n})")]
    TooManyClusters { k: usize, n: usize },

    #[error("initial centroids must be distinct (duplicates at index {index})")]
    DuplicateCentroids { index: usize },

    #[error("cluster spec list is empty")]
    EmptySpecList,

    #[error("invalid cluster spec at index {index}: {reason}")]
    InvalidClusterSpec { index: usize, reason: String },

    #[error("direct-sum oracle limited to {max} occupied pixels, field has {got}")]
    OracleTooLarge { got: usize, max: usize },

    #[error("csv parse error at line {line}: {message}")]
    CsvParse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
