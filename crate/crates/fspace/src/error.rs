use thiserror::Error;

use crate::grid::Domain;

/// Errors produced by grid construction, norm evaluation and experiments.
#[derive(Debug, Error)]
pub enum Error {
    #[error("points_per_axis must be a power of two, got {0}")]
    PointsNotPowerOfTwo(usize),
    #[error("unsupported dimension {0}, expected 1 or 2")]
    UnsupportedDimension(usize),
    #[error("extent must be a positive integer, got {0}")]
    NonPositiveExtent(u32),
    #[error("grid alignment: {0}")]
    Alignment(String),
    #[error("frequency resolution too coarse: {got} samples across the window transition band, need at least {need}")]
    Resolution { got: usize, need: usize },
    #[error("expected a {expected:?}-domain function")]
    DomainMismatch { expected: Domain },
    #[error("operands live on different grids")]
    GridMismatch,
    #[error("non-finite sample value at flat index {0}")]
    NonFiniteSample(usize),
    #[error("window index {index:?} outside active range |k| <= {k_max}")]
    WindowOutOfRange { index: [i64; 2], k_max: i64 },
    #[error("shell index {index} exceeds j_max = {j_max}")]
    ShellOutOfRange { index: u32, j_max: u32 },
    #[error("spectral mass fraction {0:.3e} outside the active frequency range exceeds tolerance 1e-10")]
    SpectralLeak(f64),
    #[error("exponent must be positive, got {0}")]
    NonPositiveExponent(String),
    #[error("parameter out of the stated domain: {0}")]
    OutOfTheoremDomain(String),
    #[error("inner-exponent norm requires p < infinity")]
    InfinitePNotSupported,
    #[error("window function is identically zero")]
    ZeroWindow,
    #[error("geometry: {0}")]
    Geometry(String),
    #[error("degenerate experiment: {0}")]
    DegenerateExperiment(String),
    #[error("invalid {field}: {message}")]
    InvalidConfig { field: String, message: String },
    #[error("failed to parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn config(field: &str, message: impl Into<String>) -> Self {
        Error::InvalidConfig {
            field: field.to_string(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
