use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("arc length {0} is outside [0, pi/3]")]
    Domain(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("chord {index} misses the unit disk (offset {offset})")]
    InvalidChord { index: usize, offset: f64 },

    #[error("degenerate chord arrangement: {0}")]
    Degenerate(String),

    #[error("chords {0} and {1} do not cross inside the disk")]
    ExteriorIntersection(usize, usize),

    #[error("no valid chord set found after {0} attempts")]
    RetriesExhausted(usize),

    #[error("dimension {0} is not supported by this method")]
    UnsupportedDimension(u32),

    #[error("n = {n} exceeds the enumeration bound {bound}")]
    EnumerationBound { n: u64, bound: u64 },

    #[error("variance evaluated to {0}, below the rounding guard")]
    NegativeVariance(f64),

    #[error("standard deviation radicand evaluated to {0}")]
    NegativeRadicand(f64),

    #[error("region count has zero variance at p = {0}")]
    ZeroSigma(f64),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}
