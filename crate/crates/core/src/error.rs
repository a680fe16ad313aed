use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("{what} index {index} out of range 1..={max}")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        max: usize,
    },

    #[error("non-finite value: {0}")]
    NonFinite(String),

    #[error("non-finite amplitude accumulated at screen index {i}, qubit state {e}")]
    NonFiniteAmplitude { i: usize, e: usize },

    #[error("negative density {value} at screen index {i}")]
    NegativeDensity { i: usize, value: f64 },

    #[error("profile is empty")]
    EmptyProfile,

    #[error("peak threshold must lie in (0, 1), got {0}")]
    InvalidThreshold(f64),

    #[error("no fringes: {found} peaks inside the central lobe, need at least 3")]
    NoFringes { found: usize },

    #[error("no local minimum found")]
    NoMinimum,

    #[error("no local maximum found beyond the first minimum")]
    NoSecondaryMaximum,

    #[error("profiles were computed with different configurations")]
    MismatchedConfigs,

    #[error("behavior {0} supplied more than once")]
    DuplicateBehavior(String),
}
