use thiserror::Error;

/// Error type shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },

    #[error("{name} must be {constraint}, got {value}")]
    OutOfRange {
        name: &'static str,
        constraint: &'static str,
        value: f64,
    },

    #[error("link distance {value} m is below the 10 m validity bound of the UMi pathloss model")]
    DistanceBelowModel { value: f64 },

    #[error("transmit power must be positive for the finite-SNR element threshold; use the low-SNR limit instead")]
    ZeroPowerThreshold,

    #[error("joint phase grid has {points} points, above the exhaustive budget of {budget}; reduce N or the resolution, or use the coordinate search")]
    SearchSpaceTooLarge { points: u128, budget: u128 },

    #[error("no rate crossing found for N in [1, {n_max}]")]
    ThresholdNotFound { n_max: u32 },

    #[error("total-power minimum not bracketed within N <= {n_max}")]
    MinimumNotBracketed { n_max: u32 },

    #[error("source-IRS and IRS-destination channel vectors differ in length: {sr} vs {rd}")]
    LengthMismatch { sr: usize, rd: usize },

    #[error("invalid sweep specification: {0}")]
    InvalidSweep(String),

    #[error("config error: {0}")]
    Config(String),
}
