//! Deterministic link-budget analysis comparing three ways of serving a
//! single-antenna destination: direct (SISO) transmission, transmission
//! supported by an intelligent reflecting surface (IRS), and repetition-coded
//! decode-and-forward (DF) relaying.
//!
//! The library provides closed-form achievable rates, optimal DF power
//! allocation, element-count thresholds for the IRS to beat relaying,
//! transmit-power minimization under a rate constraint, total-power and
//! energy-efficiency models, a 3GPP Urban Micro channel model, brute-force
//! verifiers for every closed form, and a sweep engine that emits plot-ready
//! tables.
//!
//! All quantities are kept in linear SI units internally (Watts and
//! dimensionless power gains); dB and dBm appear only at interfaces.

pub mod channel3gpp;
pub mod energy;
pub mod linkmath;
pub mod oracle;
pub mod powerctl;
pub mod scenario;
pub mod sweep;
pub mod units;

mod error;

pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;
