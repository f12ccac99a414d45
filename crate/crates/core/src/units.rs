//! dB / dBm conversions with an explicit unit tag.
//!
//! Power-ratio dB converts with `10^(x/10)`; absolute dBm additionally
//! carries the 30 dB offset to Watts. Amplitude (20 log10) conversions are
//! intentionally absent: every gain in this crate is a power quantity.

use crate::{Error, Result};

/// Unit tag distinguishing a relative power ratio from an absolute power.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DbUnit {
    /// Relative power ratio in dB.
    Db,
    /// Absolute power in dBm (referenced to 1 mW).
    Dbm,
}

/// A dB-scale scalar with an explicit unit tag.
///
/// Construction rejects non-finite values, so conversions are infallible.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Decibel {
    value: f64,
    unit: DbUnit,
}

impl Decibel {
    /// A relative power ratio in dB.
    pub fn db(value: f64) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::NonFinite { name: "dB value", value });
        }
        Ok(Self { value, unit: DbUnit::Db })
    }

    /// An absolute power in dBm.
    pub fn dbm(value: f64) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::NonFinite { name: "dBm value", value });
        }
        Ok(Self { value, unit: DbUnit::Dbm })
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn unit(&self) -> DbUnit {
        self.unit
    }

    /// Converts to linear scale: a dimensionless ratio for dB, Watts for dBm.
    pub fn to_linear(&self) -> f64 {
        match self.unit {
            DbUnit::Db => db_to_linear(self.value),
            DbUnit::Dbm => dbm_to_watts(self.value),
        }
    }
}

/// dB power ratio to linear.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Linear power ratio to dB.
pub fn linear_to_db(ratio: f64) -> f64 {
    10.0 * ratio.log10()
}

/// dBm to Watts.
pub fn dbm_to_watts(dbm: f64) -> f64 {
    db_to_linear(dbm - 30.0)
}

/// Watts to dBm.
pub fn watts_to_dbm(watts: f64) -> f64 {
    linear_to_db(watts) + 30.0
}
