//! 3GPP Urban Micro (UMi) pathloss at 3 GHz carrier, noise budget, and the
//! deployment geometry that maps the destination position to link gains.
//!
//! Channel gain in dB, including antenna gains:
//!
//! ```text
//! beta(d) = G_t + G_r + | -37.5 - 22.0  * log10(d / 1 m)   (LOS)
//!                       | -35.1 - 36.7 * log10(d / 1 m)    (NLOS)
//! ```
//!
//! Both branches are defined for distances of at least 10 m; shorter links
//! are a hard error. Shadow fading is omitted so the model is deterministic.

use crate::linkmath::{require_finite, require_positive, LinkGains};
use crate::units::{dbm_to_watts, Decibel};
use crate::{Error, Result};

/// Thermal noise power spectral density at room temperature, dBm/Hz.
pub const THERMAL_NOISE_DBM_PER_HZ: f64 = -174.0;

/// Validity bound of the UMi pathloss model in meters.
pub const MIN_MODEL_DISTANCE_M: f64 = 10.0;

/// Transmitter and receiver antenna gains in dBi.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AntennaGains {
    pub g_t_dbi: f64,
    pub g_r_dbi: f64,
}

impl AntennaGains {
    pub fn new(g_t_dbi: f64, g_r_dbi: f64) -> Result<Self> {
        require_finite("g_t_dbi", g_t_dbi)?;
        require_finite("g_r_dbi", g_r_dbi)?;
        Ok(Self { g_t_dbi, g_r_dbi })
    }
}

/// UMi channel gain at distance `d` meters, as a dB power ratio.
pub fn pathloss_umi(d: f64, los: bool, ant: &AntennaGains) -> Result<Decibel> {
    require_finite("d", d)?;
    if d < MIN_MODEL_DISTANCE_M {
        return Err(Error::DistanceBelowModel { value: d });
    }
    let branch = if los {
        -37.5 - 22.0 * d.log10()
    } else {
        -35.1 - 36.7 * d.log10()
    };
    Decibel::db(ant.g_t_dbi + ant.g_r_dbi + branch)
}

/// Deployment layout: source and IRS/relay at fixed elevated positions, the
/// destination on a parallel line at horizontal offset `d1` from the source.
///
/// Link distances: source-surface is the horizontal separation (both ends
/// elevated), source-destination and surface-destination each combine the
/// horizontal gap with the vertical offset.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geometry {
    src_irs_distance: f64,
    vertical_offset: f64,
    d1: f64,
}

impl Geometry {
    pub fn new(src_irs_distance: f64, vertical_offset: f64, d1: f64) -> Result<Self> {
        require_positive("src_irs_distance", src_irs_distance)?;
        require_positive("vertical_offset", vertical_offset)?;
        require_positive("d1", d1)?;
        Ok(Self { src_irs_distance, vertical_offset, d1 })
    }

    pub fn src_irs_distance(&self) -> f64 {
        self.src_irs_distance
    }

    pub fn vertical_offset(&self) -> f64 {
        self.vertical_offset
    }

    pub fn d1(&self) -> f64 {
        self.d1
    }

    pub fn with_d1(&self, d1: f64) -> Result<Self> {
        Self::new(self.src_irs_distance, self.vertical_offset, d1)
    }

    /// Source to destination distance.
    pub fn source_dest_distance(&self) -> f64 {
        self.d1.hypot(self.vertical_offset)
    }

    /// IRS/relay to destination distance.
    pub fn irs_dest_distance(&self) -> f64 {
        (self.src_irs_distance - self.d1).hypot(self.vertical_offset)
    }
}

/// Bandwidth and receiver noise figure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseBudget {
    pub bandwidth_hz: f64,
    pub noise_figure_db: f64,
}

impl NoiseBudget {
    pub fn new(bandwidth_hz: f64, noise_figure_db: f64) -> Result<Self> {
        require_positive("bandwidth_hz", bandwidth_hz)?;
        require_finite("noise_figure_db", noise_figure_db)?;
        Ok(Self { bandwidth_hz, noise_figure_db })
    }
}

/// Noise power in Watts: thermal floor plus `10 log10(B)` plus noise figure.
pub fn noise_power(nb: &NoiseBudget) -> f64 {
    let dbm = THERMAL_NOISE_DBM_PER_HZ + 10.0 * nb.bandwidth_hz.log10() + nb.noise_figure_db;
    dbm_to_watts(dbm)
}

/// Link gains for the deployment: LOS source-surface and surface-destination
/// channels, NLOS direct channel, and the line-of-sight product gain for the
/// surface path.
pub fn scenario_gains(
    geo: &Geometry,
    ant_src_dbi: f64,
    ant_irs_dbi: f64,
    ant_dest_dbi: f64,
) -> Result<LinkGains> {
    let sr = pathloss_umi(
        geo.src_irs_distance(),
        true,
        &AntennaGains::new(ant_src_dbi, ant_irs_dbi)?,
    )?;
    let rd = pathloss_umi(
        geo.irs_dest_distance(),
        true,
        &AntennaGains::new(ant_irs_dbi, ant_dest_dbi)?,
    )?;
    let sd = pathloss_umi(
        geo.source_dest_distance(),
        false,
        &AntennaGains::new(ant_src_dbi, ant_dest_dbi)?,
    )?;
    LinkGains::los_product(sd.to_linear(), sr.to_linear(), rd.to_linear())
}
