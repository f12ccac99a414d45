//! Optimal DF power allocation, element-count thresholds for the IRS to beat
//! relaying, and transmit-power minimization under a rate constraint.
//!
//! The relay-supported network switches between two modes. When the direct
//! path is stronger than the source-relay path (`beta_sd > beta_sr`) the
//! relay cannot help and the best DF strategy degenerates to plain SISO with
//! all power in phase one. Otherwise the optimal split equalizes the decode
//! constraint at the relay with the combining SNR at the destination.

use crate::linkmath::{self, IrsConfig, LinkGains};
use crate::{Error, Result};

/// Which branch of the DF optimization is active.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DfMode {
    /// Direct path dominates; relay stays silent and all power goes to
    /// phase one.
    SisoFallback,
    /// Relay path dominates; the two-phase split is active.
    DfActive,
}

/// Result of the two-phase DF power optimization under `p = (p1 + p2) / 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DfPowerSplit {
    pub p1: f64,
    pub p2: f64,
    pub mode: DfMode,
}

/// Rate-maximizing DF power split for an average power budget `p`.
pub fn optimal_df_power_split(p: f64, gains: &LinkGains) -> DfPowerSplit {
    if gains.beta_sd() > gains.beta_sr() {
        return DfPowerSplit { p1: 2.0 * p, p2: 0.0, mode: DfMode::SisoFallback };
    }
    // Denominator is positive in this branch: beta_sd <= beta_sr and
    // beta_rd > 0.
    let denom = gains.beta_sr() + gains.beta_rd() - gains.beta_sd();
    DfPowerSplit {
        p1: 2.0 * p * gains.beta_rd() / denom,
        p2: 2.0 * p * (gains.beta_sr() - gains.beta_sd()) / denom,
        mode: DfMode::DfActive,
    }
}

/// DF rate with the mode flag that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DfRate {
    pub rate: f64,
    pub mode: DfMode,
}

/// Maximum repetition-coded DF rate over all power splits with average
/// power `p`.
///
/// Equals [`linkmath::rate_df_fixed`] evaluated at the optimal split; in the
/// fallback branch that is the half-pre-log rate through the source-relay
/// bottleneck with `p1 = 2p`.
pub fn rate_df_opt(p: f64, gains: &LinkGains, sigma2: f64) -> Result<DfRate> {
    linkmath::require_nonnegative("p", p)?;
    linkmath::require_positive("sigma2", sigma2)?;
    if gains.beta_sd() > gains.beta_sr() {
        let rate = 0.5 * (1.0 + 2.0 * p * gains.beta_sr() / sigma2).log2();
        return Ok(DfRate { rate, mode: DfMode::SisoFallback });
    }
    let denom = gains.beta_sr() + gains.beta_rd() - gains.beta_sd();
    let snr = 2.0 * p * gains.beta_rd() * gains.beta_sr() / (denom * sigma2);
    Ok(DfRate { rate: 0.5 * (1.0 + snr).log2(), mode: DfMode::DfActive })
}

/// Real-valued element-count threshold above which the IRS beats DF
/// relaying, with its integer refinement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElementThreshold {
    /// Right-hand side of the strict inequality `N > value`.
    pub value: f64,
    /// Smallest element count satisfying the strict inequality, clamped
    /// to at least one element.
    pub min_integer_n: u32,
    /// Set when the direct path dominates (`beta_sd > beta_sr`) and any
    /// surface with at least one element already wins.
    pub always_wins: bool,
}

fn refine_threshold(value: f64, always_wins: bool) -> ElementThreshold {
    let min_integer_n = if value < 1.0 {
        1
    } else {
        // Strict inequality: the first winning integer is floor(value) + 1.
        (value.floor() + 1.0) as u32
    };
    ElementThreshold { value, min_integer_n, always_wins }
}

/// Element count needed for the IRS rate to exceed the optimized DF rate at
/// transmit power `p`.
///
/// Rejects `p == 0`; use [`min_elements_low_snr_limit`] for the vanishing
/// power limit.
pub fn min_elements_to_beat_df(
    p: f64,
    gains: &LinkGains,
    alpha: f64,
    sigma2: f64,
) -> Result<ElementThreshold> {
    if p == 0.0 {
        return Err(Error::ZeroPowerThreshold);
    }
    if gains.beta_sd() > gains.beta_sr() {
        return Ok(refine_threshold(0.0, true));
    }
    let denom = gains.beta_sr() + gains.beta_rd() - gains.beta_sd();
    let snr_df = 2.0 * p * gains.beta_rd() * gains.beta_sr() / (denom * sigma2);
    let value = ((((1.0 + snr_df).sqrt() - 1.0) * sigma2 / p).sqrt() - gains.beta_sd().sqrt())
        / (alpha * gains.beta_irs().sqrt());
    Ok(refine_threshold(value, false))
}

/// Vanishing-power limit of [`min_elements_to_beat_df`] under the
/// line-of-sight construction `beta_irs = beta_sr * beta_rd`.
pub fn min_elements_low_snr_limit(gains: &LinkGains, alpha: f64) -> ElementThreshold {
    if gains.beta_sd() > gains.beta_sr() {
        return refine_threshold(0.0, true);
    }
    let denom = gains.beta_sr() + gains.beta_rd() - gains.beta_sd();
    let value = ((1.0 / denom).sqrt()
        - gains.beta_sd().sqrt() / (gains.beta_sr() * gains.beta_rd()).sqrt())
        / alpha;
    refine_threshold(value, false)
}

/// Rate constraint in bit/s/Hz.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateTarget(f64);

impl RateTarget {
    pub fn new(r_bar: f64) -> Result<Self> {
        if !r_bar.is_finite() {
            return Err(Error::NonFinite { name: "r_bar", value: r_bar });
        }
        if r_bar <= 0.0 {
            return Err(Error::OutOfRange { name: "r_bar", constraint: "> 0", value: r_bar });
        }
        Ok(Self(r_bar))
    }

    pub fn r_bar(&self) -> f64 {
        self.0
    }
}

/// Transmit power for the SISO scheme to achieve the target rate.
pub fn power_siso(target: &RateTarget, beta_sd: f64, sigma2: f64) -> f64 {
    ((2f64).powf(target.r_bar()) - 1.0) * sigma2 / beta_sd
}

/// Transmit power for the IRS scheme to achieve the target rate.
pub fn power_irs(target: &RateTarget, gains: &LinkGains, irs: &IrsConfig, sigma2: f64) -> f64 {
    let amp = gains.beta_sd().sqrt()
        + f64::from(irs.n_elements()) * irs.alpha() * gains.beta_irs().sqrt();
    ((2f64).powf(target.r_bar()) - 1.0) * sigma2 / (amp * amp)
}

/// Transmit power for DF relaying (without mode selection) to achieve the
/// target rate. The squared pre-log shows up as the `2^(2*r_bar)` factor.
pub fn power_df(target: &RateTarget, gains: &LinkGains, sigma2: f64) -> f64 {
    let scale = (2f64).powf(2.0 * target.r_bar()) - 1.0;
    if gains.beta_sd() > gains.beta_sr() {
        scale * sigma2 / gains.beta_sd()
    } else {
        let denom = gains.beta_sr() + gains.beta_rd() - gains.beta_sd();
        scale * denom * sigma2 / (2.0 * gains.beta_rd() * gains.beta_sr())
    }
}

/// Mode chosen by the power-minimizing relay-supported network.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransmitMode {
    Siso,
    Df,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModePower {
    pub power: f64,
    pub mode: TransmitMode,
}

/// Transmit power when the relay-supported network may fall back to plain
/// SISO transmission: the cheaper of the two modes.
pub fn power_df_mode(target: &RateTarget, gains: &LinkGains, sigma2: f64) -> ModePower {
    let siso = power_siso(target, gains.beta_sd(), sigma2);
    let df = power_df(target, gains, sigma2);
    if siso <= df {
        ModePower { power: siso, mode: TransmitMode::Siso }
    } else {
        ModePower { power: df, mode: TransmitMode::Df }
    }
}
