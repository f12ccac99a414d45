//! Closed-form achievable rates for the three transmission schemes and the
//! domain types they operate on.
//!
//! The three rates are, with all quantities linear:
//!
//! * SISO:  `log2(1 + p * beta_sd / sigma2)`
//! * IRS:   `log2(1 + p * (sqrt(beta_sd) + N * alpha * sqrt(beta_irs))^2 / sigma2)`
//! * DF:    `(1/2) * log2(1 + min(p1*beta_sr, p1*beta_sd + p2*beta_rd) / sigma2)`
//!
//! The IRS rate assumes each surface element applies its rate-optimal phase
//! shift; the `oracle` module verifies that assumption at the complex-channel
//! level.

use crate::{Error, Result};

pub(crate) fn require_finite(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite { name, value })
    }
}

pub(crate) fn require_positive(name: &'static str, value: f64) -> Result<()> {
    require_finite(name, value)?;
    if value > 0.0 {
        Ok(())
    } else {
        Err(Error::OutOfRange { name, constraint: "> 0", value })
    }
}

pub(crate) fn require_nonnegative(name: &'static str, value: f64) -> Result<()> {
    require_finite(name, value)?;
    if value >= 0.0 {
        Ok(())
    } else {
        Err(Error::OutOfRange { name, constraint: ">= 0", value })
    }
}

/// The four channel-gain magnitudes of a deployment, as linear power gains.
///
/// `beta_irs` is the squared average per-element product gain of the
/// source-surface-destination path. Under the line-of-sight construction
/// where every element sees the same magnitudes as the relay antenna,
/// `beta_irs == beta_sr * beta_rd`; use [`LinkGains::los_product`] for that
/// case.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkGains {
    beta_sd: f64,
    beta_sr: f64,
    beta_rd: f64,
    beta_irs: f64,
}

impl LinkGains {
    pub fn new(beta_sd: f64, beta_sr: f64, beta_rd: f64, beta_irs: f64) -> Result<Self> {
        require_positive("beta_sd", beta_sd)?;
        require_positive("beta_sr", beta_sr)?;
        require_positive("beta_rd", beta_rd)?;
        require_positive("beta_irs", beta_irs)?;
        Ok(Self { beta_sd, beta_sr, beta_rd, beta_irs })
    }

    /// Line-of-sight construction with `beta_irs = beta_sr * beta_rd`.
    pub fn los_product(beta_sd: f64, beta_sr: f64, beta_rd: f64) -> Result<Self> {
        Self::new(beta_sd, beta_sr, beta_rd, beta_sr * beta_rd)
    }

    pub fn beta_sd(&self) -> f64 {
        self.beta_sd
    }

    pub fn beta_sr(&self) -> f64 {
        self.beta_sr
    }

    pub fn beta_rd(&self) -> f64 {
        self.beta_rd
    }

    pub fn beta_irs(&self) -> f64 {
        self.beta_irs
    }
}

/// Surface configuration: element count, amplitude reflection coefficient,
/// and per-element circuitry dissipation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IrsConfig {
    n_elements: u32,
    alpha: f64,
    p_elem: f64,
}

impl IrsConfig {
    pub fn new(n_elements: u32, alpha: f64, p_elem: f64) -> Result<Self> {
        require_finite("alpha", alpha)?;
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::OutOfRange {
                name: "alpha",
                constraint: "in (0, 1]",
                value: alpha,
            });
        }
        require_nonnegative("p_elem", p_elem)?;
        Ok(Self { n_elements, alpha, p_elem })
    }

    pub fn n_elements(&self) -> u32 {
        self.n_elements
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Per-element dissipation in Watts.
    pub fn p_elem(&self) -> f64 {
        self.p_elem
    }

    pub fn with_elements(&self, n_elements: u32) -> Self {
        Self { n_elements, ..*self }
    }
}

/// Power budget and hardware dissipation parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerModel {
    p: f64,
    sigma2: f64,
    nu: f64,
    p_source: f64,
    p_dest: f64,
    p_relay: f64,
}

impl PowerModel {
    pub fn new(
        p: f64,
        sigma2: f64,
        nu: f64,
        p_source: f64,
        p_dest: f64,
        p_relay: f64,
    ) -> Result<Self> {
        require_nonnegative("p", p)?;
        require_positive("sigma2", sigma2)?;
        require_finite("nu", nu)?;
        if !(nu > 0.0 && nu <= 1.0) {
            return Err(Error::OutOfRange { name: "nu", constraint: "in (0, 1]", value: nu });
        }
        require_nonnegative("p_source", p_source)?;
        require_nonnegative("p_dest", p_dest)?;
        require_nonnegative("p_relay", p_relay)?;
        Ok(Self { p, sigma2, nu, p_source, p_dest, p_relay })
    }

    /// Average transmit power in Watts.
    pub fn p(&self) -> f64 {
        self.p
    }

    /// Noise power in Watts.
    pub fn sigma2(&self) -> f64 {
        self.sigma2
    }

    /// Power amplifier efficiency.
    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn p_source(&self) -> f64 {
        self.p_source
    }

    pub fn p_dest(&self) -> f64 {
        self.p_dest
    }

    pub fn p_relay(&self) -> f64 {
        self.p_relay
    }
}

/// Direct-transmission capacity in bit/s/Hz.
pub fn rate_siso(p: f64, beta_sd: f64, sigma2: f64) -> Result<f64> {
    require_nonnegative("p", p)?;
    require_positive("beta_sd", beta_sd)?;
    require_positive("sigma2", sigma2)?;
    Ok((1.0 + p * beta_sd / sigma2).log2())
}

/// IRS-supported capacity in bit/s/Hz, with the surface phases optimally
/// aligned to the direct path.
///
/// Reduces exactly to [`rate_siso`] when the surface has zero elements.
pub fn rate_irs(p: f64, gains: &LinkGains, irs: &IrsConfig, sigma2: f64) -> Result<f64> {
    require_nonnegative("p", p)?;
    require_positive("sigma2", sigma2)?;
    let amp = gains.beta_sd().sqrt()
        + f64::from(irs.n_elements()) * irs.alpha() * gains.beta_irs().sqrt();
    Ok((1.0 + p * amp * amp / sigma2).log2())
}

/// Repetition-coded DF relaying rate in bit/s/Hz for a fixed power split.
///
/// Phase one spends `p1` at the source, phase two spends `p2` at the relay;
/// the destination combines both observations. The half pre-log reflects the
/// two-phase protocol.
pub fn rate_df_fixed(p1: f64, p2: f64, gains: &LinkGains, sigma2: f64) -> Result<f64> {
    require_nonnegative("p1", p1)?;
    require_nonnegative("p2", p2)?;
    require_positive("sigma2", sigma2)?;
    let decode = p1 * gains.beta_sr() / sigma2;
    let combine = p1 * gains.beta_sd() / sigma2 + p2 * gains.beta_rd() / sigma2;
    Ok(0.5 * (1.0 + decode.min(combine)).log2())
}
