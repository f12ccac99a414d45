//! Total power consumption models, energy efficiency, and the element count
//! that minimizes the IRS power bill.
//!
//! Total consumed power is amplifier-scaled transmit power plus hardware
//! dissipation. The relay source only transmits in phase one, so it pays
//! half of its dissipation; the surface pays a fixed circuitry cost per
//! element.
//!
//! The closed-form element count balances transmit power against element
//! dissipation, i.e. it is the exact real minimizer of
//! `p_irs(N) + N * p_elem`. This is the rule the published energy-efficiency
//! comparison is built on; it coincides with minimizing the full total power
//! when the amplifier is ideal (`nu = 1`).

use crate::linkmath::{self, IrsConfig, LinkGains, PowerModel};
use crate::powerctl::{self, RateTarget};
use crate::Result;

/// Itemized total power consumption in Watts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TotalPowerBreakdown {
    /// Transmit power divided by the amplifier efficiency.
    pub transmit_over_nu: f64,
    pub source_dissipation: f64,
    pub dest_dissipation: f64,
    /// `N * p_elem` for the IRS, the relay dissipation for DF, zero for SISO.
    pub extra_dissipation: f64,
    pub total: f64,
}

impl TotalPowerBreakdown {
    fn new(transmit_over_nu: f64, source: f64, dest: f64, extra: f64) -> Self {
        Self {
            transmit_over_nu,
            source_dissipation: source,
            dest_dissipation: dest,
            extra_dissipation: extra,
            total: transmit_over_nu + source + dest + extra,
        }
    }
}

/// Total power of direct transmission at the target rate.
pub fn total_power_siso(target: &RateTarget, pm: &PowerModel, beta_sd: f64) -> TotalPowerBreakdown {
    let p = powerctl::power_siso(target, beta_sd, pm.sigma2());
    TotalPowerBreakdown::new(p / pm.nu(), pm.p_source(), pm.p_dest(), 0.0)
}

/// Total power of IRS-supported transmission at the target rate.
pub fn total_power_irs(
    target: &RateTarget,
    pm: &PowerModel,
    gains: &LinkGains,
    irs: &IrsConfig,
) -> TotalPowerBreakdown {
    let p = powerctl::power_irs(target, gains, irs, pm.sigma2());
    let elements = f64::from(irs.n_elements()) * irs.p_elem();
    TotalPowerBreakdown::new(p / pm.nu(), pm.p_source(), pm.p_dest(), elements)
}

/// Total power of DF relaying at the target rate. The source is active only
/// half of the time.
pub fn total_power_df(
    target: &RateTarget,
    pm: &PowerModel,
    gains: &LinkGains,
) -> TotalPowerBreakdown {
    let p = powerctl::power_df(target, gains, pm.sigma2());
    TotalPowerBreakdown::new(p / pm.nu(), 0.5 * pm.p_source(), pm.p_dest(), pm.p_relay())
}

/// Real-valued optimal element count and its integer refinement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElementCountChoice {
    /// Stationary point of `p_irs(N) + N * p_elem` over real N; can be
    /// negative, in which case zero elements (plain SISO) is optimal.
    pub n_real: f64,
    /// Best integer among zero and the two integers bracketing `n_real`.
    pub n_opt: u32,
}

/// Transmit power plus element dissipation, the objective the closed-form
/// element count minimizes.
fn element_tradeoff(target: &RateTarget, gains: &LinkGains, irs: &IrsConfig, sigma2: f64) -> f64 {
    powerctl::power_irs(target, gains, irs, sigma2)
        + f64::from(irs.n_elements()) * irs.p_elem()
}

/// Element count minimizing transmit power plus element dissipation at the
/// target rate.
///
/// The real stationary point is
/// `cbrt(2 (2^r - 1) sigma2 / (alpha^2 beta_irs p_elem)) - sqrt(beta_sd / beta_irs) / alpha`,
/// refined to the best of zero and its two bracketing integers. By convexity
/// of the objective the refinement is the global integer optimum.
pub fn optimal_n_ee(
    target: &RateTarget,
    sigma2: f64,
    alpha: f64,
    gains: &LinkGains,
    p_elem: f64,
) -> Result<ElementCountChoice> {
    linkmath::require_positive("sigma2", sigma2)?;
    linkmath::require_positive("p_elem", p_elem)?;
    let scale = (2f64).powf(target.r_bar()) - 1.0;
    let n_real = (2.0 * scale * sigma2 / (alpha * alpha * gains.beta_irs() * p_elem)).cbrt()
        - (gains.beta_sd() / gains.beta_irs()).sqrt() / alpha;

    let mut candidates = vec![0u32];
    if n_real > 0.0 {
        candidates.push(n_real.floor() as u32);
        candidates.push(n_real.ceil() as u32);
    }
    let irs = IrsConfig::new(0, alpha, p_elem)?;
    let n_opt = candidates
        .into_iter()
        .min_by(|&a, &b| {
            let ca = element_tradeoff(target, gains, &irs.with_elements(a), sigma2);
            let cb = element_tradeoff(target, gains, &irs.with_elements(b), sigma2);
            ca.partial_cmp(&cb).unwrap().then(a.cmp(&b))
        })
        .unwrap();
    Ok(ElementCountChoice { n_real, n_opt })
}

/// Energy efficiency in bit/Joule.
pub fn energy_efficiency(bandwidth: f64, target: &RateTarget, total: &TotalPowerBreakdown) -> f64 {
    bandwidth * target.r_bar() / total.total
}

/// Transmission scheme identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    Siso,
    DfRelay,
    Irs,
}

impl Scheme {
    pub fn label(&self) -> &'static str {
        match self {
            Scheme::Siso => "siso",
            Scheme::DfRelay => "df",
            Scheme::Irs => "irs",
        }
    }
}

/// Winner of the energy-efficiency comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EeResult {
    pub scheme: Scheme,
    /// bit/Joule of the winning scheme.
    pub ee_value: f64,
    /// Element count used by the IRS candidate (zero for the others).
    pub n_opt: u32,
    pub bandwidth: f64,
}

/// Highest-EE scheme at the target rate, with ties broken towards the
/// simpler hardware: SISO over DF over IRS.
pub fn best_scheme_ee(
    target: &RateTarget,
    pm: &PowerModel,
    gains: &LinkGains,
    alpha: f64,
    p_elem: f64,
    bandwidth: f64,
) -> Result<EeResult> {
    let choice = optimal_n_ee(target, pm.sigma2(), alpha, gains, p_elem)?;
    let irs = IrsConfig::new(choice.n_opt, alpha, p_elem)?;

    let ee_siso = energy_efficiency(bandwidth, target, &total_power_siso(target, pm, gains.beta_sd()));
    let ee_df = energy_efficiency(bandwidth, target, &total_power_df(target, pm, gains));
    let ee_irs = energy_efficiency(bandwidth, target, &total_power_irs(target, pm, gains, &irs));

    // Tie-break order is the enumeration order below.
    let mut best = (Scheme::Siso, ee_siso);
    if ee_df > best.1 {
        best = (Scheme::DfRelay, ee_df);
    }
    if ee_irs > best.1 {
        best = (Scheme::Irs, ee_irs);
    }
    let n_opt = if best.0 == Scheme::Irs { choice.n_opt } else { 0 };
    Ok(EeResult { scheme: best.0, ee_value: best.1, n_opt, bandwidth })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pm(p: f64) -> PowerModel {
        PowerModel::new(p, 3.981e-13, 0.5, 0.1, 0.1, 0.1).unwrap()
    }

    fn gains() -> LinkGains {
        LinkGains::los_product(1e-10, 1e-7, 1e-6).unwrap()
    }

    #[test]
    fn breakdown_sums_to_total() {
        let b = TotalPowerBreakdown::new(0.2, 0.1, 0.1, 0.05);
        let sum = b.transmit_over_nu + b.source_dissipation + b.dest_dissipation
            + b.extra_dissipation;
        assert!((b.total - sum).abs() <= 1e-12 * sum);
    }

    #[test]
    fn siso_total_direct_sum() {
        let model = PowerModel::new(0.0, 3.981e-13, 1.0, 0.1, 0.1, 0.0).unwrap();
        // Pick beta_sd so p_siso is exactly 0.1 W at one bit.
        let target = RateTarget::new(1.0).unwrap();
        let beta_sd = 3.981e-13 / 0.1;
        let b = total_power_siso(&target, &model, beta_sd);
        assert!((b.total - 0.3).abs() < 1e-12);
        // Halving nu doubles only the transmit term.
        let model_half = PowerModel::new(0.0, 3.981e-13, 0.5, 0.1, 0.1, 0.0).unwrap();
        let b2 = total_power_siso(&target, &model_half, beta_sd);
        assert!((b2.transmit_over_nu - 2.0 * b.transmit_over_nu).abs() < 1e-12);
        assert_eq!(b2.source_dissipation, b.source_dissipation);
    }

    #[test]
    fn irs_total_reduces_to_siso_at_zero_elements() {
        let target = RateTarget::new(4.0).unwrap();
        let irs = IrsConfig::new(0, 1.0, 0.005).unwrap();
        let a = total_power_irs(&target, &pm(0.0), &gains(), &irs);
        let b = total_power_siso(&target, &pm(0.0), gains().beta_sd());
        assert_eq!(a.total, b.total);
    }

    #[test]
    fn irs_total_monotone_without_element_cost() {
        let target = RateTarget::new(4.0).unwrap();
        let irs = IrsConfig::new(0, 1.0, 0.0).unwrap();
        let mut prev = f64::INFINITY;
        for n in [0u32, 10, 100, 1000] {
            let b = total_power_irs(&target, &pm(0.0), &gains(), &irs.with_elements(n));
            assert!(b.total < prev);
            prev = b.total;
        }
    }

    #[test]
    fn df_total_fixed_overhead() {
        let target = RateTarget::new(1e-9).unwrap();
        let b = total_power_df(&target, &pm(0.0), &gains());
        // Vanishing rate leaves (1/2) P_s + P_d + P_r = 0.25 W.
        assert!((b.total - 0.25).abs() < 1e-6);
    }

    #[test]
    fn optimal_n_rejects_zero_element_power() {
        let target = RateTarget::new(4.0).unwrap();
        assert!(optimal_n_ee(&target, 3.981e-13, 1.0, &gains(), 0.0).is_err());
    }

    #[test]
    fn optimal_n_negative_real_means_siso() {
        // Strong direct path, weak surface path: elements never pay off.
        let g = LinkGains::los_product(1e-6, 1e-9, 1e-9).unwrap();
        let target = RateTarget::new(1.0).unwrap();
        let c = optimal_n_ee(&target, 3.981e-13, 1.0, &g, 0.005).unwrap();
        assert!(c.n_real < 0.0);
        assert_eq!(c.n_opt, 0);
    }

    #[test]
    fn optimal_n_stationarity() {
        let target = RateTarget::new(6.0).unwrap();
        let sigma2 = 3.981e-13;
        let g = gains();
        let c = optimal_n_ee(&target, sigma2, 1.0, &g, 0.005).unwrap();
        assert!(c.n_real > 0.0);
        // Central finite difference of the tradeoff at the real optimum.
        let f = |n: f64| {
            let scale = (2f64).powf(target.r_bar()) - 1.0;
            let amp = g.beta_sd().sqrt() + n * g.beta_irs().sqrt();
            scale * sigma2 / (amp * amp) + n * 0.005
        };
        let h = 1e-4 * c.n_real;
        let slope = (f(c.n_real + h) - f(c.n_real - h)) / (2.0 * h);
        assert!(slope.abs() <= 1e-6 * 0.005);
    }

    #[test]
    fn energy_efficiency_direct_ratio() {
        let target = RateTarget::new(1.0).unwrap();
        let b = TotalPowerBreakdown::new(1.0, 0.0, 0.0, 0.0);
        assert_eq!(energy_efficiency(1e7, &target, &b), 1e7);
        assert_eq!(energy_efficiency(2e7, &target, &b), 2e7);
    }

    proptest! {
        #[test]
        fn total_power_irs_convex_in_n(
            n in 1u32..200,
            bsd_db in -110.0f64..-90.0,
            r_bar in 0.5f64..10.0,
        ) {
            let g = LinkGains::los_product(
                crate::units::db_to_linear(bsd_db), 1e-7, 1e-6).unwrap();
            let target = RateTarget::new(r_bar).unwrap();
            let irs = IrsConfig::new(0, 1.0, 0.005).unwrap();
            let model = pm(0.0);
            let f = |k: u32| total_power_irs(&target, &model, &g, &irs.with_elements(k)).total;
            let second = f(n + 1) + f(n - 1) - 2.0 * f(n);
            prop_assert!(second >= -1e-12 * f(n));
        }

        #[test]
        fn integer_refinement_beats_scan(
            r_bar in 0.5f64..9.0,
            pe_exp in -4.0f64..-1.5,
        ) {
            let g = gains();
            let target = RateTarget::new(r_bar).unwrap();
            let sigma2 = 3.981e-13;
            let p_elem = 10f64.powf(pe_exp);
            let c = optimal_n_ee(&target, sigma2, 1.0, &g, p_elem).unwrap();
            let irs = IrsConfig::new(0, 1.0, p_elem).unwrap();
            let obj = |n: u32| element_tradeoff(&target, &g, &irs.with_elements(n), sigma2);
            let n_max = (10.0 * c.n_real.max(1.0)) as u32 + 10;
            let best = (0..=n_max).min_by(|&a, &b| {
                obj(a).partial_cmp(&obj(b)).unwrap().then(a.cmp(&b))
            }).unwrap();
            prop_assert_eq!(best, c.n_opt);
        }
    }
}
