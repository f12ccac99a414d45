//! Brute-force verifiers for every closed form in the crate.
//!
//! Each verifier works on the raw problem the closed form solves: phase
//! optimization over complex channels, grid search over the DF power split,
//! and linear scans over integer element counts. They are deliberately
//! independent of the closed-form code paths they check.

use num_complex::Complex64;
use rand::Rng;

use crate::linkmath::{self, IrsConfig, LinkGains};
use crate::powerctl::{self, RateTarget};
use crate::{Error, Result};

/// Joint phase grids above this size are searched per coordinate instead of
/// exhaustively.
pub const EXHAUSTIVE_BUDGET: u128 = 1 << 20;

/// Element-level complex channel realization for the surface-supported link.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexLinkRealization {
    h_sd: Complex64,
    h_sr: Vec<Complex64>,
    h_rd: Vec<Complex64>,
    alpha: f64,
}

impl ComplexLinkRealization {
    pub fn new(
        h_sd: Complex64,
        h_sr: Vec<Complex64>,
        h_rd: Vec<Complex64>,
        alpha: f64,
    ) -> Result<Self> {
        if h_sr.len() != h_rd.len() {
            return Err(Error::LengthMismatch { sr: h_sr.len(), rd: h_rd.len() });
        }
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::OutOfRange {
                name: "alpha",
                constraint: "in (0, 1]",
                value: alpha,
            });
        }
        Ok(Self { h_sd, h_sr, h_rd, alpha })
    }

    /// Random realization consistent with `gains` under the line-of-sight
    /// construction: every element sees the relay-antenna magnitudes, phases
    /// are independent and uniform.
    pub fn random_los<R: Rng>(gains: &LinkGains, alpha: f64, n: u32, rng: &mut R) -> Result<Self> {
        let phasor = |rng: &mut R, mag: f64| {
            let phi: f64 = rng.random_range(0.0..std::f64::consts::TAU);
            Complex64::from_polar(mag, phi)
        };
        let h_sd = phasor(rng, gains.beta_sd().sqrt());
        let sr_mag = gains.beta_sr().sqrt();
        let rd_mag = gains.beta_rd().sqrt();
        let h_sr = (0..n).map(|_| phasor(rng, sr_mag)).collect();
        let h_rd = (0..n).map(|_| phasor(rng, rd_mag)).collect();
        Self::new(h_sd, h_sr, h_rd, alpha)
    }

    pub fn n_elements(&self) -> usize {
        self.h_sr.len()
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Squared magnitude of the direct channel.
    pub fn beta_sd(&self) -> f64 {
        self.h_sd.norm_sqr()
    }

    /// Average per-element product magnitude, i.e. the square root of the
    /// surface product gain.
    pub fn sqrt_beta_irs(&self) -> f64 {
        if self.h_sr.is_empty() {
            return 0.0;
        }
        let sum: f64 = self
            .h_sr
            .iter()
            .zip(&self.h_rd)
            .map(|(a, b)| (a * b).norm())
            .sum();
        sum / self.h_sr.len() as f64
    }

    /// Per-element cascaded channels `h_sr[n] * h_rd[n]`.
    fn products(&self) -> Vec<Complex64> {
        self.h_sr.iter().zip(&self.h_rd).map(|(a, b)| a * b).collect()
    }

    /// Capacity with ideal per-element phase alignment, computed directly at
    /// the element level.
    pub fn closed_form_rate(&self, p: f64, sigma2: f64) -> Result<f64> {
        linkmath::require_nonnegative("p", p)?;
        linkmath::require_positive("sigma2", sigma2)?;
        let amp = self.h_sd.norm()
            + self.alpha * self.products().iter().map(|c| c.norm()).sum::<f64>();
        Ok((1.0 + p * amp * amp / sigma2).log2())
    }

    fn rate_at_phase_indices(
        &self,
        products: &[Complex64],
        phasors: &[Complex64],
        indices: &[usize],
        p: f64,
        sigma2: f64,
    ) -> f64 {
        let mut sum = self.h_sd;
        for (c, &k) in products.iter().zip(indices) {
            sum += self.alpha * c * phasors[k];
        }
        (1.0 + p * sum.norm_sqr() / sigma2).log2()
    }
}

/// Resolution of a search grid (points per dimension).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    resolution: u32,
}

impl GridSpec {
    pub fn new(resolution: u32) -> Result<Self> {
        if resolution < 2 {
            return Err(Error::OutOfRange {
                name: "resolution",
                constraint: ">= 2",
                value: f64::from(resolution),
            });
        }
        Ok(Self { resolution })
    }

    pub fn resolution(&self) -> u32 {
        self.resolution
    }
}

fn phase_table(resolution: u32) -> Vec<Complex64> {
    (0..resolution)
        .map(|k| {
            Complex64::from_polar(1.0, std::f64::consts::TAU * f64::from(k) / f64::from(resolution))
        })
        .collect()
}

/// Best rate over the joint phase grid, enumerated exhaustively.
///
/// Rejects search spaces above [`EXHAUSTIVE_BUDGET`] joint grid points.
pub fn exhaustive_phase_rate(
    real: &ComplexLinkRealization,
    p: f64,
    sigma2: f64,
    grid: &GridSpec,
) -> Result<f64> {
    let n = real.n_elements();
    let points = (u128::from(grid.resolution())).pow(n as u32);
    if n > 8 || points > EXHAUSTIVE_BUDGET {
        return Err(Error::SearchSpaceTooLarge { points, budget: EXHAUSTIVE_BUDGET });
    }
    linkmath::require_nonnegative("p", p)?;
    linkmath::require_positive("sigma2", sigma2)?;

    let products = real.products();
    let phasors = phase_table(grid.resolution());
    let mut indices = vec![0usize; n];
    let mut best = f64::NEG_INFINITY;
    loop {
        let rate = real.rate_at_phase_indices(&products, &phasors, &indices, p, sigma2);
        if rate > best {
            best = rate;
        }
        // Odometer increment over the joint grid.
        let mut digit = 0;
        loop {
            if digit == n {
                return Ok(best);
            }
            indices[digit] += 1;
            if indices[digit] < phasors.len() {
                break;
            }
            indices[digit] = 0;
            digit += 1;
        }
    }
}

/// Best rate over the phase grid via per-coordinate sweeps from an all-zero
/// start, repeated until the rate stops improving.
pub fn coordinate_phase_rate(
    real: &ComplexLinkRealization,
    p: f64,
    sigma2: f64,
    grid: &GridSpec,
) -> Result<f64> {
    linkmath::require_nonnegative("p", p)?;
    linkmath::require_positive("sigma2", sigma2)?;
    let n = real.n_elements();
    let products = real.products();
    let phasors = phase_table(grid.resolution());
    let mut indices = vec![0usize; n];
    let mut best = real.rate_at_phase_indices(&products, &phasors, &indices, p, sigma2);
    for _pass in 0..1000 {
        let before = best;
        for i in 0..n {
            let mut best_k = indices[i];
            for k in 0..phasors.len() {
                indices[i] = k;
                let rate = real.rate_at_phase_indices(&products, &phasors, &indices, p, sigma2);
                if rate > best {
                    best = rate;
                    best_k = k;
                }
            }
            indices[i] = best_k;
        }
        if best - before < 1e-10 {
            break;
        }
    }
    Ok(best)
}

/// Grid search for the phase-optimal rate: exhaustive when the joint grid
/// fits the budget, per-coordinate sweeps otherwise.
pub fn brute_force_phase_rate(
    real: &ComplexLinkRealization,
    p: f64,
    sigma2: f64,
    grid: &GridSpec,
) -> Result<f64> {
    let points = (u128::from(grid.resolution())).pow(real.n_elements() as u32);
    if real.n_elements() <= 8 && points <= EXHAUSTIVE_BUDGET {
        exhaustive_phase_rate(real, p, sigma2, grid)
    } else {
        coordinate_phase_rate(real, p, sigma2, grid)
    }
}

/// Maximizer found by the DF power-split grid scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerSplitScan {
    pub p1: f64,
    pub p2: f64,
    pub rate: f64,
}

/// Scans `p1` over `[0, 2p]` with `p2 = 2p - p1` and returns the
/// rate-maximizing grid point.
pub fn brute_force_power_split(
    p: f64,
    gains: &LinkGains,
    sigma2: f64,
    grid: &GridSpec,
) -> Result<PowerSplitScan> {
    let steps = grid.resolution();
    let total = 2.0 * p;
    let mut best = PowerSplitScan { p1: 0.0, p2: total, rate: f64::NEG_INFINITY };
    for i in 0..=steps {
        let p1 = total * f64::from(i) / f64::from(steps);
        let p2 = total - p1;
        let rate = linkmath::rate_df_fixed(p1, p2, gains, sigma2)?;
        if rate > best.rate {
            best = PowerSplitScan { p1, p2, rate };
        }
    }
    Ok(best)
}

/// Smallest element count `N >= 1` whose IRS rate strictly exceeds the
/// optimized DF rate, found by linear scan.
pub fn brute_force_threshold_n(
    p: f64,
    gains: &LinkGains,
    alpha: f64,
    sigma2: f64,
    n_max: u32,
) -> Result<u32> {
    let df = powerctl::rate_df_opt(p, gains, sigma2)?.rate;
    let irs = IrsConfig::new(0, alpha, 0.0)?;
    for n in 1..=n_max {
        if linkmath::rate_irs(p, gains, &irs.with_elements(n), sigma2)? > df {
            return Ok(n);
        }
    }
    Err(Error::ThresholdNotFound { n_max })
}

/// Result of the element-count scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanMinimum {
    pub n: u32,
    /// False when the minimum sits on the `n_max` boundary, i.e. the scan
    /// range did not bracket it.
    pub bracketed: bool,
}

/// Exhaustive scan of transmit power plus element dissipation over
/// `N in [0, n_max]`.
pub fn brute_force_optimal_n_ee(
    target: &RateTarget,
    gains: &LinkGains,
    alpha: f64,
    p_elem: f64,
    sigma2: f64,
    n_max: u32,
) -> Result<ScanMinimum> {
    linkmath::require_positive("sigma2", sigma2)?;
    linkmath::require_nonnegative("p_elem", p_elem)?;
    let irs = IrsConfig::new(0, alpha, p_elem)?;
    let objective = |n: u32| {
        powerctl::power_irs(target, gains, &irs.with_elements(n), sigma2)
            + f64::from(n) * p_elem
    };
    let mut best_n = 0u32;
    let mut best = objective(0);
    for n in 1..=n_max {
        let v = objective(n);
        if v < best {
            best = v;
            best_n = n;
        }
    }
    Ok(ScanMinimum { n: best_n, bracketed: best_n < n_max })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::powerctl::optimal_df_power_split;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gains() -> LinkGains {
        LinkGains::los_product(1e-10, 1e-7, 1e-6).unwrap()
    }

    #[test]
    fn realization_consistent_with_gains() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let real = ComplexLinkRealization::random_los(&gains(), 1.0, 16, &mut rng).unwrap();
        assert!((real.beta_sd() - 1e-10).abs() < 1e-22);
        let expect = gains().beta_irs().sqrt();
        assert!((real.sqrt_beta_irs() - expect).abs() <= 1e-12 * expect);
    }

    #[test]
    fn mismatched_lengths_rejected() {
        let e = ComplexLinkRealization::new(
            Complex64::new(1.0, 0.0),
            vec![Complex64::new(1.0, 0.0); 3],
            vec![Complex64::new(1.0, 0.0); 2],
            1.0,
        );
        assert_eq!(e, Err(Error::LengthMismatch { sr: 3, rd: 2 }));
    }

    #[test]
    fn aligned_channels_need_no_phase_shift() {
        // All-real positive channels: the zero-phase grid point is optimal.
        let real = ComplexLinkRealization::new(
            Complex64::new(1e-5, 0.0),
            vec![Complex64::new(1e-4, 0.0); 3],
            vec![Complex64::new(1e-3, 0.0); 3],
            1.0,
        )
        .unwrap();
        let grid = GridSpec::new(16).unwrap();
        let brute = exhaustive_phase_rate(&real, 1.0, 1e-13, &grid).unwrap();
        let closed = real.closed_form_rate(1.0, 1e-13).unwrap();
        assert!((brute - closed).abs() < 1e-12);
    }

    #[test]
    fn single_element_dense_grid_matches_closed_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let real = ComplexLinkRealization::random_los(&gains(), 0.8, 1, &mut rng).unwrap();
        let grid = GridSpec::new(360).unwrap();
        let brute = exhaustive_phase_rate(&real, 1.0, 3.981e-13, &grid).unwrap();
        let closed = real.closed_form_rate(1.0, 3.981e-13).unwrap();
        assert!(brute <= closed);
        assert!(closed - brute < 1e-4);
    }

    #[test]
    fn grid_gap_shrinks_quadratically() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let real = ComplexLinkRealization::random_los(&gains(), 1.0, 2, &mut rng).unwrap();
        let closed = real.closed_form_rate(1.0, 3.981e-13).unwrap();
        let gap = |res: u32| {
            let grid = GridSpec::new(res).unwrap();
            closed - exhaustive_phase_rate(&real, 1.0, 3.981e-13, &grid).unwrap()
        };
        let coarse = gap(32);
        let fine = gap(64);
        assert!(coarse >= 0.0 && fine >= 0.0);
        // Quadratic decay: doubling the resolution divides the gap by ~4.
        assert!(fine <= coarse / 3.0 + 1e-12);
    }

    #[test]
    fn oversized_search_space_rejected() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let real = ComplexLinkRealization::random_los(&gains(), 1.0, 9, &mut rng).unwrap();
        let grid = GridSpec::new(64).unwrap();
        assert!(matches!(
            exhaustive_phase_rate(&real, 1.0, 1e-13, &grid),
            Err(Error::SearchSpaceTooLarge { .. })
        ));
        // The dispatching entry point falls back to the coordinate search.
        let rate = brute_force_phase_rate(&real, 1.0, 3.981e-13, &grid).unwrap();
        let closed = real.closed_form_rate(1.0, 3.981e-13).unwrap();
        assert!(rate <= closed);
        assert!(closed - rate < 1e-2);
    }

    #[test]
    fn power_split_scan_boundary_and_symmetry() {
        // Direct path dominates: all power in phase one.
        let fallback = LinkGains::los_product(1e-7, 1e-9, 1e-6).unwrap();
        let grid = GridSpec::new(1000).unwrap();
        let scan = brute_force_power_split(1.0, &fallback, 1e-13, &grid).unwrap();
        assert_eq!(scan.p1, 2.0);

        // Negligible direct path with equal hop gains: symmetric split.
        let sym = LinkGains::los_product(1e-300, 1e-7, 1e-7).unwrap();
        let scan = brute_force_power_split(1.0, &sym, 1e-13, &grid).unwrap();
        assert!((scan.p1 - 1.0).abs() <= 2.0 / 1000.0);
    }

    #[test]
    fn power_split_scan_matches_closed_form() {
        let g = LinkGains::los_product(1e-11, 1e-8, 1e-6).unwrap();
        let grid = GridSpec::new(10_000).unwrap();
        let scan = brute_force_power_split(1.0, &g, 3.981e-13, &grid).unwrap();
        let split = optimal_df_power_split(1.0, &g);
        assert!((scan.p1 - split.p1).abs() <= 2.0 / 10_000.0);
        let opt = powerctl::rate_df_opt(1.0, &g, 3.981e-13).unwrap().rate;
        assert!(scan.rate <= opt + 1e-12);
    }

    #[test]
    fn threshold_scan_matches_closed_form() {
        let g = LinkGains::los_product(
            crate::units::db_to_linear(-110.0),
            crate::units::db_to_linear(-80.0),
            crate::units::db_to_linear(-60.0),
        )
        .unwrap();
        let sigma2 = 3.981e-13;
        let p = sigma2 * 1e-6 / g.beta_sr();
        let n = brute_force_threshold_n(p, &g, 1.0, sigma2, 2000).unwrap();
        assert_eq!(n, 964);
        assert!(matches!(
            brute_force_threshold_n(p, &g, 1.0, sigma2, 100),
            Err(Error::ThresholdNotFound { n_max: 100 })
        ));
    }

    #[test]
    fn threshold_scan_high_power_returns_one() {
        let g = LinkGains::los_product(1e-11, 1e-8, 1e-6).unwrap();
        let n = brute_force_threshold_n(1e6, &g, 1.0, 3.981e-13, 100).unwrap();
        assert_eq!(n, 1);
    }

    #[test]
    fn element_scan_extremes() {
        let g = gains();
        let target = RateTarget::new(4.0).unwrap();
        // Huge per-element cost: zero elements win.
        let scan = brute_force_optimal_n_ee(&target, &g, 1.0, 1e9, 3.981e-13, 100).unwrap();
        assert_eq!(scan.n, 0);
        assert!(scan.bracketed);
        // Vanishing per-element cost: the scan runs into the boundary.
        let scan = brute_force_optimal_n_ee(&target, &g, 1.0, 1e-30, 3.981e-13, 100).unwrap();
        assert_eq!(scan.n, 100);
        assert!(!scan.bracketed);
    }

    #[test]
    fn element_scan_matches_closed_form() {
        let g = gains();
        let target = RateTarget::new(6.0).unwrap();
        let sigma2 = 3.981e-13;
        let choice = crate::energy::optimal_n_ee(&target, sigma2, 1.0, &g, 0.005).unwrap();
        let scan = brute_force_optimal_n_ee(&target, &g, 1.0, 0.005, sigma2, 2000).unwrap();
        assert!(scan.bracketed);
        assert_eq!(scan.n, choice.n_opt);
    }
}
