//! Python bindings: a `Scenario` class wrapping the core library's rate,
//! power, element-count, and energy-efficiency calculations.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use irslink::energy;
use irslink::linkmath::{self, IrsConfig};
use irslink::powerctl::{self, RateTarget};
use irslink::sweep;

fn err(e: irslink::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A deployment scenario with the urban-micro defaults; individual
/// parameters can be overridden via `set(key, value)` using the same
/// unit-suffixed keys as the config file format.
#[pyclass]
#[derive(Clone)]
struct Scenario {
    inner: irslink::scenario::Scenario,
}

impl Scenario {
    fn gains(&self) -> PyResult<linkmath::LinkGains> {
        self.inner.gains().map_err(err)
    }

    fn sigma2(&self) -> PyResult<f64> {
        self.inner.sigma2().map_err(err)
    }

    fn irs(&self, n: u32) -> PyResult<IrsConfig> {
        IrsConfig::new(n, self.inner.alpha, self.inner.p_elem_w).map_err(err)
    }

    fn target(r_bar: f64) -> PyResult<RateTarget> {
        RateTarget::new(r_bar).map_err(err)
    }
}

#[pymethods]
impl Scenario {
    #[new]
    fn new() -> Self {
        Self { inner: irslink::scenario::Scenario::paper() }
    }

    /// Override one parameter, e.g. `set("d1_m", "50")`.
    fn set(&mut self, key: &str, value: &str) -> PyResult<()> {
        self.inner.apply_kv(key, value).map_err(err)
    }

    /// Canonical single-line rendering of the resolved configuration.
    fn canonical(&self) -> String {
        self.inner.canonical_line()
    }

    /// Noise power in Watts.
    fn noise_power(&self) -> PyResult<f64> {
        self.sigma2()
    }

    /// Channel gains `(beta_sd, beta_sr, beta_rd)` as linear power ratios.
    fn channel_gains(&self) -> PyResult<(f64, f64, f64)> {
        let g = self.gains()?;
        Ok((g.beta_sd(), g.beta_sr(), g.beta_rd()))
    }

    /// Direct-transmission rate at transmit power `p` Watts, bit/s/Hz.
    fn rate_siso(&self, p: f64) -> PyResult<f64> {
        linkmath::rate_siso(p, self.gains()?.beta_sd(), self.sigma2()?).map_err(err)
    }

    /// Surface-assisted rate with `n` elements, bit/s/Hz.
    fn rate_irs(&self, p: f64, n: u32) -> PyResult<f64> {
        linkmath::rate_irs(p, &self.gains()?, &self.irs(n)?, self.sigma2()?).map_err(err)
    }

    /// Relay rate at the optimal power split, bit/s/Hz.
    fn rate_df(&self, p: f64) -> PyResult<f64> {
        Ok(powerctl::rate_df_opt(p, &self.gains()?, self.sigma2()?).map_err(err)?.rate)
    }

    /// Transmit power meeting rate `r_bar` without assistance, Watts.
    fn power_siso(&self, r_bar: f64) -> PyResult<f64> {
        Ok(powerctl::power_siso(&Self::target(r_bar)?, self.gains()?.beta_sd(), self.sigma2()?))
    }

    /// Transmit power meeting rate `r_bar` with `n` surface elements, Watts.
    fn power_irs(&self, r_bar: f64, n: u32) -> PyResult<f64> {
        Ok(powerctl::power_irs(&Self::target(r_bar)?, &self.gains()?, &self.irs(n)?, self.sigma2()?))
    }

    /// Transmit power meeting rate `r_bar` with the relay, Watts.
    fn power_df(&self, r_bar: f64) -> PyResult<f64> {
        Ok(powerctl::power_df(&Self::target(r_bar)?, &self.gains()?, self.sigma2()?))
    }

    /// Smallest integer element count whose surface beats the relay at the
    /// rate-matched transmit power.
    fn min_elements(&self, r_bar: f64) -> PyResult<u32> {
        let target = Self::target(r_bar)?;
        let gains = self.gains()?;
        let sigma2 = self.sigma2()?;
        let p = powerctl::power_df(&target, &gains, sigma2);
        let t = powerctl::min_elements_to_beat_df(p, &gains, self.inner.alpha, sigma2)
            .map_err(err)?;
        Ok(t.min_integer_n)
    }

    /// Energy-efficiency-optimal element count at rate `r_bar`:
    /// `(n_real, n_opt)`.
    fn optimal_elements(&self, r_bar: f64) -> PyResult<(f64, u32)> {
        let choice = energy::optimal_n_ee(
            &Self::target(r_bar)?,
            self.sigma2()?,
            self.inner.alpha,
            &self.gains()?,
            self.inner.p_elem_w,
        )
        .map_err(err)?;
        Ok((choice.n_real, choice.n_opt))
    }

    /// Energy efficiency per scheme at rate `r_bar`, bit/Joule:
    /// `(ee_siso, ee_df, ee_irs, best)` with `best` one of
    /// `"siso"`, `"df"`, `"irs"`.
    fn energy_efficiency(&self, r_bar: f64) -> PyResult<(f64, f64, f64, String)> {
        let target = Self::target(r_bar)?;
        let gains = self.gains()?;
        let pm = self.inner.power_model(0.0).map_err(err)?;
        let bandwidth = self.inner.bandwidth_hz;
        let choice = energy::optimal_n_ee(
            &target,
            self.sigma2()?,
            self.inner.alpha,
            &gains,
            self.inner.p_elem_w,
        )
        .map_err(err)?;
        let irs = self.irs(choice.n_opt)?;
        let ee_siso = energy::energy_efficiency(
            bandwidth,
            &target,
            &energy::total_power_siso(&target, &pm, gains.beta_sd()),
        );
        let ee_df = energy::energy_efficiency(
            bandwidth,
            &target,
            &energy::total_power_df(&target, &pm, &gains),
        );
        let ee_irs = energy::energy_efficiency(
            bandwidth,
            &target,
            &energy::total_power_irs(&target, &pm, &gains, &irs),
        );
        let best = energy::best_scheme_ee(
            &target,
            &pm,
            &gains,
            self.inner.alpha,
            self.inner.p_elem_w,
            bandwidth,
        )
        .map_err(err)?;
        Ok((ee_siso, ee_df, ee_irs, best.scheme.label().to_string()))
    }

    /// Energy-efficiency crossover rates
    /// `(siso_df, df_irs, irs_onset)`, each `None` if absent in range.
    fn crossovers(&self) -> PyResult<(Option<f64>, Option<f64>, Option<f64>)> {
        let r = sweep::solve_crossovers(&self.inner).map_err(err)?;
        Ok((r.siso_df, r.df_irs, r.irs_onset))
    }
}

#[pymodule]
fn irslink_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Scenario>()?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
