//! Sweep engine: turns a scenario into plot-ready tables for the channel
//! gain curves, the transmit-power-vs-distance comparison, and the
//! energy-efficiency-vs-rate comparison, plus bisection solvers for the
//! energy-efficiency crossover rates.
//!
//! Sweeps are pure functions of their spec; identical specs render
//! byte-identical tables.

use crate::channel3gpp::{pathloss_umi, AntennaGains};
use crate::energy::{self, Scheme};
use crate::linkmath::IrsConfig;
use crate::powerctl::{self, RateTarget};
use crate::scenario::Scenario;
use crate::units::watts_to_dbm;
use crate::{Error, Result};

/// Independent variable of a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVariable {
    /// Link distance in meters (channel-gain curves).
    Distance,
    /// Destination horizontal offset in meters.
    D1,
    /// Rate constraint in bit/s/Hz.
    RateTarget,
}

/// Grid plus scenario for one sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub variable: SweepVariable,
    pub start: f64,
    pub stop: f64,
    /// Grid step for linear spacing; total point count for log spacing.
    pub step: f64,
    pub log_spaced: bool,
    pub scenario: Scenario,
}

const MAX_POINTS: usize = 1_000_000;

impl SweepSpec {
    pub fn new(
        variable: SweepVariable,
        start: f64,
        stop: f64,
        step: f64,
        log_spaced: bool,
        scenario: Scenario,
    ) -> Result<Self> {
        if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
            return Err(Error::InvalidSweep("grid bounds must be finite".into()));
        }
        if start >= stop {
            return Err(Error::InvalidSweep(format!("start {start} must be below stop {stop}")));
        }
        if step <= 0.0 {
            return Err(Error::InvalidSweep(format!("step {step} must be positive")));
        }
        let spec = Self { variable, start, stop, step, log_spaced, scenario };
        if spec.grid().len() > MAX_POINTS {
            return Err(Error::InvalidSweep(format!("grid exceeds {MAX_POINTS} points")));
        }
        Ok(spec)
    }

    /// The x-axis grid, ascending.
    pub fn grid(&self) -> Vec<f64> {
        if self.log_spaced {
            // `step` is the inclusive point count on a log-spaced grid.
            let count = (self.step as usize).max(2).min(MAX_POINTS);
            let (la, lb) = (self.start.log10(), self.stop.log10());
            (0..count)
                .map(|i| 10f64.powf(la + (lb - la) * i as f64 / (count - 1) as f64))
                .collect()
        } else {
            let n = ((self.stop - self.start) / self.step + 1e-9).floor() as usize;
            (0..=n.min(MAX_POINTS)).map(|i| self.start + i as f64 * self.step).collect()
        }
    }
}

/// A named, unit-tagged output column.
#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    pub name: String,
    pub unit: String,
}

impl Column {
    fn new(name: impl Into<String>, unit: impl Into<String>) -> Self {
        Self { name: name.into(), unit: unit.into() }
    }
}

/// A rectangular sweep result with its resolved configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    /// Canonical single-line configuration that produced the table.
    pub config: String,
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<f64>>,
}

/// Ten significant digits, scientific notation.
pub fn fmt_sig10(x: f64) -> String {
    if x == 0.0 {
        "0".to_string()
    } else {
        format!("{x:.9e}")
    }
}

impl Table {
    /// CSV with a `# config:` header comment and `name(unit)` column
    /// headers; values carry ten significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "# config: tool=irslink/{} {}\n",
            env!("CARGO_PKG_VERSION"),
            self.config
        ));
        let header: Vec<String> =
            self.columns.iter().map(|c| format!("{}({})", c.name, c.unit)).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&v| fmt_sig10(v)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// JSON object with the config line, column metadata, and one record
    /// per row keyed by column name.
    pub fn to_json(&self) -> String {
        let columns: Vec<serde_json::Value> = self
            .columns
            .iter()
            .map(|c| serde_json::json!({ "name": c.name, "unit": c.unit }))
            .collect();
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut record = serde_json::Map::new();
                for (c, &v) in self.columns.iter().zip(row) {
                    record.insert(c.name.clone(), serde_json::json!(v));
                }
                serde_json::Value::Object(record)
            })
            .collect();
        let doc = serde_json::json!({
            "tool": format!("irslink/{}", env!("CARGO_PKG_VERSION")),
            "config": self.config,
            "columns": columns,
            "rows": rows,
        });
        serde_json::to_string_pretty(&doc).expect("table serialization cannot fail")
    }
}

/// LOS and NLOS channel gain in dB over a distance grid.
pub fn sweep_channel_gain(spec: &SweepSpec) -> Result<Table> {
    if spec.variable != SweepVariable::Distance {
        return Err(Error::InvalidSweep("channel-gain sweep expects a distance grid".into()));
    }
    let s = &spec.scenario;
    let ant = AntennaGains::new(s.src_gain_dbi, s.irs_gain_dbi)?;
    let mut rows = Vec::new();
    for d in spec.grid() {
        let los = pathloss_umi(d, true, &ant)?.value();
        let nlos = pathloss_umi(d, false, &ant)?.value();
        rows.push(vec![d, los, nlos]);
    }
    Ok(Table {
        config: s.canonical_line(),
        columns: vec![
            Column::new("d", "m"),
            Column::new("beta_los", "dB"),
            Column::new("beta_nlos", "dB"),
        ],
        rows,
    })
}

/// Required transmit power per scheme as the destination moves, at a fixed
/// rate target. DF relaying is reported without mode selection; one column
/// pair per configured surface size.
pub fn sweep_power_vs_d1(spec: &SweepSpec, target: &RateTarget) -> Result<Table> {
    if spec.variable != SweepVariable::D1 {
        return Err(Error::InvalidSweep("power sweep expects a d1 grid".into()));
    }
    let s = &spec.scenario;
    let sigma2 = s.sigma2()?;
    let mut columns = vec![
        Column::new("d1", "m"),
        Column::new("p_siso", "W"),
        Column::new("p_siso_dbm", "dBm"),
        Column::new("p_df", "W"),
        Column::new("p_df_dbm", "dBm"),
    ];
    for n in &s.irs_elements {
        columns.push(Column::new(format!("p_irs_{n}"), "W"));
        columns.push(Column::new(format!("p_irs_{n}_dbm"), "dBm"));
    }
    let mut rows = Vec::new();
    for d1 in spec.grid() {
        let gains = s.gains_at(d1)?;
        let p_siso = powerctl::power_siso(target, gains.beta_sd(), sigma2);
        let p_df = powerctl::power_df(target, &gains, sigma2);
        let mut row = vec![d1, p_siso, watts_to_dbm(p_siso), p_df, watts_to_dbm(p_df)];
        for &n in &s.irs_elements {
            let irs = IrsConfig::new(n, s.alpha, s.p_elem_w)?;
            let p = powerctl::power_irs(target, &gains, &irs, sigma2);
            row.push(p);
            row.push(watts_to_dbm(p));
        }
        rows.push(row);
    }
    Ok(Table { config: s.canonical_line(), columns, rows })
}

fn scheme_code(s: Scheme) -> f64 {
    match s {
        Scheme::Siso => 0.0,
        Scheme::DfRelay => 1.0,
        Scheme::Irs => 2.0,
    }
}

/// Energy efficiency per scheme over a rate grid at the scenario's fixed
/// destination position, with the surface sized by the closed-form element
/// count at every rate.
pub fn sweep_ee_vs_rate(spec: &SweepSpec) -> Result<Table> {
    if spec.variable != SweepVariable::RateTarget {
        return Err(Error::InvalidSweep("energy-efficiency sweep expects a rate grid".into()));
    }
    let s = &spec.scenario;
    let gains = s.gains()?;
    let sigma2 = s.sigma2()?;
    let pm = s.power_model(0.0)?;
    let bandwidth = s.bandwidth_hz;
    let mut rows = Vec::new();
    for r_bar in spec.grid() {
        let target = RateTarget::new(r_bar)?;
        let choice = energy::optimal_n_ee(&target, sigma2, s.alpha, &gains, s.p_elem_w)?;
        let irs = IrsConfig::new(choice.n_opt, s.alpha, s.p_elem_w)?;
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
        let best = energy::best_scheme_ee(&target, &pm, &gains, s.alpha, s.p_elem_w, bandwidth)?;
        rows.push(vec![
            r_bar,
            ee_siso,
            ee_df,
            ee_irs,
            f64::from(choice.n_opt),
            scheme_code(best.scheme),
        ]);
    }
    Ok(Table {
        config: s.canonical_line(),
        columns: vec![
            Column::new("r_bar", "bit/s/Hz"),
            Column::new("ee_siso", "bit/J"),
            Column::new("ee_df", "bit/J"),
            Column::new("ee_irs", "bit/J"),
            Column::new("n_opt", "elements"),
            Column::new("best_scheme", "0=siso,1=df,2=irs"),
        ],
        rows,
    })
}

/// Rate range scanned for crossovers, bit/s/Hz.
pub const CROSSOVER_RATE_RANGE: (f64, f64) = (0.1, 12.0);
/// Scan step used to bracket a sign change before bisection.
pub const CROSSOVER_SCAN_STEP: f64 = 0.05;
/// Bisection tolerance on the crossover rate.
pub const CROSSOVER_TOLERANCE: f64 = 1e-4;

/// Energy-efficiency crossover rates; `None` when the corresponding sign
/// change does not occur in the scanned range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossoverReport {
    /// Rate where DF relaying overtakes SISO in energy efficiency.
    pub siso_df: Option<f64>,
    /// Rate where the IRS overtakes DF relaying in energy efficiency.
    pub df_irs: Option<f64>,
    /// Rate above which the closed-form element count turns positive.
    pub irs_onset: Option<f64>,
}

/// Finds the rate where `f` turns from positive to negative — the point
/// where the first scheme loses its lead. A difference of this shape can
/// cross zero twice (once gaining, once losing the lead); only the losing
/// transition is the crossover of interest.
fn bisect_sign_change<F: Fn(f64) -> Result<f64>>(f: &F) -> Result<Option<f64>> {
    let (lo, hi) = CROSSOVER_RATE_RANGE;
    let mut a = lo;
    let mut fa = f(a)?;
    let mut bracket = None;
    let mut x = lo + CROSSOVER_SCAN_STEP;
    while x <= hi + 1e-12 {
        let fx = f(x)?;
        if fa > 0.0 && fx <= 0.0 {
            bracket = Some((a, x));
            break;
        }
        a = x;
        fa = fx;
        x += CROSSOVER_SCAN_STEP;
    }
    let Some((mut a, mut b)) = bracket else {
        return Ok(None);
    };
    while b - a > CROSSOVER_TOLERANCE {
        let m = 0.5 * (a + b);
        if f(m)? > 0.0 {
            a = m;
        } else {
            b = m;
        }
    }
    Ok(Some(0.5 * (a + b)))
}

/// Solves the three crossover rates of the energy-efficiency comparison by
/// scan-and-bisect on the relevant differences.
pub fn solve_crossovers(scenario: &Scenario) -> Result<CrossoverReport> {
    let gains = scenario.gains()?;
    let sigma2 = scenario.sigma2()?;
    let pm = scenario.power_model(0.0)?;
    let bandwidth = scenario.bandwidth_hz;

    let ee = |scheme: Scheme, r_bar: f64| -> Result<f64> {
        let target = RateTarget::new(r_bar)?;
        let breakdown = match scheme {
            Scheme::Siso => energy::total_power_siso(&target, &pm, gains.beta_sd()),
            Scheme::DfRelay => energy::total_power_df(&target, &pm, &gains),
            Scheme::Irs => {
                let choice =
                    energy::optimal_n_ee(&target, sigma2, scenario.alpha, &gains, scenario.p_elem_w)?;
                let irs = IrsConfig::new(choice.n_opt, scenario.alpha, scenario.p_elem_w)?;
                energy::total_power_irs(&target, &pm, &gains, &irs)
            }
        };
        Ok(energy::energy_efficiency(bandwidth, &target, &breakdown))
    };

    let siso_df = bisect_sign_change(&|r| Ok(ee(Scheme::Siso, r)? - ee(Scheme::DfRelay, r)?))?;
    let df_irs = bisect_sign_change(&|r| Ok(ee(Scheme::DfRelay, r)? - ee(Scheme::Irs, r)?))?;
    // Negated so the onset shows up as a positive-to-negative transition.
    let irs_onset = bisect_sign_change(&|r| {
        let target = RateTarget::new(r)?;
        Ok(-energy::optimal_n_ee(&target, sigma2, scenario.alpha, &gains, scenario.p_elem_w)?.n_real)
    })?;
    Ok(CrossoverReport { siso_df, df_irs, irs_onset })
}
