//! Named parameter bundles for the simulation scenarios, plus a flat
//! key-value config format with explicit unit suffixes.
//!
//! The built-in `paper` preset is the urban-micro deployment used throughout
//! the sweeps: source and surface 80 m apart, destination on a parallel line
//! 10 m below, 5 dBi antennas at source and surface, a 0 dBi handset, 10 MHz
//! bandwidth with a -94 dBm noise floor, ideal reflection (`alpha = 1`),
//! a 50 % efficient amplifier, 100 mW dissipation at source, destination and
//! relay, and 5 mW per surface element.

use crate::channel3gpp::{self, Geometry, NoiseBudget};
use crate::linkmath::{LinkGains, PowerModel};
use crate::units::{dbm_to_watts, watts_to_dbm};
use crate::{Error, Result};

/// Full parameter bundle for a deployment scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub src_irs_distance_m: f64,
    pub vertical_offset_m: f64,
    pub d1_m: f64,
    pub src_gain_dbi: f64,
    pub irs_gain_dbi: f64,
    pub dest_gain_dbi: f64,
    pub bandwidth_hz: f64,
    pub noise_figure_db: f64,
    pub alpha: f64,
    pub nu: f64,
    pub p_source_w: f64,
    pub p_dest_w: f64,
    pub p_relay_w: f64,
    pub p_elem_w: f64,
    /// Default transmit power for single-point rate queries.
    pub tx_power_w: f64,
    /// Element counts used by the power-vs-distance sweep.
    pub irs_elements: Vec<u32>,
}

impl Scenario {
    /// The urban-micro deployment preset.
    pub fn paper() -> Self {
        Self {
            src_irs_distance_m: 80.0,
            vertical_offset_m: 10.0,
            d1_m: 70.0,
            src_gain_dbi: 5.0,
            irs_gain_dbi: 5.0,
            dest_gain_dbi: 0.0,
            bandwidth_hz: 1e7,
            noise_figure_db: 10.0,
            alpha: 1.0,
            nu: 0.5,
            p_source_w: 0.1,
            p_dest_w: 0.1,
            p_relay_w: 0.1,
            p_elem_w: 0.005,
            tx_power_w: dbm_to_watts(20.0),
            irs_elements: vec![25, 50, 100, 150],
        }
    }

    pub fn geometry(&self) -> Result<Geometry> {
        Geometry::new(self.src_irs_distance_m, self.vertical_offset_m, self.d1_m)
    }

    /// Link gains at the scenario's destination position.
    pub fn gains(&self) -> Result<LinkGains> {
        self.gains_at(self.d1_m)
    }

    /// Link gains with the destination at horizontal offset `d1` meters.
    pub fn gains_at(&self, d1: f64) -> Result<LinkGains> {
        let geo = self.geometry()?.with_d1(d1)?;
        channel3gpp::scenario_gains(&geo, self.src_gain_dbi, self.irs_gain_dbi, self.dest_gain_dbi)
    }

    /// Noise power in Watts.
    pub fn sigma2(&self) -> Result<f64> {
        Ok(channel3gpp::noise_power(&NoiseBudget::new(self.bandwidth_hz, self.noise_figure_db)?))
    }

    /// Power model with transmit budget `p` Watts.
    pub fn power_model(&self, p: f64) -> Result<PowerModel> {
        PowerModel::new(
            p,
            self.sigma2()?,
            self.nu,
            self.p_source_w,
            self.p_dest_w,
            self.p_relay_w,
        )
    }

    /// Single-line canonical form, used in output file headers. Key order is
    /// fixed so identical scenarios render identically.
    pub fn canonical_line(&self) -> String {
        // Six decimals, trailing zeros trimmed: enough to echo any sensible
        // configuration while keeping round numbers round.
        fn num(x: f64) -> String {
            let s = format!("{x:.6}");
            let s = s.trim_end_matches('0').trim_end_matches('.');
            s.to_string()
        }
        let elements = self
            .irs_elements
            .iter()
            .map(|n| n.to_string())
            .collect::<Vec<_>>()
            .join(",");
        format!(
            "src_irs_distance_m={} vertical_offset_m={} d1_m={} src_gain_dbi={} \
             irs_gain_dbi={} dest_gain_dbi={} bandwidth_hz={} noise_figure_db={} \
             alpha={} nu={} p_source_mw={} p_dest_mw={} p_relay_mw={} p_elem_mw={} \
             tx_power_dbm={} irs_elements={}",
            num(self.src_irs_distance_m),
            num(self.vertical_offset_m),
            num(self.d1_m),
            num(self.src_gain_dbi),
            num(self.irs_gain_dbi),
            num(self.dest_gain_dbi),
            num(self.bandwidth_hz),
            num(self.noise_figure_db),
            num(self.alpha),
            num(self.nu),
            num(self.p_source_w * 1e3),
            num(self.p_dest_w * 1e3),
            num(self.p_relay_w * 1e3),
            num(self.p_elem_w * 1e3),
            num(watts_to_dbm(self.tx_power_w)),
            elements
        )
    }

    /// Applies one `key = value` override. Keys carry explicit unit
    /// suffixes; unknown keys are an error.
    pub fn apply_kv(&mut self, key: &str, value: &str) -> Result<()> {
        let parse = |name: &str, v: &str| -> Result<f64> {
            let x: f64 = v
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("{name}: cannot parse '{v}' as a number")))?;
            if x.is_finite() {
                Ok(x)
            } else {
                Err(Error::Config(format!("{name}: value must be finite, got '{v}'")))
            }
        };
        match key {
            "src_irs_distance_m" => self.src_irs_distance_m = parse(key, value)?,
            "vertical_offset_m" => self.vertical_offset_m = parse(key, value)?,
            "d1_m" => self.d1_m = parse(key, value)?,
            "src_gain_dbi" => self.src_gain_dbi = parse(key, value)?,
            "irs_gain_dbi" => self.irs_gain_dbi = parse(key, value)?,
            "dest_gain_dbi" => self.dest_gain_dbi = parse(key, value)?,
            "bandwidth_hz" => self.bandwidth_hz = parse(key, value)?,
            "noise_figure_db" => self.noise_figure_db = parse(key, value)?,
            "alpha" => self.alpha = parse(key, value)?,
            "nu" => self.nu = parse(key, value)?,
            "p_source_mw" => self.p_source_w = parse(key, value)? * 1e-3,
            "p_dest_mw" => self.p_dest_w = parse(key, value)? * 1e-3,
            "p_relay_mw" => self.p_relay_w = parse(key, value)? * 1e-3,
            "p_elem_mw" => self.p_elem_w = parse(key, value)? * 1e-3,
            "tx_power_dbm" => self.tx_power_w = dbm_to_watts(parse(key, value)?),
            "irs_elements" => {
                let mut elements = Vec::new();
                for part in value.split(',') {
                    let n: u32 = part.trim().parse().map_err(|_| {
                        Error::Config(format!("irs_elements: cannot parse '{part}' as a count"))
                    })?;
                    elements.push(n);
                }
                if elements.is_empty() {
                    return Err(Error::Config("irs_elements: empty list".into()));
                }
                self.irs_elements = elements;
            }
            _ => return Err(Error::Config(format!("unknown key '{key}'"))),
        }
        Ok(())
    }

    /// Applies a flat config file: one `key = value` per line, `#` comments.
    pub fn apply_config_text(&mut self, text: &str) -> Result<()> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("line {}: expected 'key = value', got '{line}'", lineno + 1))
            })?;
            self.apply_kv(key.trim(), value.trim())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paper_preset_values() {
        let s = Scenario::paper();
        assert_eq!(s.src_irs_distance_m, 80.0);
        assert_eq!(s.vertical_offset_m, 10.0);
        assert_eq!(s.src_gain_dbi, 5.0);
        assert_eq!(s.dest_gain_dbi, 0.0);
        assert_eq!(s.bandwidth_hz, 1e7);
        assert_eq!(s.alpha, 1.0);
        assert_eq!(s.nu, 0.5);
        assert_eq!(s.p_source_w, 0.1);
        assert_eq!(s.p_elem_w, 0.005);
        assert_eq!(s.irs_elements, vec![25, 50, 100, 150]);
        let sigma2 = s.sigma2().unwrap();
        assert!((watts_to_dbm(sigma2) - (-94.0)).abs() < 1e-12);
    }

    #[test]
    fn config_text_overrides() {
        let mut s = Scenario::paper();
        s.apply_config_text(
            "# sweep setup\n\
             d1_m = 50\n\
             p_elem_mw = 10   # heavier elements\n\
             irs_elements = 10, 20\n\
             tx_power_dbm = 30\n",
        )
        .unwrap();
        assert_eq!(s.d1_m, 50.0);
        assert!((s.p_elem_w - 0.01).abs() < 1e-15);
        assert_eq!(s.irs_elements, vec![10, 20]);
        assert!((s.tx_power_w - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bad_config_rejected() {
        let mut s = Scenario::paper();
        assert!(s.apply_config_text("mystery_key = 5\n").is_err());
        assert!(s.apply_config_text("d1_m = fifty\n").is_err());
        assert!(s.apply_config_text("just a line\n").is_err());
        assert!(s.apply_kv("alpha", "inf").is_err());
    }

    #[test]
    fn canonical_line_is_stable() {
        let s = Scenario::paper();
        assert_eq!(s.canonical_line(), Scenario::paper().canonical_line());
        assert!(s.canonical_line().contains("tx_power_dbm=20"));
        assert!(s.canonical_line().contains("p_elem_mw=5"));
    }
}
