//! Command-line frontend: single-point rate/power/energy queries, element
//! threshold solving, figure-reproduction sweeps, crossover solving, and
//! brute-force verification runs.
//!
//! Configuration is resolved in three layers: the built-in preset, then an
//! optional config file (`--config` or the `IRSLINK_CONFIG` env var), then
//! `--set key=value` overrides. Data goes to stdout (or `-o FILE`);
//! diagnostics go to stderr. Exit code 0 only on full success.

use std::io::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use irslink::energy;
use irslink::linkmath::{self, IrsConfig, LinkGains};
use irslink::oracle;
use irslink::powerctl::{self, DfMode, RateTarget, TransmitMode};
use irslink::scenario::Scenario;
use irslink::sweep::{self, fmt_sig10, SweepSpec, SweepVariable};
use irslink::units::{dbm_to_watts, watts_to_dbm};

const CONFIG_ENV: &str = "IRSLINK_CONFIG";

#[derive(Parser)]
#[command(name = "irslink", version, about = "Link-budget analysis: IRS vs decode-and-forward relaying")]
struct Cli {
    #[command(flatten)]
    config: ConfigArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ConfigArgs {
    /// Built-in scenario preset.
    #[arg(long, global = true, default_value = "paper")]
    preset: String,
    /// Config file with `key = value` lines; defaults to $IRSLINK_CONFIG.
    #[arg(long, global = true)]
    config: Option<std::path::PathBuf>,
    /// Individual overrides, e.g. --set d1_m=50 (repeatable).
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    overrides: Vec<String>,
    /// Destination horizontal offset in meters (shorthand override).
    #[arg(long, global = true)]
    d1: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeArg {
    Siso,
    Irs,
    Df,
    DfMode,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum FigureArg {
    /// Channel gain vs distance.
    #[value(name = "2")]
    Fig2,
    /// Transmit power vs d1 at 4 bit/s/Hz.
    #[value(name = "5a")]
    Fig5a,
    /// Transmit power vs d1 at 6 bit/s/Hz.
    #[value(name = "5b")]
    Fig5b,
    /// Energy efficiency vs rate target.
    #[value(name = "6")]
    Fig6,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    /// Phase-grid search vs the closed-form IRS rate.
    Lemma1,
    /// Power-split grid search vs the closed-form DF optimum.
    Prop1,
    /// Integer scans vs the closed-form thresholds and element counts.
    Prop23,
}

#[derive(Subcommand)]
enum Command {
    /// Achievable rate of one scheme at a transmit power.
    Rate {
        #[arg(long, value_enum)]
        scheme: SchemeArg,
        /// Transmit power in dBm; defaults to the scenario's budget.
        #[arg(long, value_parser = parse_finite)]
        p_dbm: Option<f64>,
        /// Surface element count (IRS scheme).
        #[arg(long, default_value_t = 100)]
        n: u32,
    },
    /// Transmit power required to hit a rate target.
    Power {
        #[arg(long, value_enum)]
        scheme: SchemeArg,
        #[arg(long, value_parser = parse_finite)]
        r_bar: f64,
        #[arg(long, default_value_t = 100)]
        n: u32,
    },
    /// Energy efficiency of all schemes at a rate target.
    Ee {
        #[arg(long, value_parser = parse_finite)]
        r_bar: f64,
    },
    /// Minimum surface size for the IRS to out-rate optimized DF relaying.
    Threshold {
        /// Rate target; transmit power is matched to the DF requirement.
        #[arg(long, value_parser = parse_finite, conflicts_with_all = ["p_dbm", "low_snr"])]
        r_bar: Option<f64>,
        /// Explicit transmit power in dBm.
        #[arg(long, value_parser = parse_finite, conflicts_with = "low_snr")]
        p_dbm: Option<f64>,
        /// Vanishing-power limit of the threshold.
        #[arg(long)]
        low_snr: bool,
    },
    /// Reproduce a figure as a plot-ready table.
    Sweep {
        #[arg(long, value_enum)]
        figure: FigureArg,
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
        /// Output file; stdout when omitted.
        #[arg(short, long)]
        output: Option<std::path::PathBuf>,
    },
    /// Run a brute-force verification suite against the closed forms.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Random draws for the sampled suites.
        #[arg(long)]
        draws: Option<u32>,
        /// Elements per realization (lemma1 suite).
        #[arg(long, default_value_t = 4)]
        n: u32,
        /// Grid points per search dimension.
        #[arg(long)]
        resolution: Option<u32>,
    },
    /// Solve the energy-efficiency crossover rates.
    Crossover,
}

fn parse_finite(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|_| format!("'{s}' is not a number"))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(format!("'{s}' is not finite"))
    }
}

fn resolve_scenario(args: &ConfigArgs) -> Result<Scenario, String> {
    let mut s = match args.preset.as_str() {
        "paper" => Scenario::paper(),
        other => return Err(format!("unknown preset '{other}' (available: paper)")),
    };
    let path = args
        .config
        .clone()
        .or_else(|| std::env::var_os(CONFIG_ENV).map(Into::into));
    if let Some(path) = path {
        let text = std::fs::read_to_string(&path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        s.apply_config_text(&text)
            .map_err(|e| format!("config {}: {e}", path.display()))?;
    }
    for kv in &args.overrides {
        let (key, value) = kv
            .split_once('=')
            .ok_or_else(|| format!("--set expects KEY=VALUE, got '{kv}'"))?;
        s.apply_kv(key.trim(), value.trim())
            .map_err(|e| format!("--set {kv}: {e}"))?;
    }
    if let Some(d1) = args.d1 {
        s.apply_kv("d1_m", &d1.to_string()).map_err(|e| e.to_string())?;
    }
    Ok(s)
}

struct Record(Vec<(&'static str, String)>);

impl Record {
    fn new() -> Self {
        Self(Vec::new())
    }
    fn num(&mut self, key: &'static str, value: f64) -> &mut Self {
        self.0.push((key, fmt_sig10(value)));
        self
    }
    fn text(&mut self, key: &'static str, value: impl Into<String>) -> &mut Self {
        self.0.push((key, value.into()));
        self
    }
    fn print(&self) {
        for (key, value) in &self.0 {
            println!("{key}={value}");
        }
    }
}

fn df_mode_label(mode: DfMode) -> &'static str {
    match mode {
        DfMode::SisoFallback => "SisoFallback",
        DfMode::DfActive => "DfActive",
    }
}

fn cmd_rate(s: &Scenario, scheme: SchemeArg, p_dbm: Option<f64>, n: u32) -> irslink::Result<()> {
    let gains = s.gains()?;
    let sigma2 = s.sigma2()?;
    let p = p_dbm.map_or(s.tx_power_w, dbm_to_watts);
    let mut rec = Record::new();
    rec.num("d1_m", s.d1_m).num("p_dbm", watts_to_dbm(p)).num("p_w", p);
    rec.num("sigma2_w", sigma2);
    match scheme {
        SchemeArg::Siso => {
            rec.text("scheme", "siso");
            rec.num("snr", p * gains.beta_sd() / sigma2);
            rec.num("rate_bps_hz", linkmath::rate_siso(p, gains.beta_sd(), sigma2)?);
        }
        SchemeArg::Irs => {
            let irs = IrsConfig::new(n, s.alpha, s.p_elem_w)?;
            let amp = gains.beta_sd().sqrt() + f64::from(n) * s.alpha * gains.beta_irs().sqrt();
            rec.text("scheme", "irs");
            rec.num("n", f64::from(n));
            rec.num("snr", p * amp * amp / sigma2);
            rec.num("rate_bps_hz", linkmath::rate_irs(p, &gains, &irs, sigma2)?);
        }
        SchemeArg::Df | SchemeArg::DfMode => {
            let split = powerctl::optimal_df_power_split(p, &gains);
            let df = powerctl::rate_df_opt(p, &gains, sigma2)?;
            rec.text("scheme", "df");
            rec.text("mode", df_mode_label(df.mode));
            rec.num("p1_w", split.p1).num("p2_w", split.p2);
            rec.num("rate_bps_hz", df.rate);
        }
    }
    rec.print();
    Ok(())
}

fn cmd_power(s: &Scenario, scheme: SchemeArg, r_bar: f64, n: u32) -> irslink::Result<()> {
    let gains = s.gains()?;
    let sigma2 = s.sigma2()?;
    let target = RateTarget::new(r_bar)?;
    let mut rec = Record::new();
    rec.num("d1_m", s.d1_m).num("r_bar_bps_hz", r_bar);
    let p = match scheme {
        SchemeArg::Siso => {
            rec.text("scheme", "siso");
            powerctl::power_siso(&target, gains.beta_sd(), sigma2)
        }
        SchemeArg::Irs => {
            rec.text("scheme", "irs");
            rec.num("n", f64::from(n));
            let irs = IrsConfig::new(n, s.alpha, s.p_elem_w)?;
            powerctl::power_irs(&target, &gains, &irs, sigma2)
        }
        SchemeArg::Df => {
            rec.text("scheme", "df");
            powerctl::power_df(&target, &gains, sigma2)
        }
        SchemeArg::DfMode => {
            let mp = powerctl::power_df_mode(&target, &gains, sigma2);
            rec.text("scheme", "df-mode");
            rec.text(
                "mode",
                match mp.mode {
                    TransmitMode::Siso => "Siso",
                    TransmitMode::Df => "Df",
                },
            );
            mp.power
        }
    };
    rec.num("p_w", p).num("p_dbm", watts_to_dbm(p));
    rec.print();
    Ok(())
}

fn cmd_ee(s: &Scenario, r_bar: f64) -> irslink::Result<()> {
    let gains = s.gains()?;
    let sigma2 = s.sigma2()?;
    let target = RateTarget::new(r_bar)?;
    let pm = s.power_model(0.0)?;
    let choice = energy::optimal_n_ee(&target, sigma2, s.alpha, &gains, s.p_elem_w)?;
    let irs = IrsConfig::new(choice.n_opt, s.alpha, s.p_elem_w)?;
    let ee_siso = energy::energy_efficiency(
        s.bandwidth_hz,
        &target,
        &energy::total_power_siso(&target, &pm, gains.beta_sd()),
    );
    let ee_df = energy::energy_efficiency(
        s.bandwidth_hz,
        &target,
        &energy::total_power_df(&target, &pm, &gains),
    );
    let ee_irs = energy::energy_efficiency(
        s.bandwidth_hz,
        &target,
        &energy::total_power_irs(&target, &pm, &gains, &irs),
    );
    let best = energy::best_scheme_ee(&target, &pm, &gains, s.alpha, s.p_elem_w, s.bandwidth_hz)?;
    Record::new()
        .num("d1_m", s.d1_m)
        .num("r_bar_bps_hz", r_bar)
        .num("ee_siso_bit_per_joule", ee_siso)
        .num("ee_df_bit_per_joule", ee_df)
        .num("ee_irs_bit_per_joule", ee_irs)
        .num("n_real", choice.n_real)
        .num("n_opt", f64::from(choice.n_opt))
        .text("best", best.scheme.label())
        .print();
    Ok(())
}

fn cmd_threshold(
    s: &Scenario,
    r_bar: Option<f64>,
    p_dbm: Option<f64>,
    low_snr: bool,
) -> Result<(), String> {
    let gains = s.gains().map_err(|e| e.to_string())?;
    let sigma2 = s.sigma2().map_err(|e| e.to_string())?;
    let mut rec = Record::new();
    rec.num("d1_m", s.d1_m);
    let t = if low_snr {
        rec.text("regime", "low-snr-limit");
        powerctl::min_elements_low_snr_limit(&gains, s.alpha)
    } else {
        let p = match (r_bar, p_dbm) {
            (Some(r), None) => {
                let target = RateTarget::new(r).map_err(|e| e.to_string())?;
                rec.num("r_bar_bps_hz", r);
                powerctl::power_df(&target, &gains, sigma2)
            }
            (None, Some(dbm)) => dbm_to_watts(dbm),
            (None, None) => {
                return Err("threshold needs one of --r-bar, --p-dbm, --low-snr".into())
            }
            (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
        };
        rec.num("p_dbm", watts_to_dbm(p));
        powerctl::min_elements_to_beat_df(p, &gains, s.alpha, sigma2).map_err(|e| e.to_string())?
    };
    rec.num("threshold", t.value);
    rec.num("min_integer_n", f64::from(t.min_integer_n));
    rec.text("always_wins", if t.always_wins { "true" } else { "false" });
    rec.print();
    Ok(())
}

fn cmd_sweep(
    s: &Scenario,
    figure: FigureArg,
    format: FormatArg,
    output: Option<&std::path::Path>,
) -> Result<(), String> {
    let table = match figure {
        FigureArg::Fig2 => {
            let spec = SweepSpec::new(SweepVariable::Distance, 10.0, 1000.0, 201.0, true, s.clone())
                .map_err(|e| e.to_string())?;
            sweep::sweep_channel_gain(&spec)
        }
        FigureArg::Fig5a | FigureArg::Fig5b => {
            let r_bar = if matches!(figure, FigureArg::Fig5a) { 4.0 } else { 6.0 };
            let target = RateTarget::new(r_bar).map_err(|e| e.to_string())?;
            let spec = SweepSpec::new(SweepVariable::D1, 10.0, 100.0, 1.0, false, s.clone())
                .map_err(|e| e.to_string())?;
            sweep::sweep_power_vs_d1(&spec, &target)
        }
        FigureArg::Fig6 => {
            let spec =
                SweepSpec::new(SweepVariable::RateTarget, 0.05, 12.0, 0.05, false, s.clone())
                    .map_err(|e| e.to_string())?;
            sweep::sweep_ee_vs_rate(&spec)
        }
    }
    .map_err(|e| e.to_string())?;
    let rendered = match format {
        FormatArg::Csv => table.to_csv(),
        FormatArg::Json => table.to_json(),
    };
    match output {
        Some(path) => std::fs::write(path, rendered)
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?,
        None => print!("{rendered}"),
    }
    Ok(())
}

fn cmd_crossover(s: &Scenario) -> Result<(), String> {
    let report = sweep::solve_crossovers(s).map_err(|e| e.to_string())?;
    let mut rec = Record::new();
    rec.num("d1_m", s.d1_m);
    let mut field = |key: &'static str, value: Option<f64>| match value {
        Some(v) => {
            rec.num(key, v);
        }
        None => {
            rec.text(key, "none");
        }
    };
    field("siso_df_crossover_bps_hz", report.siso_df);
    field("df_irs_crossover_bps_hz", report.df_irs);
    field("irs_onset_bps_hz", report.irs_onset);
    rec.print();
    Ok(())
}

/// Log-uniform random gains with `beta_sd <= beta_sr`, matching the regime
/// where the relay and surface comparisons are defined.
fn random_gains<R: Rng>(rng: &mut R) -> LinkGains {
    let draw_db = |rng: &mut R, lo: f64, hi: f64| {
        irslink::units::db_to_linear(rng.random_range(lo..hi))
    };
    loop {
        let sd = draw_db(rng, -130.0, -80.0);
        let sr = draw_db(rng, -90.0, -40.0);
        let rd = draw_db(rng, -90.0, -40.0);
        if sd <= sr {
            return LinkGains::los_product(sd, sr, rd).expect("gains are positive and finite");
        }
    }
}

fn cmd_verify(
    s: &Scenario,
    suite: SuiteArg,
    seed: u64,
    draws: Option<u32>,
    n: u32,
    resolution: Option<u32>,
) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sigma2 = s.sigma2().map_err(|e| e.to_string())?;
    let mut failures = 0u32;
    match suite {
        SuiteArg::Lemma1 => {
            let draws = draws.unwrap_or(100);
            let grid = oracle::GridSpec::new(resolution.unwrap_or(256))
                .map_err(|e| e.to_string())?;
            let gains = s.gains().map_err(|e| e.to_string())?;
            let p = s.tx_power_w;
            let mut worst = 0f64;
            for i in 0..draws {
                let real = oracle::ComplexLinkRealization::random_los(&gains, s.alpha, n, &mut rng)
                    .map_err(|e| e.to_string())?;
                let brute = oracle::brute_force_phase_rate(&real, p, sigma2, &grid)
                    .map_err(|e| e.to_string())?;
                let closed = real.closed_form_rate(p, sigma2).map_err(|e| e.to_string())?;
                let gap = closed - brute;
                let ok = gap >= -1e-12 && gap <= 1e-3;
                if !ok {
                    failures += 1;
                    eprintln!("draw {i}: gap {gap:.3e} out of [0, 1e-3]");
                }
                worst = worst.max(gap.abs());
            }
            println!("suite=lemma1 draws={draws} n={n} resolution={} max_gap={} failures={failures}",
                grid.resolution(), fmt_sig10(worst));
        }
        SuiteArg::Prop1 => {
            let draws = draws.unwrap_or(1000);
            let grid = oracle::GridSpec::new(resolution.unwrap_or(10_000))
                .map_err(|e| e.to_string())?;
            let p = s.tx_power_w;
            let step = 2.0 * p / f64::from(grid.resolution());
            for i in 0..draws {
                let gains = random_gains(&mut rng);
                let scan = oracle::brute_force_power_split(p, &gains, sigma2, &grid)
                    .map_err(|e| e.to_string())?;
                let split = powerctl::optimal_df_power_split(p, &gains);
                let opt = powerctl::rate_df_opt(p, &gains, sigma2)
                    .map_err(|e| e.to_string())?;
                let ok = scan.rate <= opt.rate + 1e-12 && (scan.p1 - split.p1).abs() <= step;
                if !ok {
                    failures += 1;
                    eprintln!(
                        "draw {i}: scan rate {} vs closed {}, p1 {} vs {}",
                        scan.rate, opt.rate, scan.p1, split.p1
                    );
                }
            }
            println!(
                "suite=prop1 draws={draws} resolution={} failures={failures}",
                grid.resolution()
            );
        }
        SuiteArg::Prop23 => {
            let draws = draws.unwrap_or(1000);
            let p = s.tx_power_w;
            for i in 0..draws {
                let gains = random_gains(&mut rng);
                let threshold =
                    powerctl::min_elements_to_beat_df(p, &gains, s.alpha, sigma2)
                        .map_err(|e| e.to_string())?;
                let mut ok = match oracle::brute_force_threshold_n(
                    p, &gains, s.alpha, sigma2, 100_000,
                ) {
                    Ok(scan_n) => scan_n == threshold.min_integer_n,
                    Err(irslink::Error::ThresholdNotFound { .. }) => {
                        threshold.min_integer_n > 100_000
                    }
                    Err(e) => return Err(e.to_string()),
                };
                let target = RateTarget::new(4.0).map_err(|e| e.to_string())?;
                let choice =
                    energy::optimal_n_ee(&target, sigma2, s.alpha, &gains, s.p_elem_w)
                        .map_err(|e| e.to_string())?;
                let scan = oracle::brute_force_optimal_n_ee(
                    &target, &gains, s.alpha, s.p_elem_w, sigma2, choice.n_opt + 1000,
                )
                .map_err(|e| e.to_string())?;
                ok &= scan.bracketed && scan.n == choice.n_opt;
                if !ok {
                    failures += 1;
                    eprintln!(
                        "draw {i}: threshold {} / n_opt {} disagree with scans",
                        threshold.min_integer_n, choice.n_opt
                    );
                }
            }
            println!("suite=prop23 draws={draws} failures={failures}");
        }
    }
    if failures == 0 {
        println!("result=pass");
        Ok(())
    } else {
        Err(format!("{failures} verification failures"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let scenario = match resolve_scenario(&cli.config) {
        Ok(s) => s,
        Err(msg) => {
            let _ = writeln!(std::io::stderr(), "error: {msg}");
            return ExitCode::FAILURE;
        }
    };
    let result: Result<(), String> = match cli.command {
        Command::Rate { scheme, p_dbm, n } => {
            cmd_rate(&scenario, scheme, p_dbm, n).map_err(|e| e.to_string())
        }
        Command::Power { scheme, r_bar, n } => {
            cmd_power(&scenario, scheme, r_bar, n).map_err(|e| e.to_string())
        }
        Command::Ee { r_bar } => cmd_ee(&scenario, r_bar).map_err(|e| e.to_string()),
        Command::Threshold { r_bar, p_dbm, low_snr } => {
            cmd_threshold(&scenario, r_bar, p_dbm, low_snr)
        }
        Command::Sweep { figure, format, output } => {
            cmd_sweep(&scenario, figure, format, output.as_deref())
        }
        Command::Verify { suite, seed, draws, n, resolution } => {
            cmd_verify(&scenario, suite, seed, draws, n, resolution)
        }
        Command::Crossover => cmd_crossover(&scenario),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            let _ = writeln!(std::io::stderr(), "error: {msg}");
            ExitCode::FAILURE
        }
    }
}
