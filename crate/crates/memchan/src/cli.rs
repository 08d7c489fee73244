//! Command-line frontend: capacities, rates, optimization, sweeps and the
//! verification suites.
//!
//! Exit status: 0 on success, 1 on a usage error (bad flags, out-of-range
//! parameters, unwritable output path), 2 on a numerical or physicality
//! error (including verification failures). Identical invocations produce
//! byte-identical output.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::capacity::{memoryless_capacity, optimal_strategy, transmission_rate};
use crate::channel::{ChannelSpec, InputStrategy};
use crate::covariance::BimodalCovariance;
use crate::error::Error;
use crate::oracle::{
    grid_search_optimum, monte_carlo_channel_moments, numeric_symplectic_spectrum,
    random_degenerate_output, random_physical_covariance,
};
use crate::sweep::{emit, emit_to_writer, format_significant, run_sweep, OutputFormat, SweepSpec};

#[derive(Parser)]
#[command(
    name = "memchan",
    version,
    about = "Transmission rates and capacities of two-use Gaussian bosonic channels with correlated thermal noise",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct NoiseArgs {
    /// Mean thermal photons added per mode
    #[arg(long, value_name = "N", value_parser = parse_noise)]
    noise: Option<f64>,

    /// Signal-to-noise ratio nbar/N (alternative to --noise)
    #[arg(long, value_name = "R", value_parser = parse_snr)]
    snr: Option<f64>,
}

impl NoiseArgs {
    fn resolve(&self, nbar: f64) -> f64 {
        match (self.noise, self.snr) {
            (Some(n), _) => n,
            (None, Some(r)) => nbar / r,
            (None, None) => unreachable!("clap enforces the group"),
        }
    }
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum CliFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// One-shot capacity of the memoryless channel: g(nbar + N) - g(N)
    Capacity {
        /// Mean photon number budget per mode
        #[arg(long, value_parser = parse_nbar)]
        nbar: f64,
        #[command(flatten)]
        noise: NoiseArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: CliFormat,
    },

    /// Transmission rate of one strategy through the correlated-noise channel
    Rate {
        #[arg(long, value_parser = parse_nbar)]
        nbar: f64,
        #[command(flatten)]
        noise: NoiseArgs,
        /// Noise correlation coefficient x in [0, 1]
        #[arg(long, value_parser = parse_memory)]
        memory: f64,
        /// Entanglement fraction in [0, 1]
        #[arg(long, value_parser = parse_eta)]
        eta: f64,
        /// Classical correlation coefficient in [-1, 1]
        #[arg(long, value_parser = parse_y, allow_hyphen_values = true)]
        y: f64,
        #[arg(long, value_enum, default_value = "text")]
        format: CliFormat,
    },

    /// Maximize the rate over (y, eta); reports the optimum, squeezing and gain
    Optimize {
        #[arg(long, value_parser = parse_nbar)]
        nbar: f64,
        #[command(flatten)]
        noise: NoiseArgs,
        #[arg(long, value_parser = parse_memory)]
        memory: f64,
        #[arg(long, value_enum, default_value = "text")]
        format: CliFormat,
    },

    /// Entanglement gain: optimized rate over the best unentangled rate
    Gain {
        #[arg(long, value_parser = parse_nbar)]
        nbar: f64,
        #[command(flatten)]
        noise: NoiseArgs,
        #[arg(long, value_parser = parse_memory)]
        memory: f64,
        #[arg(long, value_enum, default_value = "text")]
        format: CliFormat,
    },

    /// Run a preset parameter sweep and emit CSV or JSON
    Sweep {
        /// Preset: 1 rate-vs-entanglement, 2 optimal entanglement,
        /// 3 optimal correlation, 4 gain (2-4 versus photon budget)
        #[arg(long, value_parser = parse_figure)]
        figure: u8,
        #[arg(long, value_enum, default_value = "csv")]
        format: SweepFormat,
        /// Output file; stdout when omitted
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        /// Photon budget override (preset 1 only)
        #[arg(long, value_parser = parse_nbar)]
        nbar: Option<f64>,
        /// Noise photons override (preset 1 only)
        #[arg(long, value_name = "N", value_parser = parse_noise)]
        noise: Option<f64>,
        /// Signal-to-noise ratio override
        #[arg(long, value_name = "R", value_parser = parse_snr)]
        snr: Option<f64>,
    },

    /// Run the independent verification suites (spectrum, Monte Carlo, grid)
    Verify {
        /// RNG seed recorded in the report
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Monte Carlo sample count (at least 10000)
        #[arg(long, default_value_t = 1_000_000, value_parser = parse_samples)]
        samples: u64,
    },
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum SweepFormat {
    Csv,
    Json,
}

impl From<SweepFormat> for OutputFormat {
    fn from(f: SweepFormat) -> Self {
        match f {
            SweepFormat::Csv => OutputFormat::Csv,
            SweepFormat::Json => OutputFormat::Json,
        }
    }
}

fn parse_float(s: &str) -> Result<f64, String> {
    s.parse::<f64>().map_err(|_| format!("`{s}` is not a number"))
}

fn parse_nbar(s: &str) -> Result<f64, String> {
    let v = parse_float(s)?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err("photon budget must be a positive finite number".into())
    }
}

fn parse_noise(s: &str) -> Result<f64, String> {
    let v = parse_float(s)?;
    if v >= 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err("noise photon number must be non-negative and finite".into())
    }
}

fn parse_snr(s: &str) -> Result<f64, String> {
    let v = parse_float(s)?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err("signal-to-noise ratio must be positive and finite".into())
    }
}

fn parse_memory(s: &str) -> Result<f64, String> {
    let v = parse_float(s)?;
    if (0.0..=1.0).contains(&v) {
        Ok(v)
    } else {
        Err("memory coefficient must lie in [0, 1]".into())
    }
}

fn parse_eta(s: &str) -> Result<f64, String> {
    let v = parse_float(s)?;
    if (0.0..=1.0).contains(&v) {
        Ok(v)
    } else {
        Err("entanglement fraction must lie in [0, 1]".into())
    }
}

fn parse_y(s: &str) -> Result<f64, String> {
    let v = parse_float(s)?;
    if (-1.0..=1.0).contains(&v) {
        Ok(v)
    } else {
        Err("classical correlation must lie in [-1, 1]".into())
    }
}

fn parse_figure(s: &str) -> Result<u8, String> {
    match s.parse::<u8>() {
        Ok(n @ 1..=4) => Ok(n),
        _ => Err("figure preset must be 1, 2, 3 or 4".into()),
    }
}

fn parse_samples(s: &str) -> Result<u64, String> {
    match s.parse::<u64>() {
        Ok(n) if n >= 10_000 => Ok(n),
        Ok(_) => Err("sample count must be at least 10000".into()),
        Err(_) => Err(format!("`{s}` is not a sample count")),
    }
}

enum Failure {
    Usage(String),
    Numerical(String),
    Stdout,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Numerical(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(_: std::io::Error) -> Self {
        Failure::Stdout
    }
}

/// Parses `argv` and runs the selected command, writing results to `out`
/// and diagnostics to `err`. Returns the process exit status.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    1
                }
            };
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(Failure::Usage(message)) => {
            let _ = writeln!(err, "error: {message}");
            1
        }
        Err(Failure::Numerical(message)) => {
            let _ = writeln!(err, "error: {message}");
            2
        }
        Err(Failure::Stdout) => 2,
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Capacity { nbar, noise, format } => {
            let c = memoryless_capacity(nbar, noise.resolve(nbar))?;
            match format {
                CliFormat::Text => writeln!(out, "{}", format_significant(c, 12))?,
                CliFormat::Json => {
                    writeln!(out, "{}", serde_json::json!({ "capacity_bits": c }))?
                }
            }
            Ok(())
        }
        Command::Rate {
            nbar,
            noise,
            memory,
            eta,
            y,
            format,
        } => {
            let channel = ChannelSpec::new(noise.resolve(nbar), memory)?;
            let strategy = InputStrategy::new(nbar, eta, y)?;
            let report = transmission_rate(&strategy, &channel)?;
            match format {
                CliFormat::Text => {
                    let lines = [
                        ("lambda_out", report.lambda_out),
                        ("lambda_mixture", report.lambda_mixture),
                        ("entropy_out", report.entropy_out),
                        ("entropy_mixture", report.entropy_mixture),
                        ("rate", report.rate),
                    ];
                    for (key, value) in lines {
                        writeln!(out, "{key}: {}", format_significant(value, 12))?;
                    }
                }
                CliFormat::Json => writeln!(
                    out,
                    "{}",
                    serde_json::to_string(&report).expect("report serializes")
                )?,
            }
            Ok(())
        }
        Command::Optimize {
            nbar,
            noise,
            memory,
            format,
        } => {
            let channel = ChannelSpec::new(noise.resolve(nbar), memory)?;
            let optimum = optimal_strategy(nbar, &channel)?;
            match format {
                CliFormat::Text => {
                    let lines = [
                        ("eta_star", optimum.eta_star),
                        ("y_star", optimum.y_star),
                        ("capacity", optimum.capacity),
                        ("squeezing_db", optimum.squeezing_db),
                        ("gain", optimum.gain),
                    ];
                    for (key, value) in lines {
                        writeln!(out, "{key}: {}", format_significant(value, 12))?;
                    }
                }
                CliFormat::Json => writeln!(
                    out,
                    "{}",
                    serde_json::to_string(&optimum).expect("optimum serializes")
                )?,
            }
            Ok(())
        }
        Command::Gain {
            nbar,
            noise,
            memory,
            format,
        } => {
            let channel = ChannelSpec::new(noise.resolve(nbar), memory)?;
            let optimum = optimal_strategy(nbar, &channel)?;
            match format {
                CliFormat::Text => writeln!(out, "{}", format_significant(optimum.gain, 12))?,
                CliFormat::Json => {
                    writeln!(out, "{}", serde_json::json!({ "gain": optimum.gain }))?
                }
            }
            Ok(())
        }
        Command::Sweep {
            figure,
            format,
            out: out_path,
            nbar,
            noise,
            snr,
        } => {
            let mut spec = SweepSpec::for_figure_number(figure).expect("validated figure number");
            if figure == 1 {
                if let Some(n) = nbar {
                    spec.nbar = n;
                }
                match (noise, snr) {
                    (Some(_), Some(_)) => {
                        return Err(Failure::Usage(
                            "--noise and --snr cannot both be given".into(),
                        ))
                    }
                    (Some(n), None) => spec.noise_photons = n,
                    (None, Some(r)) => spec.noise_photons = spec.nbar / r,
                    (None, None) => {}
                }
            } else {
                if nbar.is_some() || noise.is_some() {
                    return Err(Failure::Usage(
                        "presets 2-4 sweep the photon budget at fixed nbar/N; use --snr".into(),
                    ));
                }
                if let Some(r) = snr {
                    spec.snr = r;
                }
            }
            spec.format = format.into();
            let table = run_sweep(&spec)?;
            match out_path {
                Some(path) => emit(&table, spec.format, &path).map_err(|e| match e {
                    Error::Io { .. } => Failure::Usage(format!("--out: {e}")),
                    other => Failure::from(other),
                })?,
                None => emit_to_writer(&table, spec.format, out)?,
            }
            Ok(())
        }
        Command::Verify { seed, samples } => verify(seed, samples, out),
    }
}

/// Runs the three oracle suites and prints one pass/fail line per check
/// with its margin. Any failure yields a numerical-error exit.
fn verify(seed: u64, samples: u64, out: &mut dyn Write) -> Result<(), Failure> {
    writeln!(out, "seed: {seed}")?;
    writeln!(out, "samples: {samples}")?;
    let mut all_passed = true;

    // biquadratic closed form vs the iterative spectrum
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst_rel = 0.0f64;
    for _ in 0..10_000 {
        let gamma = random_physical_covariance(&mut rng);
        let closed = gamma.symplectic_values()?;
        let numeric = numeric_symplectic_spectrum(&gamma)?;
        worst_rel = worst_rel
            .max((closed.larger - numeric.larger).abs() / numeric.larger)
            .max((closed.smaller - numeric.smaller).abs() / numeric.smaller);
    }
    all_passed &= report_line(
        out,
        "spectrum-agreement",
        worst_rel <= 1e-10,
        &format!("max relative deviation {worst_rel:.3e}, tolerance 1.0e-10, 10000 cases"),
    )?;

    // doubly degenerate closed forms vs the iterative spectrum
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
    let mut worst_uv = 0.0f64;
    for _ in 0..2_000 {
        let (output, mixture) = random_degenerate_output(&mut rng)?;
        for gamma in [output, mixture] {
            let closed = gamma.symplectic_values()?;
            let numeric = numeric_symplectic_spectrum(&gamma)?;
            worst_uv = worst_uv
                .max((closed.larger - numeric.larger).abs() / numeric.larger)
                .max((closed.smaller - numeric.smaller).abs() / numeric.smaller);
        }
    }
    all_passed &= report_line(
        out,
        "degenerate-spectrum-agreement",
        worst_uv <= 1e-10,
        &format!("max relative deviation {worst_uv:.3e}, tolerance 1.0e-10, 2000 cases"),
    )?;

    // Monte Carlo second moments vs the analytic channel action
    let channel = ChannelSpec::new(1.0 / 3.0, 0.7)?;
    let report = monte_carlo_channel_moments(
        &BimodalCovariance::vacuum_pair(),
        &channel,
        samples,
        seed.wrapping_add(2),
    )?;
    let mc_bound = 10.0 * channel.noise_photons() * (2.0 / samples as f64).sqrt();
    all_passed &= report_line(
        out,
        "monte-carlo-noise",
        report.max_abs_deviation < mc_bound,
        &format!(
            "max entry deviation {:.3e}, bound {mc_bound:.3e}",
            report.max_abs_deviation
        ),
    )?;

    // optimizer vs exhaustive grid search: the optimizer must dominate the
    // grid (it searches the continuum) and land within two grid cells of
    // the grid argmax. Rate closeness is reported but not asserted: the
    // rate has a square-root cusp in eta at 0, so for some configurations
    // the true optimum sits inside the first grid cell and no uniform grid
    // resolves it.
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(3));
    let mut worst_gap = 0.0f64;
    let mut worst_shortfall = 0.0f64;
    let mut proximate = true;
    const RESOLUTION: usize = 201;
    let eta_cell = 1.0 / (RESOLUTION - 1) as f64;
    let y_cell = 2.0 / (RESOLUTION - 1) as f64;
    for _ in 0..5 {
        use rand::Rng;
        let nbar = 10f64.powf(rng.gen_range(-1.0..1.0));
        let noise = rng.gen_range(0.01..2.0);
        let x = rng.gen_range(0.0..=1.0);
        let channel = ChannelSpec::new(noise, x)?;
        let optimum = optimal_strategy(nbar, &channel)?;
        let grid = grid_search_optimum(nbar, &channel, RESOLUTION)?;
        worst_gap = worst_gap.max((optimum.capacity - grid.rate).abs());
        worst_shortfall = worst_shortfall.max(grid.rate - optimum.capacity);
        let near = (optimum.eta_star - grid.eta).abs() <= 2.0 * eta_cell
            && (optimum.y_star - grid.y).abs() <= 2.0 * y_cell;
        // a nearly flat rate surface can park the grid argmax anywhere
        proximate &= near || (optimum.capacity - grid.rate).abs() <= 1e-6;
    }
    all_passed &= report_line(
        out,
        "optimizer-vs-grid",
        worst_shortfall <= 1e-9 && proximate,
        &format!(
            "grid shortfall {worst_shortfall:.3e} bits (tolerance 1.0e-9), \
             argmax within 2 cells, max rate gap {worst_gap:.3e} bits, 5 configurations"
        ),
    )?;

    writeln!(out, "verification: {}", if all_passed { "PASS" } else { "FAIL" })?;
    if all_passed {
        Ok(())
    } else {
        Err(Failure::Numerical("verification failed".into()))
    }
}

fn report_line(
    out: &mut dyn Write,
    name: &str,
    passed: bool,
    detail: &str,
) -> Result<bool, Failure> {
    writeln!(
        out,
        "{name}: {} ({detail})",
        if passed { "PASS" } else { "FAIL" }
    )?;
    Ok(passed)
}
