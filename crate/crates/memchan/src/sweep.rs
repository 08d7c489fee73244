//! Parameter sweeps over entanglement and photon budget, serialized to CSV
//! or JSON.
//!
//! Four presets cover the standard plots: the y-optimized rate as a
//! function of the entanglement fraction, and the optimal entanglement,
//! optimal classical correlation and entanglement gain as functions of the
//! photon budget at a fixed signal-to-noise ratio. Each preset runs one
//! series per memory coefficient.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::capacity::{optimal_strategy, optimal_y};
use crate::channel::ChannelSpec;
use crate::error::{Error, Result};

/// Default memory coefficients for the series of every preset.
pub const DEFAULT_MEMORY_SERIES: [f64; 5] = [0.0, 0.3, 0.5, 0.7, 1.0];

/// Serialization formats for sweep tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Which quantity a sweep tabulates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigurePreset {
    /// Rate maximized over `y`, versus the entanglement fraction.
    RateVsEntanglement,
    /// Optimal entanglement fraction versus the photon budget.
    OptimalEntanglement,
    /// Optimal classical correlation versus the photon budget.
    OptimalCorrelation,
    /// Entanglement gain versus the photon budget.
    Gain,
}

impl FigurePreset {
    pub fn from_figure_number(n: u8) -> Option<Self> {
        match n {
            1 => Some(FigurePreset::RateVsEntanglement),
            2 => Some(FigurePreset::OptimalEntanglement),
            3 => Some(FigurePreset::OptimalCorrelation),
            4 => Some(FigurePreset::Gain),
            _ => None,
        }
    }
}

/// A sweep request: preset, abscissa values, memory series and the fixed
/// parameters.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub preset: FigurePreset,
    /// Strictly increasing abscissa values (entanglement fractions for the
    /// rate preset, photon budgets otherwise).
    pub axis: Vec<f64>,
    /// One series is produced per memory coefficient.
    pub memory_series: Vec<f64>,
    /// Photon budget for the rate-versus-entanglement preset.
    pub nbar: f64,
    /// Noise photons for the rate-versus-entanglement preset.
    pub noise_photons: f64,
    /// Signal-to-noise ratio `nbar / N` pinning the noise along the budget
    /// axis for the other presets.
    pub snr: f64,
    pub format: OutputFormat,
}

impl SweepSpec {
    /// Rate versus entanglement at `nbar = 1`, `N = 1/3`:
    /// 41 entanglement fractions from 0 to 1.
    pub fn figure1() -> Self {
        SweepSpec {
            preset: FigurePreset::RateVsEntanglement,
            axis: (0..=40).map(|i| i as f64 / 40.0).collect(),
            memory_series: DEFAULT_MEMORY_SERIES.to_vec(),
            nbar: 1.0,
            noise_photons: 1.0 / 3.0,
            snr: 3.0,
            format: OutputFormat::Csv,
        }
    }

    fn budget_axis() -> Vec<f64> {
        // 26 log-spaced budgets covering 1e-2 .. 1e3, five per decade
        (0..=25).map(|i| 10f64.powf(-2.0 + i as f64 * 0.2)).collect()
    }

    fn budget_preset(preset: FigurePreset) -> Self {
        SweepSpec {
            preset,
            axis: Self::budget_axis(),
            memory_series: DEFAULT_MEMORY_SERIES.to_vec(),
            nbar: 1.0,
            noise_photons: 1.0 / 3.0,
            snr: 3.0,
            format: OutputFormat::Csv,
        }
    }

    /// Optimal entanglement fraction versus photon budget at `nbar/N = 3`.
    pub fn figure2() -> Self {
        Self::budget_preset(FigurePreset::OptimalEntanglement)
    }

    /// Optimal classical correlation versus photon budget at `nbar/N = 3`.
    pub fn figure3() -> Self {
        Self::budget_preset(FigurePreset::OptimalCorrelation)
    }

    /// Entanglement gain versus photon budget at `nbar/N = 3`.
    pub fn figure4() -> Self {
        Self::budget_preset(FigurePreset::Gain)
    }

    pub fn for_figure_number(n: u8) -> Option<Self> {
        FigurePreset::from_figure_number(n).map(|preset| match preset {
            FigurePreset::RateVsEntanglement => Self::figure1(),
            _ => Self::budget_preset(preset),
        })
    }

    fn validate(&self) -> Result<()> {
        if self.axis.is_empty() || self.axis.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidAxis);
        }
        if self.memory_series.is_empty() {
            return Err(Error::InvalidAxis);
        }
        for &x in &self.memory_series {
            ChannelSpec::new(0.0, x)?;
        }
        match self.preset {
            FigurePreset::RateVsEntanglement => {
                if !self.nbar.is_finite() || self.nbar <= 0.0 {
                    return Err(Error::ParameterRange {
                        name: "photon budget",
                        constraint: "finite and positive",
                        value: self.nbar,
                    });
                }
                ChannelSpec::new(self.noise_photons, 0.0)?;
            }
            _ => {
                if !self.snr.is_finite() || self.snr <= 0.0 {
                    return Err(Error::ParameterRange {
                        name: "signal-to-noise ratio",
                        constraint: "finite and positive",
                        value: self.snr,
                    });
                }
            }
        }
        Ok(())
    }
}

/// One sweep row: the abscissa plus one ordinate per series.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub abscissa: f64,
    pub ordinates: Vec<f64>,
}

/// A computed sweep: column labels plus rows ordered by abscissa.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub abscissa_label: String,
    pub series_labels: Vec<String>,
    pub rows: Vec<SweepRow>,
}

fn memory_label(x: f64) -> String {
    format!("x={x}")
}

/// Rate maximized over the classical correlation, per entanglement
/// fraction and memory coefficient.
pub fn figure1_sweep(spec: &SweepSpec) -> Result<SweepTable> {
    spec.validate()?;
    let mut rows = Vec::with_capacity(spec.axis.len());
    for &eta in &spec.axis {
        let mut ordinates = Vec::with_capacity(spec.memory_series.len());
        for &x in &spec.memory_series {
            let channel = ChannelSpec::new(spec.noise_photons, x)?;
            let (_, rate) = optimal_y(eta, spec.nbar, &channel)?;
            ordinates.push(rate);
        }
        rows.push(SweepRow {
            abscissa: eta,
            ordinates,
        });
    }
    Ok(SweepTable {
        abscissa_label: "eta".to_string(),
        series_labels: spec.memory_series.iter().copied().map(memory_label).collect(),
        rows,
    })
}

fn budget_sweep(
    spec: &SweepSpec,
    ordinate: impl Fn(&crate::capacity::Optimum) -> f64,
) -> Result<SweepTable> {
    spec.validate()?;
    let mut rows = Vec::with_capacity(spec.axis.len());
    for &nbar in &spec.axis {
        let mut ordinates = Vec::with_capacity(spec.memory_series.len());
        for &x in &spec.memory_series {
            let channel = ChannelSpec::new(nbar / spec.snr, x)?;
            let opt = optimal_strategy(nbar, &channel)?;
            ordinates.push(ordinate(&opt));
        }
        rows.push(SweepRow {
            abscissa: nbar,
            ordinates,
        });
    }
    Ok(SweepTable {
        abscissa_label: "nbar".to_string(),
        series_labels: spec.memory_series.iter().copied().map(memory_label).collect(),
        rows,
    })
}

/// Optimal entanglement fraction per photon budget and memory coefficient.
pub fn figure2_sweep(spec: &SweepSpec) -> Result<SweepTable> {
    budget_sweep(spec, |opt| opt.eta_star)
}

/// Optimal classical correlation per photon budget and memory coefficient.
pub fn figure3_sweep(spec: &SweepSpec) -> Result<SweepTable> {
    budget_sweep(spec, |opt| opt.y_star)
}

/// Entanglement gain per photon budget and memory coefficient.
pub fn figure4_sweep(spec: &SweepSpec) -> Result<SweepTable> {
    budget_sweep(spec, |opt| opt.gain)
}

/// Runs the sweep selected by the spec's preset.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepTable> {
    match spec.preset {
        FigurePreset::RateVsEntanglement => figure1_sweep(spec),
        FigurePreset::OptimalEntanglement => figure2_sweep(spec),
        FigurePreset::OptimalCorrelation => figure3_sweep(spec),
        FigurePreset::Gain => figure4_sweep(spec),
    }
}

/// Formats a float with the given number of significant digits, using
/// positional notation for moderate magnitudes and scientific notation
/// otherwise. Deterministic and locale-independent.
pub fn format_significant(value: f64, digits: usize) -> String {
    assert!(digits >= 1);
    if !value.is_finite() {
        return value.to_string();
    }
    if value == 0.0 {
        return format!("{:.*}", digits - 1, 0.0);
    }
    let sci = format!("{:.*e}", digits - 1, value);
    let (mantissa, exponent) = sci.split_once('e').expect("scientific format");
    let exponent: i32 = exponent.parse().expect("numeric exponent");
    if exponent < -4 || exponent >= digits as i32 {
        return sci;
    }
    let negative = mantissa.starts_with('-');
    let figures: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    debug_assert_eq!(figures.len(), digits);
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if exponent < 0 {
        out.push_str("0.");
        for _ in 0..(-exponent - 1) {
            out.push('0');
        }
        out.push_str(&figures);
    } else {
        let point = (exponent + 1) as usize;
        out.push_str(&figures[..point]);
        if point < figures.len() {
            out.push('.');
            out.push_str(&figures[point..]);
        }
    }
    out
}

/// Serializes a table: CSV with a mandatory header row, LF line endings and
/// 12-significant-digit values, or a JSON array of flat row objects whose
/// keys match the CSV header. Byte-deterministic for identical inputs.
pub fn emit_to_writer<W: Write + ?Sized>(
    table: &SweepTable,
    format: OutputFormat,
    writer: &mut W,
) -> std::io::Result<()> {
    match format {
        OutputFormat::Csv => {
            write!(writer, "{}", table.abscissa_label)?;
            for label in &table.series_labels {
                write!(writer, ",{label}")?;
            }
            writer.write_all(b"\n")?;
            for row in &table.rows {
                write!(writer, "{}", format_significant(row.abscissa, 12))?;
                for value in &row.ordinates {
                    write!(writer, ",{}", format_significant(*value, 12))?;
                }
                writer.write_all(b"\n")?;
            }
        }
        OutputFormat::Json => {
            let rows: Vec<serde_json::Value> = table
                .rows
                .iter()
                .map(|row| {
                    let mut object = serde_json::Map::new();
                    object.insert(table.abscissa_label.clone(), row.abscissa.into());
                    for (label, value) in table.series_labels.iter().zip(&row.ordinates) {
                        object.insert(label.clone(), (*value).into());
                    }
                    serde_json::Value::Object(object)
                })
                .collect();
            serde_json::to_writer_pretty(&mut *writer, &rows)?;
            writer.write_all(b"\n")?;
        }
    }
    Ok(())
}

/// Serializes a table to a file, reporting the destination on failure.
pub fn emit(table: &SweepTable, format: OutputFormat, destination: &Path) -> Result<()> {
    let io_err = |source| Error::Io {
        path: destination.display().to_string(),
        source,
    };
    let file = File::create(destination).map_err(io_err)?;
    let mut writer = BufWriter::new(file);
    emit_to_writer(table, format, &mut writer).map_err(io_err)?;
    writer.flush().map_err(io_err)
}
