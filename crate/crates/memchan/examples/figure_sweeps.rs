//! Generates the four preset sweep datasets and writes them as CSV files
//! into ./sweeps/ (pass a directory argument to override).
//!
//! Run with: cargo run --release -p memchan --example figure_sweeps

use std::path::PathBuf;

use memchan::sweep::{emit, run_sweep, OutputFormat, SweepSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("sweeps"));
    std::fs::create_dir_all(&dir)?;

    let presets = [
        (SweepSpec::figure1(), "rate_vs_entanglement.csv"),
        (SweepSpec::figure2(), "optimal_entanglement.csv"),
        (SweepSpec::figure3(), "optimal_correlation.csv"),
        (SweepSpec::figure4(), "gain.csv"),
    ];
    for (spec, name) in presets {
        let table = run_sweep(&spec)?;
        let path = dir.join(name);
        emit(&table, OutputFormat::Csv, &path)?;
        println!(
            "wrote {} ({} rows x {} series, abscissa `{}`)",
            path.display(),
            table.rows.len(),
            table.series_labels.len(),
            table.abscissa_label
        );
    }
    Ok(())
}
