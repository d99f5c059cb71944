//! Batch harness around `polybound-core`: experiment configs, bound reports
//! with ordering verdicts, CSV and gnuplot output.

pub mod config;
pub mod csv_io;
pub mod error;
pub mod experiment;
pub mod plot;
pub mod table1;

use std::path::{Path, PathBuf};

pub use config::ExperimentConfig;
pub use error::{exit, HarnessError};
pub use experiment::{run_experiment, verify, BoundId, BoundReport, Verdict};

/// Runs the experiment and writes CSV and plot script under `out_dir`
/// (paths from the config are taken relative to it). Returns the report
/// and the CSV path.
pub fn write_outputs(
    cfg: &ExperimentConfig,
    report: &BoundReport,
    out_dir: &Path,
) -> Result<(PathBuf, PathBuf), HarnessError> {
    let csv_path = out_dir.join(&cfg.output.csv);
    let plot_path = out_dir.join(&cfg.output.plot);
    csv_io::write_report_file(report, &csv_path)?;
    let csv_name = csv_path
        .strip_prefix(plot_path.parent().unwrap_or(out_dir))
        .unwrap_or(&csv_path)
        .to_string_lossy()
        .into_owned();
    plot::emit_plot_script(report, &plot_path, &csv_name, cfg.output.log_log)?;
    Ok((csv_path, plot_path))
}
