//! Gnuplot script charting the running average against each bound.

use std::fmt::Write as _;
use std::path::Path;

use crate::csv_io::header;
use crate::error::HarnessError;
use crate::experiment::{BoundReport, Check};

pub fn plot_script(report: &BoundReport, csv_name: &str, log_log: bool) -> String {
    let cols = header(report);
    let column = |name: &str| cols.iter().position(|c| c == name).map(|i| i + 1);
    let mut s = String::new();
    s.push_str("set datafile separator ','\n");
    s.push_str("set key top left\n");
    s.push_str("set xlabel 'k'\n");
    s.push_str("set ylabel 'eigenvalue'\n");
    if log_log {
        s.push_str("set logscale xy\n");
    }
    let _ = write!(
        s,
        "plot '{csv_name}' using 1:{} with linespoints title 'running average'",
        column("running_avg").unwrap_or(3)
    );
    let _ = write!(s, ", \\\n     '' using 1:2 with points title 'lambda_k'");
    for b in &report.bounds {
        let style = match b.check() {
            Check::Reference => "dashtype 2",
            _ => "",
        };
        if let Some(c) = column(b.column()) {
            let _ = write!(s, ", \\\n     '' using 1:{c} with lines {style} title '{b}'");
        }
    }
    s.push('\n');
    s
}

pub fn emit_plot_script(
    report: &BoundReport,
    path: &Path,
    csv_name: &str,
    log_log: bool,
) -> Result<(), HarnessError> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent).map_err(|e| HarnessError::io(parent, e))?;
    }
    std::fs::write(path, plot_script(report, csv_name, log_log)).map_err(|e| HarnessError::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiment::BoundId;

    #[test]
    fn spectrum_only_and_log_log() {
        let r = BoundReport { bounds: vec![], rows: vec![] };
        let s = plot_script(&r, "x.csv", false);
        assert_eq!(s.matches("using").count(), 2);
        assert!(!s.contains("logscale"));
        assert!(plot_script(&r, "x.csv", true).contains("set logscale xy"));
    }

    #[test]
    fn one_curve_per_bound() {
        let r = BoundReport { bounds: vec![BoundId::LiYau, BoundId::TheoremUpper], rows: vec![] };
        let s = plot_script(&r, "x.csv", false);
        assert!(s.contains("using 1:4 with lines  title 'li_yau'"));
        assert!(s.contains("using 1:5 with lines  title 'theorem_upper'"));
    }
}
