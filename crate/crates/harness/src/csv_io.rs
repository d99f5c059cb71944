//! CSV serialisation of a [`BoundReport`].
//!
//! Columns: `k, lambda_k, running_avg`, one value column per bound, then
//! `sigma0, theta` (and `theta_mc`) when a `σ₀`-dependent bound is present,
//! then `<bound>_valid, <bound>_degenerate, <bound>_verdict` per bound.
//! Floats use 17 significant digits so parsing restores them bit for bit.
//! Missing values are written as `NaN`.

use std::io::{Read, Write};
use std::path::Path;

use crate::error::HarnessError;
use crate::experiment::{BoundCell, BoundId, BoundReport, ReportRow, Verdict};

pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn format_opt(x: Option<f64>) -> String {
    format_float(x.unwrap_or(f64::NAN))
}

fn flag(b: bool) -> &'static str {
    if b {
        "1"
    } else {
        "0"
    }
}

pub fn header(report: &BoundReport) -> Vec<String> {
    let mut h: Vec<String> = ["k", "lambda_k", "running_avg"].map(String::from).to_vec();
    h.extend(report.bounds.iter().map(|b| b.column().to_string()));
    if report.has_sigma0() {
        h.push("sigma0".into());
        h.push("theta".into());
        if report.has_theta_mc() {
            h.push("theta_mc".into());
        }
    }
    for b in &report.bounds {
        for suffix in ["valid", "degenerate", "verdict"] {
            h.push(format!("{}_{suffix}", b.column()));
        }
    }
    h
}

pub fn write_report<W: Write>(report: &BoundReport, out: W) -> Result<(), HarnessError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(header(report))?;
    let with_sigma = report.has_sigma0();
    let with_mc = report.has_theta_mc();
    for row in &report.rows {
        let mut rec = vec![row.k.to_string(), format_float(row.lambda_k), format_float(row.running_avg)];
        rec.extend(row.cells.iter().map(|c| format_float(c.value)));
        if with_sigma {
            rec.push(format_opt(row.sigma0));
            rec.push(format_opt(row.theta));
            if with_mc {
                rec.push(format_opt(row.theta_mc));
            }
        }
        for c in &row.cells {
            rec.push(flag(c.valid).into());
            rec.push(flag(c.degenerate).into());
            rec.push(c.verdict.as_str().into());
        }
        w.write_record(&rec)?;
    }
    w.flush().map_err(|e| HarnessError::Csv(e.to_string()))?;
    Ok(())
}

pub fn write_report_file(report: &BoundReport, path: &Path) -> Result<(), HarnessError> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent).map_err(|e| HarnessError::io(parent, e))?;
    }
    let file = std::fs::File::create(path).map_err(|e| HarnessError::io(path, e))?;
    write_report(report, std::io::BufWriter::new(file))
}

fn parse_f64(s: &str) -> Result<f64, HarnessError> {
    s.parse().map_err(|_| HarnessError::Csv(format!("bad float '{s}'")))
}

fn parse_opt(s: &str) -> Result<Option<f64>, HarnessError> {
    let v = parse_f64(s)?;
    Ok(if v.is_nan() { None } else { Some(v) })
}

fn parse_flag(s: &str) -> Result<bool, HarnessError> {
    match s {
        "1" => Ok(true),
        "0" => Ok(false),
        other => Err(HarnessError::Csv(format!("bad flag '{other}'"))),
    }
}

/// Parses a CSV written by [`write_report`].
pub fn read_report<R: Read>(input: R) -> Result<BoundReport, HarnessError> {
    let mut r = csv::Reader::from_reader(input);
    let head: Vec<String> = r.headers()?.iter().map(String::from).collect();
    if head.len() < 3 || head[..3] != ["k", "lambda_k", "running_avg"] {
        return Err(HarnessError::Csv("unexpected leading columns".into()));
    }
    let mut bounds = Vec::new();
    let mut i = 3;
    while i < head.len() {
        match BoundId::from_column(&head[i]) {
            Some(b) => bounds.push(b),
            None => break,
        }
        i += 1;
    }
    let with_sigma = head.get(i).map(String::as_str) == Some("sigma0");
    let with_mc = with_sigma && head.get(i + 2).map(String::as_str) == Some("theta_mc");
    let flags_start = i + if with_sigma { 2 } else { 0 } + usize::from(with_mc);
    if head.len() != flags_start + 3 * bounds.len() {
        return Err(HarnessError::Csv("column count does not match bound list".into()));
    }

    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let field = |j: usize| rec.get(j).ok_or_else(|| HarnessError::Csv("short record".into()));
        let k: usize = field(0)?
            .parse()
            .map_err(|_| HarnessError::Csv(format!("bad k '{}'", &rec[0])))?;
        let (sigma0, theta, theta_mc) = if with_sigma {
            let mc = if with_mc { parse_opt(field(i + 2)?)? } else { None };
            (parse_opt(field(i)?)?, parse_opt(field(i + 1)?)?, mc)
        } else {
            (None, None, None)
        };
        let mut cells = Vec::with_capacity(bounds.len());
        for b in 0..bounds.len() {
            let f = flags_start + 3 * b;
            cells.push(BoundCell {
                value: parse_f64(field(3 + b)?)?,
                valid: parse_flag(field(f)?)?,
                degenerate: parse_flag(field(f + 1)?)?,
                verdict: field(f + 2)?.parse::<Verdict>()?,
            });
        }
        rows.push(ReportRow {
            k,
            lambda_k: parse_f64(field(1)?)?,
            running_avg: parse_f64(field(2)?)?,
            sigma0,
            theta,
            theta_mc,
            cells,
        });
    }
    Ok(BoundReport { bounds, rows })
}

pub fn read_report_file(path: &Path) -> Result<BoundReport, HarnessError> {
    let file = std::fs::File::open(path).map_err(|e| HarnessError::io(path, e))?;
    read_report(std::io::BufReader::new(file))
}
