//! The three subcommands, each producing a serializable report.

use bvosc::{
    classify_segments_with, quotient_map, ClassifyConfig, QuotientMap, SegmentParams,
    SegmentationReport, Signal,
};
use serde::{Deserialize, Serialize};

use crate::verify::VerifyReport;
use crate::{CliError, CliResult, Format};

/// One sliding window of the analyze report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WindowRecord {
    pub center: f64,
    pub scale: f64,
    pub mean: f64,
    pub osc: f64,
    pub tv: f64,
    pub r: f64,
    /// `null` when the window carries no variation; not 0, which would mean
    /// a vanishing oscillation against positive variation.
    pub quotient: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub scales: Vec<f64>,
    pub stride: f64,
    pub records: Vec<WindowRecord>,
}

/// Window geometry shared by analyze and segment.
pub struct WindowSpec {
    pub scales: Vec<f64>,
    pub stride: f64,
}

impl WindowSpec {
    /// Fill unspecified values from the domain: quarter/eighth/sixteenth
    /// windows on a 1/64 stride.
    pub fn resolve(scales: Option<Vec<f64>>, stride: Option<f64>, signal: &Signal) -> Self {
        let len = signal.domain().len();
        let scales = scales.unwrap_or_else(|| vec![len / 4.0, len / 8.0, len / 16.0]);
        let stride = stride.unwrap_or(len / 64.0);
        Self { scales, stride }
    }
}

fn build_map(signal: &Signal, spec: &WindowSpec) -> CliResult<QuotientMap> {
    quotient_map(signal, &spec.scales, spec.stride).map_err(|e| match e {
        // nonpositive scales/stride are bad flag values, not analysis limits
        bvosc::Error::InvalidSignal(_) => CliError::input(e),
        other => CliError::domain(other),
    })
}

pub fn cmd_analyze(signal: &Signal, spec: &WindowSpec) -> CliResult<AnalyzeReport> {
    let map = build_map(signal, spec)?;
    let records = map
        .entries
        .iter()
        .map(|e| WindowRecord {
            center: e.interval.center(),
            scale: e.interval.len(),
            mean: e.mean,
            osc: e.oscillation,
            tv: e.total_variation,
            r: e.level_balance,
            quotient: e.quotient,
        })
        .collect();
    Ok(AnalyzeReport { scales: spec.scales.clone(), stride: spec.stride, records })
}

pub fn cmd_segment(
    signal: &Signal,
    spec: &WindowSpec,
    tol: Option<f64>,
) -> CliResult<SegmentationReport> {
    let map = build_map(signal, spec)?;
    let cfg = match tol {
        Some(t) if !(t > 0.0) => {
            return Err(CliError::Input(format!("tolerance must be positive, got {t}")))
        }
        Some(t) => ClassifyConfig { affine_tol: t, ..Default::default() },
        None => ClassifyConfig::default(),
    };
    let report = classify_segments_with(signal, &map, cfg).map_err(CliError::domain)?;
    debug_assert!(report
        .segments
        .windows(2)
        .all(|w| w[0].interval.lo() <= w[1].interval.lo()));
    Ok(report)
}

pub fn cmd_verify(suite: &str, seed: u64, s_exponent: f64) -> CliResult<VerifyReport> {
    crate::verify::run_suite(suite, seed, s_exponent)
}

// ---------------------------------------------------------------------------
// rendering
// ---------------------------------------------------------------------------

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn render_analyze(report: &AnalyzeReport, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).expect("report serializes") + "\n",
        Format::Csv => {
            let mut out = String::from("center,scale,mean,osc,tv,r,quotient\n");
            for r in &report.records {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    r.center,
                    r.scale,
                    r.mean,
                    r.osc,
                    r.tv,
                    r.r,
                    fmt_opt(r.quotient)
                ));
            }
            out
        }
    }
}

pub fn render_segment(report: &SegmentationReport, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).expect("report serializes") + "\n",
        Format::Csv => {
            let mut out =
                String::from("start,end,class,max_quotient_deviation,p1,p2,p3\n");
            for s in &report.segments {
                let class = match s.class {
                    bvosc::SegmentClass::Affine => "affine",
                    bvosc::SegmentClass::Jump => "jump",
                    bvosc::SegmentClass::Constant => "constant",
                    bvosc::SegmentClass::Other => "other",
                };
                let (p1, p2, p3) = match s.params {
                    SegmentParams::Affine { slope, intercept } => {
                        (slope.to_string(), intercept.to_string(), String::new())
                    }
                    SegmentParams::Jump { location, left_value, right_value } => (
                        location.to_string(),
                        left_value.to_string(),
                        right_value.to_string(),
                    ),
                    SegmentParams::Constant { value } => {
                        (value.to_string(), String::new(), String::new())
                    }
                    SegmentParams::Other => (String::new(), String::new(), String::new()),
                };
                out.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    s.interval.lo(),
                    s.interval.hi(),
                    class,
                    s.max_quotient_deviation,
                    p1,
                    p2,
                    p3
                ));
            }
            out
        }
    }
}

pub fn render_verify(report: &VerifyReport, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).expect("report serializes") + "\n",
        Format::Csv => {
            let mut out = String::from("check,probes,max_residual,tolerance,pass\n");
            for c in &report.checks {
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    c.check, c.probes, c.max_residual, c.tolerance, c.pass
                ));
            }
            out
        }
    }
}

/// Write to the path or stdout.
pub fn emit(text: &str, output: Option<&str>) -> CliResult<()> {
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Input(format!("cannot write {path}: {e}"))),
        None => {
            use std::io::Write;
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| CliError::Input(format!("cannot write stdout: {e}")))
        }
    }
}
