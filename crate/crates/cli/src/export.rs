//! Deterministic file output.
//!
//! CSV files carry a header row, UTF-8 text, `.` decimal separators, LF line
//! endings, and reals printed with 17 significant digits (`{:.16e}`), which
//! round-trips doubles exactly. JSON files are a single top-level object
//! with a `schema_version` field; floats use the shortest exact
//! representation. Both formats are pure functions of their inputs.

use std::fmt::Write as _;
use std::path::Path;

use schensted::curves::LimitCurve;
use schensted::experiments::ConvergenceReport;
use schensted::tableau::BumpingRoute;

use crate::CliError;

pub const FILE_SCHEMA_VERSION: u32 = 1;

/// 17-significant-digit scientific notation: exact for f64.
pub fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}

/// Writes `contents` to `path`, creating parent directories as needed.
pub fn write_text(path: &Path, contents: &str) -> Result<(), CliError> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent).map_err(|source| CliError::Io {
                path: parent.to_path_buf(),
                source,
            })?;
        }
    }
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

// ======================================================================
// Curves
// ======================================================================

pub fn curve_csv(curve: &LimitCurve) -> String {
    let mut out = String::from("s,beta,kappa,endpoint_u,endpoint_v\n");
    let (eu, ev) = curve.endpoint_uv();
    for &(s, b) in curve.samples() {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            fmt_real(s),
            fmt_real(b),
            fmt_real(curve.kappa()),
            fmt_real(eu),
            fmt_real(ev)
        );
    }
    out
}

#[derive(serde::Serialize)]
struct CurveSample {
    s: f64,
    beta: f64,
}

#[derive(serde::Serialize)]
struct CurveFile {
    schema_version: u32,
    alpha: f64,
    kappa: f64,
    endpoint_u: f64,
    endpoint_v: f64,
    samples: Vec<CurveSample>,
}

pub fn curve_json(curve: &LimitCurve) -> String {
    let (endpoint_u, endpoint_v) = curve.endpoint_uv();
    let file = CurveFile {
        schema_version: FILE_SCHEMA_VERSION,
        alpha: curve.alpha(),
        kappa: curve.kappa(),
        endpoint_u,
        endpoint_v,
        samples: curve
            .samples()
            .iter()
            .map(|&(s, beta)| CurveSample { s, beta })
            .collect(),
    };
    to_json(&file)
}

// ======================================================================
// Routes
// ======================================================================

pub fn route_csv(n: usize, route: &BumpingRoute) -> String {
    let sqrt_n = (n as f64).sqrt();
    let mut out = String::from("m,column,m_scaled,column_scaled\n");
    for (i, &col) in route.columns().iter().enumerate() {
        let m = i + 1;
        let _ = writeln!(
            out,
            "{m},{col},{},{}",
            fmt_real(m as f64 / sqrt_n),
            fmt_real(col as f64 / sqrt_n)
        );
    }
    out
}

#[derive(serde::Serialize)]
struct RouteFile {
    schema_version: u32,
    n: usize,
    alpha: f64,
    seed: u64,
    stream: u64,
    columns: Vec<usize>,
    m_scaled: Vec<f64>,
    column_scaled: Vec<f64>,
}

pub fn route_json(n: usize, alpha: f64, seed: u64, stream: u64, route: &BumpingRoute) -> String {
    let sqrt_n = (n as f64).sqrt();
    let file = RouteFile {
        schema_version: FILE_SCHEMA_VERSION,
        n,
        alpha,
        seed,
        stream,
        columns: route.columns().to_vec(),
        m_scaled: (1..=route.len()).map(|m| m as f64 / sqrt_n).collect(),
        column_scaled: route.columns().iter().map(|&c| c as f64 / sqrt_n).collect(),
    };
    to_json(&file)
}

// ======================================================================
// Reports
// ======================================================================

pub fn report_csv(report: &ConvergenceReport) -> String {
    let mut header = String::from(
        "n,alpha,trials,kappa,sup_mean,sup_min,sup_q25,sup_median,sup_q75,sup_max,\
         scaled_length_mean,kappa_abs_dev_mean,endpoint_u_mean,endpoint_v_mean,\
         endpoint_mean_offset",
    );
    for e in &report.epsilons {
        let _ = write!(header, ",sup_gt_{e},len_gt_{e}");
    }
    let mut out = header;
    out.push('\n');
    for cell in &report.cells {
        let s = &cell.sup_distance;
        let _ = write!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            cell.n,
            fmt_real(cell.alpha),
            cell.trials,
            fmt_real(cell.kappa),
            fmt_real(s.mean),
            fmt_real(s.min),
            fmt_real(s.q25),
            fmt_real(s.median),
            fmt_real(s.q75),
            fmt_real(s.max),
            fmt_real(cell.scaled_length_mean),
            fmt_real(cell.kappa_abs_dev_mean),
            fmt_real(cell.endpoint_mean_uv.0),
            fmt_real(cell.endpoint_mean_uv.1),
            fmt_real(cell.endpoint_mean_offset),
        );
        for (se, le) in cell.sup_exceedance.iter().zip(&cell.length_exceedance) {
            let _ = write!(
                out,
                ",{},{}",
                fmt_real(se.probability),
                fmt_real(le.probability)
            );
        }
        out.push('\n');
    }
    out
}

pub fn report_json(report: &ConvergenceReport) -> String {
    to_json(report)
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize infallibly");
    s.push('\n');
    s
}
