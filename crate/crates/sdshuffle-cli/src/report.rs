//! JSON report documents.
//!
//! Reports are self-describing: they embed the resolved configuration and
//! seed, so rerunning the tool with the same inputs reproduces the
//! numbers byte for byte. Wall-clock timings are only included when
//! explicitly requested, keeping default reports deterministic.

use std::path::Path;

use sdshuffle::metrics::MetricBundle;
use sdshuffle::scoring::{GridPoint, ScoreBundle, TuningResult};
use serde::Serialize;

use crate::errors::{CliError, CliResult};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize)]
pub struct ToolInfo {
    pub name: &'static str,
    pub version: &'static str,
}

impl ToolInfo {
    pub fn current() -> Self {
        Self {
            name: "sdshuffle",
            version: env!("CARGO_PKG_VERSION"),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct EvaluateReport<C: Serialize> {
    pub schema_version: u32,
    pub tool: ToolInfo,
    pub command: &'static str,
    pub config: C,
    pub seed: u64,
    pub sorted: bool,
    pub metrics: MetricBundle,
    pub scores: ScoreBundle,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_secs: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct TuneReport<C: Serialize> {
    pub schema_version: u32,
    pub tool: ToolInfo,
    pub command: &'static str,
    pub config: C,
    pub seed: u64,
    pub sorted: bool,
    pub threshold: f64,
    pub replications: usize,
    pub grid: Vec<GridPointReport>,
    /// Plot-ready tradeoff curves: one entry per grid point.
    pub curves: Curves,
    pub feasible_params: Vec<f64>,
    pub selected_param: Option<f64>,
    pub feasible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_secs: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct GridPointReport {
    pub param: f64,
    pub replications: usize,
    pub bundles: Vec<MetricBundle>,
    pub median: MetricBundle,
    pub scores: ScoreBundle,
}

/// Column arrays for the four tradeoff curves over the parameter grid.
#[derive(Debug, Serialize)]
pub struct Curves {
    pub param: Vec<f64>,
    pub avg_il: Vec<f64>,
    pub avg_dr: Vec<f64>,
    pub overall: Vec<f64>,
    pub dbrl: Vec<f64>,
}

impl Curves {
    pub fn from_points(points: &[GridPoint]) -> Curves {
        Curves {
            param: points.iter().map(|p| p.spec.param).collect(),
            avg_il: points.iter().map(|p| p.scores.avg_il).collect(),
            avg_dr: points.iter().map(|p| p.scores.avg_dr).collect(),
            overall: points.iter().map(|p| p.scores.overall).collect(),
            dbrl: points.iter().map(|p| p.median.dbrl).collect(),
        }
    }
}

pub fn grid_reports(result: &TuningResult) -> Vec<GridPointReport> {
    result
        .points
        .iter()
        .map(|p| GridPointReport {
            param: p.spec.param,
            replications: p.bundles.len(),
            bundles: p.bundles.clone(),
            median: p.median,
            scores: p.scores,
        })
        .collect()
}

#[derive(Debug, Serialize)]
pub struct SimulateManifest<C: Serialize> {
    pub schema_version: u32,
    pub tool: ToolInfo,
    pub command: &'static str,
    pub config: C,
    pub seed: u64,
    pub datasets: Vec<DatasetEntry>,
}

#[derive(Debug, Serialize)]
pub struct DatasetEntry {
    pub file: String,
    pub n: usize,
    pub p: usize,
    pub rho: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct BenchReport<C: Serialize> {
    pub schema_version: u32,
    pub tool: ToolInfo,
    pub command: &'static str,
    pub config: C,
    pub seed: u64,
    pub rows: Vec<crate::bench::BenchPoint>,
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Io(format!("serializing report: {e}")))?;
    text.push('\n');
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}
