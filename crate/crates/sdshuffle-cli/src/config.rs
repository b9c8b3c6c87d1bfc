//! Run configuration: flag values merged over an optional flat TOML config
//! file (flags win), with the seed falling back to the `SDSHUFFLE_SEED`
//! environment variable and finally to entropy.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::errors::{CliError, CliResult};

pub const SEED_ENV: &str = "SDSHUFFLE_SEED";

/// Every key any subcommand understands; a single flat namespace mirroring
/// the flag names. Unknown keys are rejected.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub input: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub masked: Option<PathBuf>,
    pub report: Option<PathBuf>,
    pub method: Option<String>,
    pub param: Option<f64>,
    pub seed: Option<u64>,
    pub workers: Option<usize>,
    pub sorted: Option<bool>,
    pub grid: Option<String>,
    pub threshold: Option<f64>,
    pub replications: Option<usize>,
    pub preset: Option<String>,
    pub family: Option<String>,
    pub n: Option<usize>,
    pub p: Option<usize>,
    pub rho: Option<f64>,
    pub lambda: Option<f64>,
    pub count: Option<usize>,
    pub sweep: Option<String>,
    pub methods: Option<String>,
    pub repeats: Option<usize>,
    pub timings: Option<bool>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> CliResult<FileConfig> {
        let Some(path) = path else {
            return Ok(FileConfig::default());
        };
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        toml::from_str(&text)
            .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
    }
}

/// Flags beat config-file values; the default comes last.
pub fn resolve<T>(flag: Option<T>, file: Option<T>, default: T) -> T {
    flag.or(file).unwrap_or(default)
}

pub fn resolve_required<T>(flag: Option<T>, file: Option<T>, what: &str) -> CliResult<T> {
    flag.or(file)
        .ok_or_else(|| CliError::Validation(format!("missing required {what}")))
}

/// Seed resolution order: flag, config file, environment, entropy.
pub fn resolve_seed(flag: Option<u64>, file: Option<u64>) -> CliResult<u64> {
    if let Some(s) = flag.or(file) {
        return Ok(s);
    }
    if let Ok(text) = std::env::var(SEED_ENV) {
        return text
            .parse()
            .map_err(|_| CliError::Parse(format!("{SEED_ENV}={text:?} is not a u64")));
    }
    Ok(sdshuffle::Seed::from_entropy().0)
}

/// Parses a `start:step:end` grid description into its values.
pub fn parse_grid(text: &str) -> CliResult<Vec<f64>> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(CliError::Parse(format!(
            "grid must be start:step:end, got {text:?}"
        )));
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|s| {
            s.parse::<f64>()
                .map_err(|_| CliError::Parse(format!("grid component {s:?} is not a number")))
        })
        .collect::<CliResult<Vec<f64>>>()?;
    let (start, step, end) = (nums[0], nums[1], nums[2]);
    if !(step > 0.0) || end < start {
        return Err(CliError::Validation(format!(
            "grid needs step > 0 and end >= start, got {text:?}"
        )));
    }
    let mut values = Vec::new();
    let mut i = 0;
    loop {
        let v = start + step * i as f64;
        if v > end + 1e-9 {
            break;
        }
        values.push(v);
        i += 1;
    }
    Ok(values)
}

/// Number of worker threads: explicit value or available parallelism.
pub fn effective_workers(workers: Option<usize>) -> usize {
    workers.filter(|&w| w > 0).unwrap_or_else(|| {
        std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1)
    })
}

/// Builds a rayon pool of the requested size for the parallel sections.
pub fn worker_pool(workers: usize) -> CliResult<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| CliError::Validation(format!("worker pool: {e}")))
}
