use std::path::PathBuf;

use clap::Args;
use sdshuffle::baselines::MaskMethod;
use sdshuffle::Seed;
use serde::Serialize;

use crate::bench::{
    bench_param, run_sweep, standard_sizes, sweep_n, sweep_nc, sweep_p, sweep_slope, time_mask,
    BenchPoint, Sweep,
};
use crate::config::{resolve, resolve_seed, FileConfig};
use crate::errors::{CliError, CliResult};
use crate::report::{write_json, BenchReport, ToolInfo, SCHEMA_VERSION};

/// Times the masking methods over size sweeps and writes a timing table.
#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Which sweep to run: standard (all methods, growing n), n, p, nc
    /// (scaling sweeps for the shuffler), or all
    #[arg(long)]
    pub sweep: Option<String>,
    /// Comma-separated methods for the standard sweep
    #[arg(long)]
    pub methods: Option<String>,
    /// Timed repeats per point (median reported)
    #[arg(long)]
    pub repeats: Option<usize>,
    /// Write the timing table as CSV here
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Write a JSON report here
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// RNG seed for the benchmark data
    #[arg(long)]
    pub seed: Option<u64>,
    /// Flat TOML config file; flags win on conflict
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
struct ResolvedConfig {
    sweep: String,
    methods: Vec<String>,
    repeats: usize,
    seed: u64,
}

pub fn run(args: &BenchArgs) -> CliResult<()> {
    let file = FileConfig::load(args.config.as_deref())?;
    let sweep = resolve(args.sweep.clone(), file.sweep, "standard".to_string());
    let repeats = resolve(args.repeats, file.repeats, 5);
    let seed = Seed(resolve_seed(args.seed, file.seed)?);
    let methods = parse_methods(args.methods.clone().or(file.methods))?;
    if repeats < 1 {
        return Err(CliError::Validation("repeats must be >= 1".into()));
    }

    let mut rows: Vec<BenchPoint> = Vec::new();
    match sweep.as_str() {
        "standard" => rows.extend(run_standard(&methods, repeats, seed)?),
        "n" => rows.extend(run_scaling(&sweep_n(), repeats, seed)?),
        "p" => rows.extend(run_scaling(&sweep_p(), repeats, seed)?),
        "nc" => rows.extend(run_scaling(&sweep_nc(), repeats, seed)?),
        "all" => {
            rows.extend(run_standard(&methods, repeats, seed)?);
            for sweep in [sweep_n(), sweep_p(), sweep_nc()] {
                rows.extend(run_scaling(&sweep, repeats, seed)?);
            }
        }
        other => {
            return Err(CliError::Parse(format!(
                "unknown sweep {other:?}; expected standard, n, p, nc, or all"
            )))
        }
    }

    if let Some(path) = &args.output.clone().or(file.output) {
        write_table(path, &rows)?;
    }
    if let Some(path) = &args.report.clone().or(file.report) {
        let report = BenchReport {
            schema_version: SCHEMA_VERSION,
            tool: ToolInfo::current(),
            command: "bench",
            config: ResolvedConfig {
                sweep,
                methods: methods.iter().map(|m| m.name().to_string()).collect(),
                repeats,
                seed: seed.0,
            },
            seed: seed.0,
            rows,
        };
        write_json(path, &report)?;
    }
    Ok(())
}

fn parse_methods(text: Option<String>) -> CliResult<Vec<MaskMethod>> {
    match text {
        None => Ok(MaskMethod::ALL.to_vec()),
        Some(text) => text
            .split(',')
            .map(|s| {
                s.trim()
                    .parse()
                    .map_err(|e: sdshuffle::Error| CliError::Parse(e.to_string()))
            })
            .collect(),
    }
}

fn run_standard(methods: &[MaskMethod], repeats: usize, seed: Seed) -> CliResult<Vec<BenchPoint>> {
    let mut rows = Vec::new();
    println!("method       n      p   param    median_secs");
    for (i, &n) in standard_sizes().iter().enumerate() {
        for &method in methods {
            let pt = time_mask(
                method,
                bench_param(method),
                n,
                12,
                repeats,
                seed.derive(10 + i as u64, method as u64),
            )?;
            print_row(&pt);
            rows.push(pt);
        }
    }
    Ok(rows)
}

fn run_scaling(sweep: &Sweep, repeats: usize, seed: Seed) -> CliResult<Vec<BenchPoint>> {
    println!("sweep {}: method       n      p   param    median_secs", sweep.label);
    let points = run_sweep(MaskMethod::SjppdsSimplified, sweep, repeats, seed)?;
    for pt in &points {
        print_row(pt);
    }
    let slope = sweep_slope(sweep, &points);
    println!("sweep {}: fitted log-log slope {slope:.3}", sweep.label);
    Ok(points)
}

fn print_row(pt: &BenchPoint) {
    println!(
        "{:<10} {:>7} {:>5} {:>7} {:>14.6}",
        pt.method.name(),
        pt.n,
        pt.p,
        pt.param,
        pt.median_secs
    );
}

fn write_table(path: &PathBuf, rows: &[BenchPoint]) -> CliResult<()> {
    let mut writer = csv::Writer::from_path(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    writer
        .write_record(["method", "n", "p", "param", "repeats", "median_secs"])
        .map_err(|e| CliError::Io(e.to_string()))?;
    for r in rows {
        writer
            .write_record([
                r.method.name().to_string(),
                r.n.to_string(),
                r.p.to_string(),
                r.param.to_string(),
                r.repeats.to_string(),
                format!("{}", r.median_secs),
            ])
            .map_err(|e| CliError::Io(e.to_string()))?;
    }
    writer.flush().map_err(|e| CliError::io(path, e))
}
