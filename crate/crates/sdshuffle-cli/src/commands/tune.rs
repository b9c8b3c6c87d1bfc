use std::path::PathBuf;
use std::time::Instant;

use clap::Args;
use sdshuffle::baselines::{MaskMethod, MaskSpec};
use sdshuffle::scoring::{default_grid, select_best_parameter_with};
use sdshuffle::Seed;
use serde::Serialize;

use crate::config::{
    effective_workers, parse_grid, resolve, resolve_required, resolve_seed, worker_pool,
    FileConfig,
};
use crate::errors::{CliError, CliResult};
use crate::io;
use crate::report::{grid_reports, write_json, Curves, ToolInfo, TuneReport, SCHEMA_VERSION};

/// Evaluates a method over a parameter grid with replications and selects
/// the best parameter under a DBRL threshold.
#[derive(Debug, Args)]
pub struct TuneArgs {
    /// Original CSV
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Masking method to tune
    #[arg(long)]
    pub method: Option<String>,
    /// Parameter grid as start:step:end (default: the method's standard
    /// 30-point grid)
    #[arg(long)]
    pub grid: Option<String>,
    /// Record-linkage threshold the selected parameter must stay below
    #[arg(long)]
    pub threshold: Option<f64>,
    /// Replications per grid point (deterministic methods run once)
    #[arg(long)]
    pub replications: Option<usize>,
    /// RNG seed
    #[arg(long)]
    pub seed: Option<u64>,
    /// Write the JSON tuning report here
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Worker threads (default: available parallelism)
    #[arg(long)]
    pub workers: Option<usize>,
    /// Force averaged sorted row-correspondence metrics
    #[arg(long, overrides_with = "no_sorted")]
    pub sorted: bool,
    /// Force direct row-correspondence metrics
    #[arg(long, overrides_with = "sorted")]
    pub no_sorted: bool,
    /// Include wall-clock timings in the report
    #[arg(long)]
    pub timings: bool,
    /// Flat TOML config file; flags win on conflict
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
struct ResolvedConfig {
    input: String,
    method: String,
    grid: Vec<f64>,
    threshold: f64,
    replications: usize,
    seed: u64,
    workers: usize,
    sorted: Option<bool>,
}

pub fn run(args: &TuneArgs) -> CliResult<()> {
    let file = FileConfig::load(args.config.as_deref())?;
    let input = resolve_required(args.input.clone(), file.input, "--input")?;
    let method: MaskMethod = resolve_required(args.method.clone(), file.method, "--method")?
        .parse()
        .map_err(|e: sdshuffle::Error| CliError::Parse(e.to_string()))?;
    let grid_text = args.grid.clone().or(file.grid);
    let grid_values = match grid_text {
        Some(text) => parse_grid(&text)?,
        None => default_grid(method),
    };
    let threshold = resolve(args.threshold, file.threshold, 0.2);
    let replications = resolve(args.replications, file.replications, 30);
    let seed = Seed(resolve_seed(args.seed, file.seed)?);
    let workers = effective_workers(args.workers.or(file.workers));
    let report_path = args.report.clone().or(file.report);
    let sorted_override = if args.sorted {
        Some(true)
    } else if args.no_sorted {
        Some(false)
    } else {
        file.sorted
    };

    let data = io::read_csv(&input)?;
    let specs: Vec<MaskSpec> = grid_values
        .iter()
        .map(|&v| MaskSpec::new(method, v, seed))
        .collect();

    let started = Instant::now();
    let pool = worker_pool(workers)?;
    let result = pool.install(|| {
        select_best_parameter_with(&data, &specs, threshold, replications, seed, sorted_override)
    })?;
    let elapsed = started.elapsed().as_secs_f64();

    for (i, point) in result.points.iter().enumerate() {
        let marker = if Some(i) == result.selected { " <- selected" } else { "" };
        println!(
            "param {:>8.2}  dbrl {:.4}  avg_il {:.4}  avg_dr {:.4}  overall {:.4}{marker}",
            point.spec.param,
            point.median.dbrl,
            point.scores.avg_il,
            point.scores.avg_dr,
            point.scores.overall,
        );
    }
    match result.selected_point() {
        Some(point) => println!(
            "selected param {} (median dbrl {:.4} < {threshold}, overall {:.4})",
            point.spec.param, point.median.dbrl, point.scores.overall
        ),
        None => println!("no grid point has median dbrl below {threshold}"),
    }
    log::info!("tune finished in {elapsed:.3}s");

    if let Some(path) = &report_path {
        let report = TuneReport {
            schema_version: SCHEMA_VERSION,
            tool: ToolInfo::current(),
            command: "tune",
            config: ResolvedConfig {
                input: input.display().to_string(),
                method: method.name().to_string(),
                grid: grid_values.clone(),
                threshold,
                replications,
                seed: seed.0,
                workers,
                sorted: sorted_override,
            },
            seed: seed.0,
            sorted: sorted_override.unwrap_or_else(|| method.mapping_free()),
            threshold,
            replications,
            grid: grid_reports(&result),
            curves: Curves::from_points(&result.points),
            feasible_params: result
                .feasible
                .iter()
                .map(|&i| result.points[i].spec.param)
                .collect(),
            selected_param: result.selected_point().map(|p| p.spec.param),
            feasible: result.is_feasible(),
            elapsed_secs: args.timings.then_some(elapsed),
        };
        write_json(path, &report)?;
    }

    if !result.is_feasible() {
        return Err(CliError::Infeasible(format!(
            "no parameter with median dbrl below {threshold}; full grid report {}",
            match &report_path {
                Some(p) => format!("written to {}", p.display()),
                None => "printed above".to_string(),
            }
        )));
    }
    Ok(())
}
