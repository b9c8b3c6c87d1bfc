use std::path::PathBuf;
use std::time::Instant;

use clap::Args;
use sdshuffle::baselines::MaskMethod;
use sdshuffle::metrics::MetricBundle;
use sdshuffle::scoring::compute_scores;
use sdshuffle::Seed;
use serde::Serialize;

use crate::config::{
    effective_workers, resolve, resolve_required, resolve_seed, worker_pool, FileConfig,
};
use crate::errors::{CliError, CliResult};
use crate::io;
use crate::report::{write_json, EvaluateReport, ToolInfo, SCHEMA_VERSION};

/// Computes all disclosure-risk and information-loss metrics for an
/// (original, masked) CSV pair and the composite scores.
#[derive(Debug, Args)]
pub struct EvaluateArgs {
    /// Original CSV
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Masked CSV of the same shape
    #[arg(long)]
    pub masked: Option<PathBuf>,
    /// Method that produced the masked data; selects sorted metrics for
    /// the shuffling methods automatically
    #[arg(long)]
    pub method: Option<String>,
    /// Force averaged sorted row-correspondence metrics
    #[arg(long, overrides_with = "no_sorted")]
    pub sorted: bool,
    /// Force direct row-correspondence metrics
    #[arg(long, overrides_with = "sorted")]
    pub no_sorted: bool,
    /// Write a JSON report here
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// RNG seed (rank tie-breaking)
    #[arg(long)]
    pub seed: Option<u64>,
    /// Worker threads (default: available parallelism)
    #[arg(long)]
    pub workers: Option<usize>,
    /// Include wall-clock timings in the report (makes reports
    /// non-reproducible byte for byte)
    #[arg(long)]
    pub timings: bool,
    /// Flat TOML config file; flags win on conflict
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
struct ResolvedConfig {
    input: String,
    masked: String,
    method: Option<String>,
    sorted: bool,
    seed: u64,
    workers: usize,
}

pub fn run(args: &EvaluateArgs) -> CliResult<()> {
    let file = FileConfig::load(args.config.as_deref())?;
    let input = resolve_required(args.input.clone(), file.input, "--input")?;
    let masked_path = resolve_required(args.masked.clone(), file.masked, "--masked")?;
    let report_path = args.report.clone().or(file.report);
    let seed = Seed(resolve_seed(args.seed, file.seed)?);
    let workers = effective_workers(args.workers.or(file.workers));

    let method: Option<MaskMethod> = match resolve(args.method.clone(), file.method, String::new())
    {
        s if s.is_empty() => None,
        s => Some(
            s.parse()
                .map_err(|e: sdshuffle::Error| CliError::Parse(e.to_string()))?,
        ),
    };
    let sorted_flag = if args.sorted {
        Some(true)
    } else if args.no_sorted {
        Some(false)
    } else {
        file.sorted
    };
    let sorted = sorted_flag.unwrap_or_else(|| method.is_some_and(MaskMethod::mapping_free));

    let original = io::read_csv(&input)?;
    let masked = io::read_csv(&masked_path)?;
    if !original.same_shape(&masked) {
        return Err(CliError::Validation(format!(
            "shape mismatch: original is {}x{}, masked is {}x{}",
            original.n(),
            original.p(),
            masked.n(),
            masked.p()
        )));
    }

    let started = Instant::now();
    let pool = worker_pool(workers)?;
    let bundle =
        pool.install(|| MetricBundle::evaluate(&original, &masked, sorted, seed))?;
    let scores = compute_scores(&bundle)?;
    let elapsed = started.elapsed().as_secs_f64();

    println!("sorted metrics: {sorted}");
    println!("dbrl      {:.6}", bundle.dbrl);
    println!("rid       {:.6}", bundle.rid);
    println!("sdid      {:.6}", bundle.sdid);
    println!("ps        {:.6}", bundle.ps_scaled);
    println!("pil       {:.6}", bundle.pil);
    println!("mae       {:.6}", bundle.mae);
    println!("mse       {:.6}", bundle.mse);
    println!("brmae     {:.6}", bundle.brmae);
    println!("brmse     {:.6}", bundle.brmse);
    println!("avg_il    {:.6}", scores.avg_il);
    println!("avg_dr    {:.6}", scores.avg_dr);
    println!("overall   {:.6}", scores.overall);
    log::info!("evaluate finished in {elapsed:.3}s");

    if let Some(path) = report_path {
        let report = EvaluateReport {
            schema_version: SCHEMA_VERSION,
            tool: ToolInfo::current(),
            command: "evaluate",
            config: ResolvedConfig {
                input: input.display().to_string(),
                masked: masked_path.display().to_string(),
                method: method.map(|m| m.name().to_string()),
                sorted,
                seed: seed.0,
                workers,
            },
            seed: seed.0,
            sorted,
            metrics: bundle,
            scores,
            elapsed_secs: args.timings.then_some(elapsed),
        };
        write_json(&path, &report)?;
    }
    Ok(())
}
