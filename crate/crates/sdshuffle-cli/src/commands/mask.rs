use std::path::PathBuf;

use clap::Args;
use sdshuffle::baselines::{MaskMethod, MaskSpec};
use sdshuffle::Seed;

use crate::config::{resolve_required, resolve_seed, FileConfig};
use crate::errors::{CliError, CliResult};
use crate::io;

/// Masks a numeric CSV with one method and writes the masked CSV.
#[derive(Debug, Args)]
pub struct MaskArgs {
    /// Input CSV (header row required, all cells numeric)
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Output CSV path
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Masking method: sjppds-f, sjppds-s, mdav, noise-ind, noise-corr, rank-swap
    #[arg(long)]
    pub method: Option<String>,
    /// Tuning parameter (n_c, k, noise %, or swap %)
    #[arg(long)]
    pub param: Option<f64>,
    /// RNG seed (defaults to config, SDSHUFFLE_SEED, then entropy)
    #[arg(long)]
    pub seed: Option<u64>,
    /// Flat TOML config file; flags win on conflict
    #[arg(long)]
    pub config: Option<PathBuf>,
}

pub fn run(args: &MaskArgs) -> CliResult<()> {
    let file = FileConfig::load(args.config.as_deref())?;
    let input = resolve_required(args.input.clone(), file.input, "--input")?;
    let output = resolve_required(args.output.clone(), file.output, "--output")?;
    let method: MaskMethod = resolve_required(args.method.clone(), file.method, "--method")?
        .parse()
        .map_err(|e: sdshuffle::Error| CliError::Parse(e.to_string()))?;
    let param = resolve_required(args.param, file.param, "--param")?;
    let seed = Seed(resolve_seed(args.seed, file.seed)?);

    let data = io::read_csv(&input)?;
    let spec = MaskSpec::new(method, param, seed);
    spec.validate()?;
    let masked = spec.apply(&data)?;
    io::write_csv(&output, &masked)?;
    println!("seed: {}", seed.0);
    Ok(())
}
