use clap::{Parser, Subcommand};

use sdshuffle_cli::commands;

/// Masking of numerical tabular microdata by restricted-permutation
/// shuffling, with disclosure-risk and information-loss evaluation,
/// parameter tuning under a record-linkage threshold, data simulation,
/// and timing benchmarks.
#[derive(Parser)]
#[command(name = "sdshuffle", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    Mask(commands::mask::MaskArgs),
    Evaluate(commands::evaluate::EvaluateArgs),
    Tune(commands::tune::TuneArgs),
    Simulate(commands::simulate::SimulateArgs),
    Bench(commands::bench::BenchArgs),
}

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Mask(args) => commands::mask::run(args),
        Command::Evaluate(args) => commands::evaluate::run(args),
        Command::Tune(args) => commands::tune::run(args),
        Command::Simulate(args) => commands::simulate::run(args),
        Command::Bench(args) => commands::bench::run(args),
    };
    if let Err(err) = result {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}
