//! Timing harness for the masking methods.
//!
//! Each point generates a benchmark dataset, warms the masker up once, and
//! reports the median wall time over repeated runs. Timing runs execute on
//! the calling thread; the maskers themselves are sequential, so pinning
//! the harness to one worker avoids contention noise.

use std::time::Instant;

use sdshuffle::baselines::{MaskMethod, MaskSpec};
use sdshuffle::simulate::simulate_benchmark;
use sdshuffle::Seed;
use serde::Serialize;

use crate::errors::CliResult;

#[derive(Debug, Clone, Serialize)]
pub struct BenchPoint {
    pub method: MaskMethod,
    pub param: f64,
    pub n: usize,
    pub p: usize,
    pub repeats: usize,
    pub median_secs: f64,
}

/// Times one (method, param, n, p) combination.
pub fn time_mask(
    method: MaskMethod,
    param: f64,
    n: usize,
    p: usize,
    repeats: usize,
    seed: Seed,
) -> CliResult<BenchPoint> {
    let data = simulate_benchmark(n, p, seed)?;
    let warmup = MaskSpec::new(method, param, seed.derive(0, 1));
    warmup.apply(&data)?;
    let mut times = Vec::with_capacity(repeats);
    for r in 0..repeats {
        let spec = MaskSpec::new(method, param, seed.derive(1, r as u64));
        let start = Instant::now();
        let masked = spec.apply(&data)?;
        times.push(start.elapsed().as_secs_f64());
        std::hint::black_box(&masked);
    }
    times.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
    let median_secs = if repeats % 2 == 1 {
        times[repeats / 2]
    } else {
        (times[repeats / 2 - 1] + times[repeats / 2]) / 2.0
    };
    Ok(BenchPoint {
        method,
        param,
        n,
        p,
        repeats,
        median_secs,
    })
}

/// Least-squares slope of ln(y) against ln(x).
pub fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let lx: Vec<f64> = points.iter().map(|(x, _)| x.ln()).collect();
    let ly: Vec<f64> = points.iter().map(|(_, y)| y.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let cov: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    cov / var
}

/// Default parameter per method for the timing experiments.
pub fn bench_param(method: MaskMethod) -> f64 {
    match method {
        MaskMethod::SjppdsFull | MaskMethod::SjppdsSimplified => 100.0,
        MaskMethod::Mdav => 7.0,
        MaskMethod::NoiseIndependent | MaskMethod::NoiseCorrelated => 100.0,
        MaskMethod::RankSwap => 15.0,
    }
}

/// A sweep specification: the sizes to visit for one scaling experiment.
pub struct Sweep {
    pub label: &'static str,
    pub points: Vec<(usize, usize, f64)>, // (n, p, param)
}

/// The comparison sweep: all methods on growing record counts at p = 12.
pub fn standard_sizes() -> Vec<usize> {
    vec![1_000, 2_500, 5_000, 7_500, 10_000]
}

/// Record-count scaling for the simplified shuffler (p = 10, n_c = 100).
pub fn sweep_n() -> Sweep {
    Sweep {
        label: "n",
        points: [10_000, 21_544, 46_416, 100_000]
            .iter()
            .map(|&n| (n, 10, 100.0))
            .collect(),
    }
}

/// Column-count scaling (n = 10,000, n_c = 100).
pub fn sweep_p() -> Sweep {
    Sweep {
        label: "p",
        points: [5, 10, 22, 50].iter().map(|&p| (10_000, p, 100.0)).collect(),
    }
}

/// Category-count scaling (n = 10,000, p = 10).
pub fn sweep_nc() -> Sweep {
    Sweep {
        label: "nc",
        points: [100.0, 215.0, 464.0, 1000.0]
            .iter()
            .map(|&nc| (10_000, 10, nc))
            .collect(),
    }
}

/// Runs a sweep for one method and returns the timing points.
pub fn run_sweep(
    method: MaskMethod,
    sweep: &Sweep,
    repeats: usize,
    seed: Seed,
) -> CliResult<Vec<BenchPoint>> {
    sweep
        .points
        .iter()
        .enumerate()
        .map(|(i, &(n, p, param))| {
            time_mask(method, param, n, p, repeats, seed.derive(2, i as u64))
        })
        .collect()
}

/// Fits the scaling slope of a sweep against the quantity it varies.
pub fn sweep_slope(sweep: &Sweep, points: &[BenchPoint]) -> f64 {
    let xs: Vec<f64> = match sweep.label {
        "n" => points.iter().map(|b| b.n as f64).collect(),
        "p" => points.iter().map(|b| b.p as f64).collect(),
        _ => points.iter().map(|b| b.param).collect(),
    };
    let pairs: Vec<(f64, f64)> = xs
        .into_iter()
        .zip(points.iter().map(|b| b.median_secs))
        .collect();
    loglog_slope(&pairs)
}
