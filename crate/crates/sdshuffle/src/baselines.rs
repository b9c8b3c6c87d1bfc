//! Comparison masking methods: MDAV microaggregation, independent and
//! correlated noise addition, and rank swapping.

use nalgebra::DMatrix;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::DataMatrix;
use crate::rng::{tie_break_keys, Seed};
use crate::shuffle::{sjppds, ShuffleVariant};
use crate::stats::{mean, sample_cov, sample_std, sample_var};

/// A masking method of the toolkit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MaskMethod {
    #[serde(rename = "sjppds-f")]
    SjppdsFull,
    #[serde(rename = "sjppds-s")]
    SjppdsSimplified,
    #[serde(rename = "mdav")]
    Mdav,
    #[serde(rename = "noise-ind")]
    NoiseIndependent,
    #[serde(rename = "noise-corr")]
    NoiseCorrelated,
    #[serde(rename = "rank-swap")]
    RankSwap,
}

impl MaskMethod {
    /// Methods that completely shuffle records, leaving no row
    /// correspondence between input and output; their row-correspondence
    /// metrics are evaluated through the averaged sorted wrapper.
    pub fn mapping_free(self) -> bool {
        matches!(self, MaskMethod::SjppdsFull | MaskMethod::SjppdsSimplified)
    }

    /// Methods whose output does not depend on the seed.
    pub fn deterministic(self) -> bool {
        matches!(self, MaskMethod::Mdav)
    }

    pub fn name(self) -> &'static str {
        match self {
            MaskMethod::SjppdsFull => "sjppds-f",
            MaskMethod::SjppdsSimplified => "sjppds-s",
            MaskMethod::Mdav => "mdav",
            MaskMethod::NoiseIndependent => "noise-ind",
            MaskMethod::NoiseCorrelated => "noise-corr",
            MaskMethod::RankSwap => "rank-swap",
        }
    }

    pub const ALL: [MaskMethod; 6] = [
        MaskMethod::SjppdsFull,
        MaskMethod::SjppdsSimplified,
        MaskMethod::Mdav,
        MaskMethod::NoiseIndependent,
        MaskMethod::NoiseCorrelated,
        MaskMethod::RankSwap,
    ];
}

impl std::str::FromStr for MaskMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MaskMethod::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown method {s:?}")))
    }
}

impl std::fmt::Display for MaskMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A method plus its single tuning parameter and the seed for its draws.
///
/// The parameter is the number of categories n_c for the shuffling methods,
/// the aggregation size k for MDAV, the noise percentage q for the noise
/// methods, and the swap percentage s for rank swapping.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaskSpec {
    pub method: MaskMethod,
    pub param: f64,
    pub seed: Seed,
}

impl MaskSpec {
    pub fn new(method: MaskMethod, param: f64, seed: Seed) -> Self {
        Self { method, param, seed }
    }

    pub fn validate(&self) -> Result<()> {
        let param = self.param;
        let integer = param.fract() == 0.0 && param.is_finite();
        match self.method {
            MaskMethod::SjppdsFull | MaskMethod::SjppdsSimplified => {
                if !integer || param < 1.0 {
                    return Err(Error::InvalidParameter(format!(
                        "number of categories must be an integer >= 1, got {param}"
                    )));
                }
            }
            MaskMethod::Mdav => {
                if !integer || param < 2.0 {
                    return Err(Error::InvalidParameter(format!(
                        "aggregation size must be an integer >= 2, got {param}"
                    )));
                }
            }
            MaskMethod::NoiseIndependent | MaskMethod::NoiseCorrelated => {
                if !(param >= 0.0) {
                    return Err(Error::InvalidParameter(format!(
                        "noise percentage must be >= 0, got {param}"
                    )));
                }
            }
            MaskMethod::RankSwap => {
                if !(0.0..=100.0).contains(&param) {
                    return Err(Error::InvalidParameter(format!(
                        "swap percentage must be in [0, 100], got {param}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Runs the configured masker on `data`.
    pub fn apply(&self, data: &DataMatrix) -> Result<DataMatrix> {
        self.validate()?;
        match self.method {
            MaskMethod::SjppdsFull => {
                sjppds(data, self.param as u32, ShuffleVariant::Full, self.seed)
            }
            MaskMethod::SjppdsSimplified => {
                sjppds(data, self.param as u32, ShuffleVariant::Simplified, self.seed)
            }
            MaskMethod::Mdav => mdav_microaggregate(data, self.param as usize),
            MaskMethod::NoiseIndependent => add_noise(data, self.param, false, self.seed),
            MaskMethod::NoiseCorrelated => add_noise(data, self.param, true, self.seed),
            MaskMethod::RankSwap => rank_swap(data, self.param, self.seed),
        }
    }
}

/// MDAV microaggregation: records are grouped (k to 2k-1 per group) around
/// extreme points of z-scored data and replaced by their group's per-column
/// mean in original units. Deterministic: no seed involved.
pub fn mdav_microaggregate(data: &DataMatrix, k: usize) -> Result<DataMatrix> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!(
            "aggregation size must be >= 2, got {k}"
        )));
    }
    if data.n() < 2 * k {
        return Err(Error::InvalidParameter(format!(
            "MDAV needs at least 2k = {} records, got {}",
            2 * k,
            data.n()
        )));
    }
    let groups = mdav_groups(data, k);
    let n = data.n();
    let p = data.p();
    let mut out = data.clone();
    for group in &groups {
        for j in 0..p {
            let col = data.column(j);
            let m = group.iter().map(|&i| col[i]).sum::<f64>() / group.len() as f64;
            let dst = out.column_mut(j);
            for &i in group {
                dst[i] = m;
            }
        }
    }
    debug_assert_eq!(groups.iter().map(Vec::len).sum::<usize>(), n);
    Ok(out)
}

/// The MDAV grouping itself: repeatedly take the record farthest from the
/// centroid of the unassigned records and its k-1 nearest neighbours, then
/// the record farthest from that one with its k-1 nearest, until fewer than
/// 2k records remain; a remainder of at least k forms the final group,
/// fewer than k are absorbed by the last formed group.
pub(crate) fn mdav_groups(data: &DataMatrix, k: usize) -> Vec<Vec<usize>> {
    let n = data.n();
    let p = data.p();

    // Distances on z-scored data so columns with large scales do not
    // dominate the grouping.
    let mut z = data.to_row_major();
    for j in 0..p {
        let col = data.column(j);
        let m = mean(col);
        let sd = sample_std(col);
        let scale = if sd > 0.0 { sd } else { 1.0 };
        for i in 0..n {
            z[i * p + j] = (z[i * p + j] - m) / scale;
        }
    }
    let dist2 = |a: usize, b_vec: &[f64]| -> f64 {
        let ra = &z[a * p..(a + 1) * p];
        ra.iter()
            .zip(b_vec)
            .map(|(x, y)| (x - y) * (x - y))
            .sum()
    };

    let mut remaining: Vec<usize> = (0..n).collect();
    let mut groups: Vec<Vec<usize>> = Vec::new();

    let take_group_around = |anchor: usize, remaining: &mut Vec<usize>, k: usize| -> Vec<usize> {
        let anchor_vec: Vec<f64> = z[anchor * p..(anchor + 1) * p].to_vec();
        let mut by_dist: Vec<usize> = remaining.iter().copied().filter(|&i| i != anchor).collect();
        by_dist.sort_by(|&a, &b| {
            dist2(a, &anchor_vec)
                .partial_cmp(&dist2(b, &anchor_vec))
                .unwrap()
                .then(a.cmp(&b))
        });
        let mut group = vec![anchor];
        group.extend(by_dist.iter().copied().take(k - 1));
        remaining.retain(|i| !group.contains(i));
        group
    };

    while remaining.len() >= 2 * k {
        let centroid: Vec<f64> = (0..p)
            .map(|j| remaining.iter().map(|&i| z[i * p + j]).sum::<f64>() / remaining.len() as f64)
            .collect();
        let farthest = *remaining
            .iter()
            .max_by(|&&a, &&b| {
                dist2(a, &centroid)
                    .partial_cmp(&dist2(b, &centroid))
                    .unwrap()
                    .then(b.cmp(&a))
            })
            .unwrap();
        let group_r = take_group_around(farthest, &mut remaining, k);

        let r_vec: Vec<f64> = z[group_r[0] * p..(group_r[0] + 1) * p].to_vec();
        groups.push(group_r);
        let opposite = *remaining
            .iter()
            .max_by(|&&a, &&b| {
                dist2(a, &r_vec)
                    .partial_cmp(&dist2(b, &r_vec))
                    .unwrap()
                    .then(b.cmp(&a))
            })
            .unwrap();
        let group_s = take_group_around(opposite, &mut remaining, k);
        groups.push(group_s);
    }
    if !remaining.is_empty() {
        if remaining.len() >= k {
            groups.push(remaining);
        } else {
            groups.last_mut().unwrap().append(&mut remaining);
        }
    }
    groups
}

/// Adds zero-mean Gaussian noise with variance (q/100) times the sample
/// variance of each column (independent), or noise rows drawn from a
/// multivariate normal with covariance (q/100) times the sample covariance
/// of the data (correlated).
pub fn add_noise(data: &DataMatrix, q: f64, correlated: bool, seed: Seed) -> Result<DataMatrix> {
    if !(q >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "noise percentage must be >= 0, got {q}"
        )));
    }
    let scale = q / 100.0;
    let mut out = data.clone();
    if correlated {
        add_correlated_noise(data, &mut out, scale, seed)?;
    } else {
        for j in 0..data.p() {
            let sd = (scale * sample_var(data.column(j))).sqrt();
            if sd == 0.0 {
                continue;
            }
            let normal = Normal::new(0.0, sd).expect("finite std");
            let mut rng = seed.stream(j as u64);
            for v in out.column_mut(j) {
                *v += normal.sample(&mut rng);
            }
        }
    }
    Ok(out)
}

fn add_correlated_noise(
    data: &DataMatrix,
    out: &mut DataMatrix,
    scale: f64,
    seed: Seed,
) -> Result<()> {
    let n = data.n();
    let p = data.p();
    let cov = DMatrix::from_fn(p, p, |a, b| sample_cov(data.column(a), data.column(b)));
    let chol = match cov.clone().cholesky() {
        Some(c) => c,
        None => {
            let eps = 1e-10 * cov.trace() / p as f64;
            log::warn!(
                "sample covariance is not positive definite; retrying with ridge {eps:e}"
            );
            let ridged = cov + DMatrix::identity(p, p) * eps;
            ridged.cholesky().ok_or_else(|| {
                Error::Numeric("covariance not positive definite even after ridge".into())
            })?
        }
    };
    let l = chol.l();
    let sqrt_scale = scale.sqrt();
    let mut rng = seed.rng();
    let mut z = vec![0.0; p];
    for i in 0..n {
        for zj in z.iter_mut() {
            *zj = StandardNormal.sample(&mut rng);
        }
        for j in 0..p {
            let mut noise = 0.0;
            for (t, &zt) in z.iter().enumerate().take(j + 1) {
                noise += l[(j, t)] * zt;
            }
            let v = out.get(i, j) + sqrt_scale * noise;
            out.set(i, j, v);
        }
    }
    Ok(())
}

/// Rank swapping: per column, values are ranked ascending (random
/// tie-break) and each unswapped rank is paired with a uniformly chosen
/// unswapped rank at most floor(s*n/100) positions above it; the two
/// values are swapped and both positions frozen.
pub fn rank_swap(data: &DataMatrix, s: f64, seed: Seed) -> Result<DataMatrix> {
    if !(0.0..=100.0).contains(&s) {
        return Err(Error::InvalidParameter(format!(
            "swap percentage must be in [0, 100], got {s}"
        )));
    }
    let mut columns = Vec::with_capacity(data.p());
    for j in 0..data.p() {
        let (col, _) = rank_swap_column(data.column(j), s, &mut seed.stream(j as u64));
        columns.push(col);
    }
    DataMatrix::from_columns(columns, data.names().to_vec())
}

/// Swaps one column, returning the swapped values and the swap log as
/// (lower rank, upper rank) pairs, both zero-based.
pub(crate) fn rank_swap_column(
    values: &[f64],
    s: f64,
    rng: &mut ChaCha8Rng,
) -> (Vec<f64>, Vec<(usize, usize)>) {
    let n = values.len();
    let window = (s * n as f64 / 100.0).floor() as usize;
    let mut out = values.to_vec();
    let mut log = Vec::new();
    if window == 0 {
        return (out, log);
    }

    let keys = tie_break_keys(n, rng);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_unstable_by(|&a, &b| {
        values[a]
            .partial_cmp(&values[b])
            .unwrap()
            .then(keys[a].cmp(&keys[b]))
    });

    let mut swapped = vec![false; n];
    for r in 0..n {
        if swapped[r] {
            continue;
        }
        let hi = (r + window).min(n - 1);
        let candidates: Vec<usize> = (r + 1..=hi).filter(|&t| !swapped[t]).collect();
        if candidates.is_empty() {
            continue;
        }
        let pick = candidates[rng.random_range(0..candidates.len())];
        out.swap(order[r], order[pick]);
        swapped[r] = true;
        swapped[pick] = true;
        log.push((r, pick));
    }
    (out, log)
}
