//! Composite confidentiality/utility scores and best-parameter selection
//! under a record-linkage threshold.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::baselines::MaskSpec;
use crate::error::{Error, Result};
use crate::matrix::DataMatrix;
use crate::metrics::MetricBundle;
use crate::rng::Seed;

/// Average information loss, average disclosure risk, and their overall
/// combination, all in [0, 1]; lower is better.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScoreBundle {
    pub avg_il: f64,
    pub avg_dr: f64,
    pub overall: f64,
}

/// Combines a metric bundle into the three scores:
/// avg_il = PS/3 + PIL/3 + brMAE/6 + brMSE/6,
/// avg_dr = DBRL/3 + RID/3 + SDID/3,
/// overall = DBRL/6 + RID/6 + SDID/6 + PS/6 + PIL/6 + brMAE/12 + brMSE/12.
/// The unbounded MAE/MSE are reported alongside but never enter the scores.
pub fn compute_scores(m: &MetricBundle) -> Result<ScoreBundle> {
    for (name, v) in [
        ("dbrl", m.dbrl),
        ("rid", m.rid),
        ("sdid", m.sdid),
        ("ps_scaled", m.ps_scaled),
        ("pil", m.pil),
        ("brmae", m.brmae),
        ("brmse", m.brmse),
    ] {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::InvalidInput(format!(
                "metric {name} = {v} outside [0, 1]"
            )));
        }
    }
    Ok(ScoreBundle {
        avg_il: m.ps_scaled / 3.0 + m.pil / 3.0 + m.brmae / 6.0 + m.brmse / 6.0,
        avg_dr: m.dbrl / 3.0 + m.rid / 3.0 + m.sdid / 3.0,
        overall: m.dbrl / 6.0
            + m.rid / 6.0
            + m.sdid / 6.0
            + m.ps_scaled / 6.0
            + m.pil / 6.0
            + m.brmae / 12.0
            + m.brmse / 12.0,
    })
}

/// One evaluated grid point: the spec, all replication bundles, their
/// per-metric median, and the scores of the median bundle.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridPoint {
    pub spec: MaskSpec,
    pub bundles: Vec<MetricBundle>,
    pub median: MetricBundle,
    pub scores: ScoreBundle,
}

/// Outcome of a tuning run over a parameter grid.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TuningResult {
    pub threshold: f64,
    pub points: Vec<GridPoint>,
    /// Indices of grid points whose median DBRL is below the threshold.
    pub feasible: Vec<usize>,
    /// Index of the selected point, if the feasible set is non-empty.
    pub selected: Option<usize>,
}

impl TuningResult {
    pub fn selected_point(&self) -> Option<&GridPoint> {
        self.selected.map(|i| &self.points[i])
    }

    pub fn is_feasible(&self) -> bool {
        self.selected.is_some()
    }
}

/// Evaluates every grid point `replications` times with seeds derived from
/// (seed, grid index, replication index), takes per-metric medians, and
/// selects the feasible point (median DBRL strictly below `threshold`)
/// with the lowest median overall score. Ties break toward the smaller
/// disclosure risk, then the smaller parameter. Deterministic methods run
/// a single replication. An empty feasible set is reported, not an error.
pub fn select_best_parameter(
    original: &DataMatrix,
    grid: &[MaskSpec],
    threshold: f64,
    replications: usize,
    seed: Seed,
) -> Result<TuningResult> {
    select_best_parameter_with(original, grid, threshold, replications, seed, None)
}

/// Like [`select_best_parameter`], with the per-method sorted-metric choice
/// overridable (Some forces averaged sorted metrics on or off for every
/// grid point).
pub fn select_best_parameter_with(
    original: &DataMatrix,
    grid: &[MaskSpec],
    threshold: f64,
    replications: usize,
    seed: Seed,
    sorted_override: Option<bool>,
) -> Result<TuningResult> {
    if grid.is_empty() {
        return Err(Error::InvalidParameter("empty tuning grid".into()));
    }
    if replications < 1 {
        return Err(Error::InvalidParameter("replications must be >= 1".into()));
    }
    if !(threshold > 0.0 && threshold <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "threshold must be in (0, 1], got {threshold}"
        )));
    }
    for spec in grid {
        spec.validate()?;
    }

    let tasks: Vec<(usize, usize)> = grid
        .iter()
        .enumerate()
        .flat_map(|(g, spec)| {
            let reps = if spec.method.deterministic() { 1 } else { replications };
            (0..reps).map(move |r| (g, r))
        })
        .collect();

    let results: Vec<(usize, MetricBundle)> = tasks
        .into_par_iter()
        .map(|(g, r)| {
            let run_seed = seed.derive(g as u64, r as u64);
            let spec = MaskSpec { seed: run_seed, ..grid[g] };
            let masked = spec.apply(original)?;
            let sorted = sorted_override.unwrap_or_else(|| spec.method.mapping_free());
            let bundle = MetricBundle::evaluate(original, &masked, sorted, run_seed)?;
            Ok((g, bundle))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut per_point: Vec<Vec<MetricBundle>> = vec![Vec::new(); grid.len()];
    for (g, bundle) in results {
        per_point[g].push(bundle);
    }
    let points = grid
        .iter()
        .zip(per_point)
        .map(|(spec, bundles)| {
            let median = MetricBundle::median(&bundles);
            let scores = compute_scores(&median)?;
            Ok(GridPoint {
                spec: *spec,
                bundles,
                median,
                scores,
            })
        })
        .collect::<Result<Vec<GridPoint>>>()?;

    let (feasible, selected) = select_among(&points, threshold);
    Ok(TuningResult {
        threshold,
        points,
        feasible,
        selected,
    })
}

/// The pure selection step: feasible set and argmin by (overall score,
/// average disclosure risk, parameter).
pub fn select_among(points: &[GridPoint], threshold: f64) -> (Vec<usize>, Option<usize>) {
    let feasible: Vec<usize> = points
        .iter()
        .enumerate()
        .filter(|(_, pt)| pt.median.dbrl < threshold)
        .map(|(i, _)| i)
        .collect();
    let selected = feasible
        .iter()
        .copied()
        .min_by(|&a, &b| {
            let pa = &points[a];
            let pb = &points[b];
            pa.scores
                .overall
                .partial_cmp(&pb.scores.overall)
                .unwrap()
                .then(pa.scores.avg_dr.partial_cmp(&pb.scores.avg_dr).unwrap())
                .then(pa.spec.param.partial_cmp(&pb.spec.param).unwrap())
        });
    (feasible, selected)
}

/// The paper's default tuning grids: 30 parameter values per method.
pub fn default_grid(method: crate::baselines::MaskMethod) -> Vec<f64> {
    use crate::baselines::MaskMethod::*;
    match method {
        SjppdsFull | SjppdsSimplified => (1..=30).map(|i| (10 * i) as f64).collect(),
        Mdav => (2..=31).map(|k| k as f64).collect(),
        NoiseIndependent | NoiseCorrelated => (0..30).map(|i| (1 + 4 * i) as f64).collect(),
        RankSwap => (1..=30).map(|i| (2 * i) as f64).collect(),
    }
}
