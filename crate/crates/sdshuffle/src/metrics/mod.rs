//! Disclosure risk and information loss metrics, plus the bundle that
//! evaluates all of them for one (original, masked) pair.

mod disclosure;
mod distance;
mod pil;
mod propensity;
mod sorted;

pub use disclosure::{dbrl, rid, sdid};
pub use distance::{brmae_brmse, mae_mse};
pub use pil::pil;
pub use propensity::propensity_score_il;
pub use sorted::{averaged_sorted, MetricKind};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::matrix::DataMatrix;
use crate::rng::Seed;

/// The three disclosure risk and six information loss values for one
/// (original, masked) pair. `ps_scaled` is already multiplied by 4 so all
/// bounded metrics share the [0, 1] range; `mae` and `mse` are unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricBundle {
    pub dbrl: f64,
    pub rid: f64,
    pub sdid: f64,
    pub ps_scaled: f64,
    pub pil: f64,
    pub mae: f64,
    pub mse: f64,
    pub brmae: f64,
    pub brmse: f64,
}

impl MetricBundle {
    /// Evaluates all metrics. With `sorted` set, the row-correspondence
    /// metrics go through the averaged sorted wrapper (appropriate for the
    /// shuffling maskers); the propensity and probabilistic losses are
    /// mapping-free and always computed directly.
    pub fn evaluate(
        original: &DataMatrix,
        masked: &DataMatrix,
        sorted: bool,
        seed: Seed,
    ) -> Result<MetricBundle> {
        let ps_scaled = propensity_score_il(original, masked)?;
        let pil = pil::pil(original, masked)?;
        if sorted {
            Ok(MetricBundle {
                dbrl: averaged_sorted(MetricKind::Dbrl, original, masked, seed)?,
                rid: averaged_sorted(MetricKind::Rid, original, masked, seed)?,
                sdid: averaged_sorted(MetricKind::Sdid, original, masked, seed)?,
                ps_scaled,
                pil,
                mae: averaged_sorted(MetricKind::Mae, original, masked, seed)?,
                mse: averaged_sorted(MetricKind::Mse, original, masked, seed)?,
                brmae: averaged_sorted(MetricKind::BrMae, original, masked, seed)?,
                brmse: averaged_sorted(MetricKind::BrMse, original, masked, seed)?,
            })
        } else {
            let (mae, mse) = mae_mse(original, masked)?;
            let (brmae, brmse) = brmae_brmse(original, masked, seed)?;
            Ok(MetricBundle {
                dbrl: dbrl(original, masked)?,
                rid: rid(original, masked)?,
                sdid: sdid(original, masked)?,
                ps_scaled,
                pil,
                mae,
                mse,
                brmae,
                brmse,
            })
        }
    }

    /// Per-metric median across replications (mean of the middle pair for
    /// even counts).
    pub fn median(bundles: &[MetricBundle]) -> MetricBundle {
        assert!(!bundles.is_empty(), "median of zero bundles");
        let med = |f: fn(&MetricBundle) -> f64| median_of(bundles.iter().map(f));
        MetricBundle {
            dbrl: med(|b| b.dbrl),
            rid: med(|b| b.rid),
            sdid: med(|b| b.sdid),
            ps_scaled: med(|b| b.ps_scaled),
            pil: med(|b| b.pil),
            mae: med(|b| b.mae),
            mse: med(|b| b.mse),
            brmae: med(|b| b.brmae),
            brmse: med(|b| b.brmse),
        }
    }
}

fn median_of(values: impl Iterator<Item = f64>) -> f64 {
    let mut v: Vec<f64> = values.collect();
    v.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    }
}
