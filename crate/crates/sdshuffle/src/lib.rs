//! Masking of numerical tabular microdata by sequential
//! joint-probability-preserving data shuffling, together with the
//! comparison maskers, disclosure-risk and information-loss metrics, and
//! the tuning machinery to pick a perturbation parameter under a
//! record-linkage risk threshold.
//!
//! The shuffling masker discretizes the data, then permutes values only
//! within groups sharing a combination of discretized levels, repeating
//! over rotated column orders. Marginal distributions are preserved
//! exactly (values are only repositioned); the joint association structure
//! is preserved approximately, with the number of categories `n_c` trading
//! utility against disclosure risk.
//!
//! Everything is deterministic given a [`rng::Seed`].

pub mod baselines;
pub mod discretize;
pub mod error;
pub mod matrix;
pub mod metrics;
pub mod ranking;
pub mod rng;
pub mod scoring;
pub mod shuffle;
pub mod simulate;
pub mod stats;

pub use baselines::{MaskMethod, MaskSpec};
pub use error::{Error, Result};
pub use matrix::{CategoricalMatrix, DataMatrix, RankMatrix};
pub use metrics::MetricBundle;
pub use rng::Seed;
pub use scoring::{ScoreBundle, TuningResult};
pub use shuffle::ShuffleVariant;
