//! Probabilistic information loss.
//!
//! For each summary statistic theta (column means, variances, pairwise
//! covariances and correlations, and the 10%..90% deciles of every
//! column), the discrepancy between the masked and original estimate is
//! standardized by the masked estimator's asymptotic standard error and
//! mapped through the standard normal CDF:
//! PIL(theta) = 2 (Phi(|Z|) - 1/2). The reported value is the unweighted
//! mean over all statistics.
//!
//! Variance estimators used for the standardization:
//! mean s*^2/n, variance 2 s*^4/(n-1), covariance
//! (s*_aa s*_bb + s*_ab^2)/n, correlation on the Fisher z-scale with
//! variance 1/(n-3), and decile q_w with w(1-w)/(n f(q_w)^2) where f is a
//! Gaussian kernel density estimate (Silverman bandwidth) on the masked
//! column.

use crate::error::Result;
use crate::matrix::DataMatrix;
use crate::stats::{
    gaussian_kde_at, normal_cdf, quantile_sorted, sample_cov, sample_var, silverman_bandwidth,
    sorted_copy,
};

/// Mean probabilistic information loss over the statistic set; in [0, 1].
pub fn pil(original: &DataMatrix, masked: &DataMatrix) -> Result<f64> {
    original.expect_same_shape(masked)?;
    let n = original.n();
    let p = original.p();
    let nf = n as f64;

    let mut terms: Vec<f64> = Vec::new();

    // Column means and variances.
    let var_orig: Vec<f64> = (0..p).map(|j| sample_var(original.column(j))).collect();
    let var_mask: Vec<f64> = (0..p).map(|j| sample_var(masked.column(j))).collect();
    for j in 0..p {
        let mean_orig = crate::stats::mean(original.column(j));
        let mean_mask = crate::stats::mean(masked.column(j));
        terms.push(pil_term(mean_orig, mean_mask, var_mask[j] / nf));
        terms.push(pil_term(
            var_orig[j],
            var_mask[j],
            2.0 * var_mask[j] * var_mask[j] / (nf - 1.0),
        ));
    }

    // Pairwise covariances and correlations.
    for a in 0..p {
        for b in a + 1..p {
            let cov_orig = sample_cov(original.column(a), original.column(b));
            let cov_mask = sample_cov(masked.column(a), masked.column(b));
            let var_cov = (var_mask[a] * var_mask[b] + cov_mask * cov_mask) / nf;
            terms.push(pil_term(cov_orig, cov_mask, var_cov));

            let corr_orig = correlation_from(cov_orig, var_orig[a], var_orig[b]);
            let corr_mask = correlation_from(cov_mask, var_mask[a], var_mask[b]);
            let fisher_var = if n > 3 { 1.0 / (nf - 3.0) } else { 0.0 };
            terms.push(pil_term(fisher_z(corr_orig), fisher_z(corr_mask), fisher_var));
        }
    }

    // Column deciles.
    for j in 0..p {
        let sorted_orig = sorted_copy(original.column(j));
        let sorted_mask = sorted_copy(masked.column(j));
        let bandwidth = silverman_bandwidth(&sorted_mask);
        for dec in 1..=9 {
            let w = dec as f64 / 10.0;
            let q_orig = quantile_sorted(&sorted_orig, w);
            let q_mask = quantile_sorted(&sorted_mask, w);
            let var = if bandwidth > 0.0 {
                let density = gaussian_kde_at(q_mask, &sorted_mask, bandwidth);
                w * (1.0 - w) / (nf * density * density)
            } else {
                0.0
            };
            terms.push(pil_term(q_orig, q_mask, var));
        }
    }

    Ok(terms.iter().sum::<f64>() / terms.len() as f64)
}

/// One statistic's contribution. A zero (or non-finite) variance estimate
/// degenerates to 1 when the estimates differ and 0 when they agree.
fn pil_term(theta_orig: f64, theta_mask: f64, variance: f64) -> f64 {
    if !(variance > 0.0) || !variance.is_finite() {
        return if theta_mask != theta_orig {
            log::warn!("zero variance estimate with differing statistics; counting full loss");
            1.0
        } else {
            0.0
        };
    }
    pil_of_z((theta_mask - theta_orig).abs() / variance.sqrt())
}

/// PIL of an absolute standardized discrepancy.
pub(crate) fn pil_of_z(z_abs: f64) -> f64 {
    2.0 * (normal_cdf(z_abs) - 0.5)
}

fn correlation_from(cov: f64, var_a: f64, var_b: f64) -> f64 {
    if var_a <= 0.0 || var_b <= 0.0 {
        return 0.0;
    }
    (cov / (var_a.sqrt() * var_b.sqrt())).clamp(-1.0, 1.0)
}

fn fisher_z(r: f64) -> f64 {
    let clamped = r.clamp(-1.0 + 1e-15, 1.0 - 1e-15);
    clamped.atanh()
}
