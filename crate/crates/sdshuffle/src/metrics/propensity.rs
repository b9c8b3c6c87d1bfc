//! Propensity-score information loss.
//!
//! The original and masked datasets are stacked with a 0/1 label, a
//! second-order polynomial feature set is built (all variables, their
//! squares, and all pairwise products, z-scored on the stacked data), and
//! a ridge-regularized logistic regression is fitted by damped iteratively
//! reweighted least squares. The score is the mean squared deviation of
//! the fitted probabilities from 1/2, rescaled by 4 so that completely
//! distinguishable datasets score 1.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::matrix::DataMatrix;

const RIDGE: f64 = 1e-6;
const MAX_ITERATIONS: usize = 200;
const RELATIVE_TOLERANCE: f64 = 1e-8;

/// 4 times the propensity score of the stacked design; in [0, 1].
pub fn propensity_score_il(original: &DataMatrix, masked: &DataMatrix) -> Result<f64> {
    let fit = fit_propensity(original, masked)?;
    if !fit.converged {
        log::warn!(
            "propensity fit did not converge after {MAX_ITERATIONS} iterations; \
             using the last iterate"
        );
    }
    Ok(fit.value)
}

pub(crate) struct PropensityFit {
    pub value: f64,
    pub converged: bool,
    #[allow(dead_code)]
    pub iterations: usize,
}

pub(crate) fn fit_propensity(original: &DataMatrix, masked: &DataMatrix) -> Result<PropensityFit> {
    if original.p() != masked.p() || original.n() != masked.n() {
        return Err(Error::ShapeMismatch {
            expected_rows: original.n(),
            expected_cols: original.p(),
            rows: masked.n(),
            cols: masked.p(),
        });
    }
    let design = stacked_design(original, masked);
    let rows = design.nrows();
    let n = original.n();
    let labels = DVector::from_fn(rows, |i, _| if i < n { 0.0 } else { 1.0 });

    let (beta, converged, iterations) = irls(&design, &labels);
    let eta = &design * &beta;
    let ps = eta
        .iter()
        .map(|&e| {
            let d = sigmoid(e) - 0.5;
            d * d
        })
        .sum::<f64>()
        / rows as f64;
    Ok(PropensityFit {
        value: 4.0 * ps,
        converged,
        iterations,
    })
}

/// Stacked second-order design: per input column x its value and x^2, all
/// pairwise products, each z-scored over the stacked rows, plus a trailing
/// intercept column. Features with zero spread are dropped to zero.
fn stacked_design(original: &DataMatrix, masked: &DataMatrix) -> DMatrix<f64> {
    let n = original.n();
    let p = original.p();
    let rows = 2 * n;
    let m = 2 * p + p * (p - 1) / 2;
    let mut design = DMatrix::zeros(rows, m + 1);

    let value = |i: usize, j: usize| -> f64 {
        if i < n {
            original.get(i, j)
        } else {
            masked.get(i - n, j)
        }
    };
    let mut col = 0;
    for j in 0..p {
        for i in 0..rows {
            design[(i, col)] = value(i, j);
        }
        col += 1;
    }
    for j in 0..p {
        for i in 0..rows {
            let v = value(i, j);
            design[(i, col)] = v * v;
        }
        col += 1;
    }
    for a in 0..p {
        for b in a + 1..p {
            for i in 0..rows {
                design[(i, col)] = value(i, a) * value(i, b);
            }
            col += 1;
        }
    }
    debug_assert_eq!(col, m);

    for c in 0..m {
        let mut column = design.column_mut(c);
        let mean = column.iter().sum::<f64>() / rows as f64;
        let var = column.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>()
            / (rows - 1) as f64;
        let sd = var.sqrt();
        if sd > 0.0 {
            for v in column.iter_mut() {
                *v = (*v - mean) / sd;
            }
        } else {
            column.fill(0.0);
        }
    }
    for i in 0..rows {
        design[(i, m)] = 1.0;
    }
    design
}

/// Damped IRLS for the ridge-penalized logistic likelihood: full Newton
/// steps with halving whenever the penalized log-likelihood would decrease.
/// The ridge applies to every coefficient including the intercept.
fn irls(design: &DMatrix<f64>, labels: &DVector<f64>) -> (DVector<f64>, bool, usize) {
    let rows = design.nrows();
    let m = design.ncols();
    let mut beta = DVector::zeros(m);
    let mut loglik = penalized_loglik(design, labels, &beta);

    for iter in 0..MAX_ITERATIONS {
        let eta = design * &beta;
        let probs = eta.map(sigmoid);
        // Gradient of the penalized log-likelihood.
        let residual = labels - &probs;
        let grad = design.transpose() * residual - RIDGE * &beta;
        // Weighted Gram matrix (Newton Hessian, negated).
        let mut weighted = design.clone();
        for i in 0..rows {
            let w = (probs[i] * (1.0 - probs[i])).sqrt();
            for c in 0..m {
                weighted[(i, c)] *= w;
            }
        }
        let mut hessian = weighted.transpose() * weighted;
        for d in 0..m {
            hessian[(d, d)] += RIDGE;
        }
        let step = match hessian.cholesky() {
            Some(chol) => chol.solve(&grad),
            None => return (beta, false, iter),
        };

        let mut scale = 1.0;
        let mut candidate;
        let mut candidate_loglik;
        loop {
            candidate = &beta + &step * scale;
            candidate_loglik = penalized_loglik(design, labels, &candidate);
            if candidate_loglik >= loglik || scale < 1e-12 {
                break;
            }
            scale *= 0.5;
        }

        let improvement = (candidate_loglik - loglik).abs();
        beta = candidate;
        let done = improvement <= RELATIVE_TOLERANCE * (1.0 + loglik.abs());
        loglik = candidate_loglik;
        if done {
            return (beta, true, iter + 1);
        }
    }
    (beta, false, MAX_ITERATIONS)
}

fn penalized_loglik(design: &DMatrix<f64>, labels: &DVector<f64>, beta: &DVector<f64>) -> f64 {
    let eta = design * beta;
    let mut total = 0.0;
    for (i, &e) in eta.iter().enumerate() {
        // y*eta - log(1 + exp(eta)), computed overflow-safely.
        let softplus = e.max(0.0) + (-e.abs()).exp().ln_1p();
        total += labels[i] * e - softplus;
    }
    total - 0.5 * RIDGE * beta.norm_squared()
}

fn sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}
