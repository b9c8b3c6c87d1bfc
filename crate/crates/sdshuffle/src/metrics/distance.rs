//! Distance-based information loss: raw mean absolute/squared error and
//! their bounded rank-based counterparts.

use crate::error::Result;
use crate::matrix::DataMatrix;
use crate::ranking::rank_matrix;
use crate::rng::Seed;

/// Mean absolute and mean squared cellwise error between the two matrices.
pub fn mae_mse(original: &DataMatrix, masked: &DataMatrix) -> Result<(f64, f64)> {
    original.expect_same_shape(masked)?;
    let cells = (original.n() * original.p()) as f64;
    let mut abs = 0.0;
    let mut sq = 0.0;
    for j in 0..original.p() {
        for (a, b) in original.column(j).iter().zip(masked.column(j)) {
            let d = a - b;
            abs += d.abs();
            sq += d * d;
        }
    }
    Ok((abs / cells, sq / cells))
}

/// Bounded rank-based MAE/MSE. Each column of each dataset is ranked with
/// seeded random tie-breaking; the rank distances are normalized by their
/// maximum attainable sum, so both metrics live in [0, 1] and reach 1 at a
/// per-column rank reversal.
pub fn brmae_brmse(original: &DataMatrix, masked: &DataMatrix, seed: Seed) -> Result<(f64, f64)> {
    original.expect_same_shape(masked)?;
    let n = original.n();
    let p = original.p();
    // Independent tie-break stream families per dataset.
    let ro = rank_matrix(original, seed.derive(0, 0));
    let rm = rank_matrix(masked, seed.derive(1, 0));

    let mut abs = 0.0;
    let mut sq = 0.0;
    for j in 0..p {
        for (&a, &b) in ro.column(j).iter().zip(rm.column(j)) {
            let d = a as f64 - b as f64;
            abs += d.abs();
            sq += d * d;
        }
    }
    let (denom_abs, denom_sq) = reversal_denominators(n);
    Ok((
        abs / (2.0 * p as f64 * denom_abs),
        sq / (2.0 * p as f64 * denom_sq),
    ))
}

/// Sum over k = 1..=K of (n - 2k + 1) and its squares, with K = n/2 for
/// even n and (n-1)/2 for odd n: half the rank displacement a full column
/// reversal attains.
fn reversal_denominators(n: usize) -> (f64, f64) {
    let k_max = n / 2; // integer division handles both parities
    let mut abs = 0.0;
    let mut sq = 0.0;
    for k in 1..=k_max {
        let term = (n - 2 * k + 1) as f64;
        abs += term;
        sq += term * term;
    }
    (abs, sq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::default_names;

    fn column_matrix(values: Vec<f64>) -> DataMatrix {
        DataMatrix::from_columns(vec![values], default_names(1)).unwrap()
    }

    #[test]
    fn identical_matrices_have_zero_error() {
        let m = DataMatrix::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        assert_eq!(mae_mse(&m, &m).unwrap(), (0.0, 0.0));
        assert_eq!(brmae_brmse(&m, &m, Seed(0)).unwrap(), (0.0, 0.0));
    }

    #[test]
    fn single_cell_difference() {
        let a = column_matrix(vec![2.0, 2.0]);
        let b = column_matrix(vec![5.0, 2.0]);
        let (mae, mse) = mae_mse(&a, &b).unwrap();
        assert_eq!((mae, mse), (1.5, 4.5));
    }

    #[test]
    fn two_by_two_hand_sums() {
        // Differences {1, -1, 2, 0} -> MAE 1.0, MSE 1.5.
        let a = DataMatrix::from_rows(&[vec![1.0, 3.0], vec![0.0, 5.0]]).unwrap();
        let b = DataMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 5.0]]).unwrap();
        assert_eq!(mae_mse(&a, &b).unwrap(), (1.0, 1.5));
    }

    #[test]
    fn reversal_attains_one() {
        for n in [3usize, 10, 57, 100] {
            let values: Vec<f64> = (0..n).map(|i| i as f64).collect();
            let reversed: Vec<f64> = values.iter().rev().copied().collect();
            let (brmae, brmse) =
                brmae_brmse(&column_matrix(values), &column_matrix(reversed), Seed(1)).unwrap();
            assert!((brmae - 1.0).abs() < 1e-12, "n={n} brmae={brmae}");
            assert!((brmse - 1.0).abs() < 1e-12, "n={n} brmse={brmse}");
        }
    }

    #[test]
    fn reversal_denominator_equals_direct_sum() {
        // The normalizer must equal half the displacement of a reversal.
        for n in 2..=100usize {
            let direct_abs: f64 = (1..=n)
                .map(|r| ((n as i64 + 1 - 2 * r as i64).abs()) as f64)
                .sum();
            let direct_sq: f64 = (1..=n)
                .map(|r| {
                    let d = (n as i64 + 1 - 2 * r as i64) as f64;
                    d * d
                })
                .sum();
            let (abs, sq) = reversal_denominators(n);
            assert_eq!(direct_abs, 2.0 * abs, "n={n}");
            assert_eq!(direct_sq, 2.0 * sq, "n={n}");
        }
    }

    #[test]
    fn three_point_hand_computation() {
        // Ranks [1,2,3] vs [2,1,3]: sum |d| = 2 over denominator 2*(3-2+1)=4.
        let a = column_matrix(vec![10.0, 20.0, 30.0]);
        let b = column_matrix(vec![20.0, 10.0, 30.0]);
        let (brmae, brmse) = brmae_brmse(&a, &b, Seed(3)).unwrap();
        assert!((brmae - 0.5).abs() < 1e-15);
        assert!((brmse - 0.25).abs() < 1e-15);
    }

    #[test]
    fn rejects_shape_mismatch() {
        let a = column_matrix(vec![1.0, 2.0]);
        let b = DataMatrix::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        assert!(mae_mse(&a, &b).is_err());
        assert!(brmae_brmse(&a, &b, Seed(0)).is_err());
    }
}
