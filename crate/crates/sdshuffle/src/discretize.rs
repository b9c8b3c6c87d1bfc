//! Equal-width discretization of numeric columns.

use crate::error::{Error, Result};
use crate::matrix::{CategoricalMatrix, DataMatrix};

/// Discretizes every column of `data` into `n_c` equal-width bins over
/// [min, max], labelling bins 1..=n_c. The maximum value is clamped into
/// the last bin; a constant column maps entirely to label 1.
pub fn categorize_data(data: &DataMatrix, n_c: u32) -> Result<CategoricalMatrix> {
    if n_c < 1 {
        return Err(Error::InvalidParameter(format!(
            "number of categories must be >= 1, got {n_c}"
        )));
    }
    let n = data.n();
    let p = data.p();
    let mut labels = vec![0u32; n * p];
    for j in 0..p {
        categorize_into(data.column(j), n_c, &mut labels[j * n..(j + 1) * n]);
    }
    Ok(CategoricalMatrix::from_parts(labels, n, p, n_c))
}

/// Discretizes a single column; see [`categorize_data`].
pub fn categorize_column(values: &[f64], n_c: u32) -> Result<Vec<u32>> {
    if n_c < 1 {
        return Err(Error::InvalidParameter(format!(
            "number of categories must be >= 1, got {n_c}"
        )));
    }
    let mut out = vec![0u32; values.len()];
    categorize_into(values, n_c, &mut out);
    Ok(out)
}

fn categorize_into(values: &[f64], n_c: u32, out: &mut [u32]) {
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for &v in values {
        min = min.min(v);
        max = max.max(v);
    }
    let width = (max - min) / n_c as f64;
    if width == 0.0 {
        out.fill(1);
        return;
    }
    for (o, &v) in out.iter_mut().zip(values) {
        let bin = ((v - min) / width).floor() as u32 + 1;
        *o = bin.min(n_c);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Seed;
    use rand::Rng;

    // The twelve values of the worked restricted-permutation example.
    pub(crate) const EXAMPLE_X2: [f64; 12] = [
        9.66, 10.09, 10.52, 10.54, 10.80, 11.19, 11.24, 11.47, 11.61, 11.96, 12.23, 12.39,
    ];

    #[test]
    fn reproduces_worked_example_labels() {
        let labels = categorize_column(&EXAMPLE_X2, 3).unwrap();
        assert_eq!(labels, [1, 1, 1, 1, 2, 2, 2, 2, 3, 3, 3, 3]);
    }

    #[test]
    fn constant_column_maps_to_one() {
        assert_eq!(categorize_column(&[5.0, 5.0, 5.0], 1).unwrap(), [1, 1, 1]);
        assert_eq!(categorize_column(&[5.0, 5.0, 5.0], 7).unwrap(), [1, 1, 1]);
    }

    #[test]
    fn equal_width_bins_split_at_midpoint() {
        assert_eq!(categorize_column(&[0.0, 1.0, 2.0, 3.0], 2).unwrap(), [1, 1, 2, 2]);
    }

    #[test]
    fn single_bin_labels_everything_one() {
        assert_eq!(categorize_column(&[1.0, -4.0, 9.0], 1).unwrap(), [1, 1, 1]);
    }

    #[test]
    fn rejects_zero_bins() {
        assert!(categorize_column(&[1.0, 2.0], 0).is_err());
    }

    #[test]
    fn monotone_and_bounded_on_random_columns() {
        let mut rng = Seed(11).rng();
        for _ in 0..50 {
            let n = rng.random_range(2..200);
            let n_c = rng.random_range(1..40);
            let values: Vec<f64> = (0..n).map(|_| rng.random_range(-1e3..1e3)).collect();
            let labels = categorize_column(&values, n_c).unwrap();
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap());
            for w in order.windows(2) {
                assert!(labels[w[0]] <= labels[w[1]], "labels not monotone in value");
            }
            assert!(labels.iter().all(|&l| (1..=n_c).contains(&l)));
        }
    }
}
