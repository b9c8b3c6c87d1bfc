//! Joint-probability-preserving data shuffling.
//!
//! The masker repositions values of the numeric microdata by restricted
//! permutations: rows are shuffled only within groups that share a
//! combination of levels of a discretized copy of the data. The full
//! variant conditions column i on all later columns, one conditioning set
//! per factor of the fully factorized joint distribution of the labels;
//! the simplified variant conditions the first p-1 columns on the last
//! one only. The sequential driver re-applies the chosen variant over
//! rotated column orders so every column is shuffled relative to every
//! other.

use std::collections::HashMap;
use std::fmt::Write as _;

use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::discretize::categorize_data;
use crate::error::{Error, Result};
use crate::matrix::{CategoricalMatrix, DataMatrix};
use crate::rng::{random_permutation, shuffle_indices, Seed};

/// Which joint-probability-preserving shuffle to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ShuffleVariant {
    Full,
    Simplified,
}

/// Full joint-probability-preserving data shuffling.
///
/// For i = 1..p-1, rows sharing a combination of label columns i+1..p have
/// their first i numeric columns jointly replaced by a shuffled draw of the
/// same rows from the input, then all rows are randomly permuted. Every
/// output column is an exact multiset copy of the input column.
pub fn jppds_full(
    data: &DataMatrix,
    cats: &CategoricalMatrix,
    rng: &mut ChaCha8Rng,
) -> Result<DataMatrix> {
    check_shuffle_inputs(data, cats)?;
    let shuffled = restricted_permute_full(data, cats, rng);
    let perm = random_permutation(data.n(), rng);
    Ok(shuffled.permute_rows(&perm))
}

/// Simplified joint-probability-preserving data shuffling.
///
/// Within each level of the last label column, the first p-1 numeric
/// columns are jointly permuted as intact row fragments, then all rows are
/// randomly permuted.
pub fn jppds_simplified(
    data: &DataMatrix,
    cats: &CategoricalMatrix,
    rng: &mut ChaCha8Rng,
) -> Result<DataMatrix> {
    check_shuffle_inputs(data, cats)?;
    let shuffled = restricted_permute_simplified(data, cats, rng);
    let perm = random_permutation(data.n(), rng);
    Ok(shuffled.permute_rows(&perm))
}

/// Sequential joint-probability-preserving data shuffling.
///
/// Discretizes the data into `n_c` equal-width categories, applies the
/// chosen variant, then p-1 times rotates the first column to the last
/// position, re-discretizes the partially masked data, and re-applies the
/// variant. A final rotation restores the original column order.
pub fn sjppds(
    data: &DataMatrix,
    n_c: u32,
    variant: ShuffleVariant,
    seed: Seed,
) -> Result<DataMatrix> {
    if data.p() < 2 {
        return Err(Error::InvalidInput(
            "sequential shuffling needs at least two columns".into(),
        ));
    }
    let mut rng = seed.rng();
    let cats = categorize_data(data, n_c)?;
    let mut masked = apply_variant(data, &cats, variant, &mut rng)?;
    for _ in 1..data.p() {
        masked = masked.rotate_first_to_last();
        let cats = categorize_data(&masked, n_c)?;
        masked = apply_variant(&masked, &cats, variant, &mut rng)?;
    }
    let masked = masked.rotate_first_to_last();
    debug_assert_eq!(masked.names(), data.names());
    Ok(masked)
}

fn apply_variant(
    data: &DataMatrix,
    cats: &CategoricalMatrix,
    variant: ShuffleVariant,
    rng: &mut ChaCha8Rng,
) -> Result<DataMatrix> {
    match variant {
        ShuffleVariant::Full => jppds_full(data, cats, rng),
        ShuffleVariant::Simplified => jppds_simplified(data, cats, rng),
    }
}

fn check_shuffle_inputs(data: &DataMatrix, cats: &CategoricalMatrix) -> Result<()> {
    if data.n() != cats.n() || data.p() != cats.p() {
        return Err(Error::ShapeMismatch {
            expected_rows: data.n(),
            expected_cols: data.p(),
            rows: cats.n(),
            cols: cats.p(),
        });
    }
    if data.p() < 2 {
        return Err(Error::InvalidInput(
            "shuffling needs at least two columns".into(),
        ));
    }
    Ok(())
}

/// The restricted-permutation passes of the full variant, without the
/// final whole-row shuffle.
pub(crate) fn restricted_permute_full(
    data: &DataMatrix,
    cats: &CategoricalMatrix,
    rng: &mut ChaCha8Rng,
) -> DataMatrix {
    let n = data.n();
    let p = data.p();
    let mut shuffled = data.clone();
    let mut key = String::new();
    for i in 1..p {
        // Group rows by the pasted combination of label columns i..p-1
        // (0-based), keys like "9.2.6"; groups keep first-appearance order.
        let mut slot: HashMap<String, usize> = HashMap::new();
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for r in 0..n {
            key.clear();
            for j in i..p {
                if j > i {
                    key.push('.');
                }
                let _ = write!(key, "{}", cats.get(r, j));
            }
            match slot.get(&key) {
                Some(&g) => groups[g].push(r),
                None => {
                    slot.insert(key.clone(), groups.len());
                    groups.push(vec![r]);
                }
            }
        }
        for idx in &groups {
            if idx.len() < 2 {
                continue;
            }
            let idx_s = shuffle_indices(idx, rng);
            for j in 0..i {
                let src = data.column(j);
                let dst = shuffled.column_mut(j);
                for (&d, &s) in idx.iter().zip(&idx_s) {
                    dst[d] = src[s];
                }
            }
        }
    }
    shuffled
}

/// The restricted permutation of the simplified variant, without the final
/// whole-row shuffle. Row groups for each level of the last label column
/// are located by a scan over the column, one pass per observed level.
pub(crate) fn restricted_permute_simplified(
    data: &DataMatrix,
    cats: &CategoricalMatrix,
    rng: &mut ChaCha8Rng,
) -> DataMatrix {
    let p = data.p();
    let last = cats.column(p - 1);
    let mut shuffled = data.clone();

    // Observed levels in first-appearance order.
    let mut seen = vec![false; cats.n_c() as usize + 1];
    let mut levels: Vec<u32> = Vec::new();
    for &label in last {
        if !seen[label as usize] {
            seen[label as usize] = true;
            levels.push(label);
        }
    }

    let mut idx: Vec<usize> = Vec::new();
    for &level in &levels {
        idx.clear();
        for (r, &label) in last.iter().enumerate() {
            if label == level {
                idx.push(r);
            }
        }
        if idx.len() < 2 {
            continue;
        }
        let idx_s = shuffle_indices(&idx, rng);
        for j in 0..p - 1 {
            let src = data.column(j);
            let dst = shuffled.column_mut(j);
            for (&d, &s) in idx.iter().zip(&idx_s) {
                dst[d] = src[s];
            }
        }
    }
    shuffled
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ranking::rank_by_position;
    use crate::stats::{pearson, sorted_copy};

    const EXAMPLE_X1: [f64; 12] = [
        8.87, 9.57, 9.61, 9.36, 9.75, 10.51, 10.01, 9.67, 10.29, 11.42, 12.11, 11.64,
    ];
    const EXAMPLE_X2: [f64; 12] = [
        9.66, 10.09, 10.52, 10.54, 10.80, 11.19, 11.24, 11.47, 11.61, 11.96, 12.23, 12.39,
    ];

    fn example_matrix() -> DataMatrix {
        DataMatrix::from_columns(
            vec![EXAMPLE_X1.to_vec(), EXAMPLE_X2.to_vec()],
            vec!["X1".into(), "X2".into()],
        )
        .unwrap()
    }

    #[test]
    fn worked_example_shuffles_within_levels() {
        // Before the final row shuffle, the X1 values of the four rows with
        // label 1 must be exactly the first four original X1 values, and the
        // X2 column must be untouched.
        let data = example_matrix();
        let cats = categorize_data(&data, 3).unwrap();
        assert_eq!(cats.column(1), [1, 1, 1, 1, 2, 2, 2, 2, 3, 3, 3, 3]);
        for seed in 0..20 {
            let out = restricted_permute_full(&data, &cats, &mut Seed(seed).rng());
            assert_eq!(out.column(1), data.column(1));
            for level in 1..=3u32 {
                let rows: Vec<usize> = (0..12).filter(|&r| cats.get(r, 1) == level).collect();
                let got: Vec<f64> = rows.iter().map(|&r| out.get(r, 0)).collect();
                let expect: Vec<f64> = rows.iter().map(|&r| data.get(r, 0)).collect();
                assert_eq!(sorted_copy(&got), sorted_copy(&expect));
            }
        }
    }

    #[test]
    fn all_distinct_combinations_keep_records_intact() {
        // When every categorical combination is unique the inner loops
        // degenerate and the output is a pure row permutation.
        let data = DataMatrix::from_rows(&[
            vec![1.0, 10.0, 100.0],
            vec![2.0, 20.0, 200.0],
            vec![3.0, 30.0, 300.0],
            vec![4.0, 40.0, 400.0],
        ])
        .unwrap();
        let cats = categorize_data(&data, 4).unwrap();
        for j in 0..3 {
            assert_eq!(cats.column(j), [1, 2, 3, 4], "labels must be distinct");
        }
        for seed in 0..20 {
            for variant in [ShuffleVariant::Full, ShuffleVariant::Simplified] {
                let out = match variant {
                    ShuffleVariant::Full => {
                        jppds_full(&data, &cats, &mut Seed(seed).rng()).unwrap()
                    }
                    ShuffleVariant::Simplified => {
                        jppds_simplified(&data, &cats, &mut Seed(seed).rng()).unwrap()
                    }
                };
                let mut got: Vec<Vec<f64>> = (0..4)
                    .map(|i| (0..3).map(|j| out.get(i, j)).collect())
                    .collect();
                let mut expect: Vec<Vec<f64>> = (0..4)
                    .map(|i| (0..3).map(|j| data.get(i, j)).collect())
                    .collect();
                got.sort_by(|a, b| a.partial_cmp(b).unwrap());
                expect.sort_by(|a, b| a.partial_cmp(b).unwrap());
                assert_eq!(got, expect);
            }
        }
    }

    #[test]
    fn simplified_moves_whole_row_fragments() {
        let data = DataMatrix::from_rows(&[
            vec![1.0, 10.0, 100.0],
            vec![2.0, 20.0, 200.0],
            vec![3.0, 30.0, 300.0],
            vec![4.0, 40.0, 400.0],
            vec![5.0, 50.0, 500.0],
            vec![6.0, 60.0, 600.0],
        ])
        .unwrap();
        let cats = categorize_data(&data, 2).unwrap();
        let input_fragments: Vec<(f64, f64)> =
            (0..6).map(|i| (data.get(i, 0), data.get(i, 1))).collect();
        for seed in 0..30 {
            let out = jppds_simplified(&data, &cats, &mut Seed(seed).rng()).unwrap();
            for i in 0..6 {
                let frag = (out.get(i, 0), out.get(i, 1));
                assert!(
                    input_fragments.contains(&frag),
                    "fragment {frag:?} is not an input fragment"
                );
            }
        }
    }

    #[test]
    fn simplified_two_by_two_groups_enumerated() {
        // 4x3 data whose last-column labels are [1,1,2,2]. The only possible
        // outputs are the four within-group fragment permutations, each a
        // multiset over full records.
        let data = DataMatrix::from_rows(&[
            vec![1.0, 10.0, 0.0],
            vec![2.0, 20.0, 0.1],
            vec![3.0, 30.0, 9.0],
            vec![4.0, 40.0, 9.1],
        ])
        .unwrap();
        let cats = categorize_data(&data, 2).unwrap();
        assert_eq!(cats.column(2), [1, 1, 2, 2]);

        // Enumerate the 2x2 admissible record multisets.
        let frag = |i: usize| (data.get(i, 0), data.get(i, 1));
        let last = |i: usize| data.get(i, 2);
        let mut admissible: Vec<Vec<(f64, f64, f64)>> = Vec::new();
        for swap_a in [false, true] {
            for swap_b in [false, true] {
                let (a0, a1) = if swap_a { (1, 0) } else { (0, 1) };
                let (b0, b1) = if swap_b { (3, 2) } else { (2, 3) };
                let mut rows = vec![
                    (frag(a0).0, frag(a0).1, last(0)),
                    (frag(a1).0, frag(a1).1, last(1)),
                    (frag(b0).0, frag(b0).1, last(2)),
                    (frag(b1).0, frag(b1).1, last(3)),
                ];
                rows.sort_by(|x, y| x.partial_cmp(y).unwrap());
                admissible.push(rows);
            }
        }

        let mut seen = std::collections::HashSet::new();
        for seed in 0..200 {
            let out = jppds_simplified(&data, &cats, &mut Seed(seed).rng()).unwrap();
            let mut rows: Vec<(f64, f64, f64)> = (0..4)
                .map(|i| (out.get(i, 0), out.get(i, 1), out.get(i, 2)))
                .collect();
            rows.sort_by(|x, y| x.partial_cmp(y).unwrap());
            let pos = admissible.iter().position(|a| *a == rows);
            let pos = pos.expect("output outside the enumerated permutation set");
            seen.insert(pos);
        }
        assert_eq!(seen.len(), 4, "all four group permutations should occur");
    }

    #[test]
    fn single_level_decorrelates_independent_columns() {
        // With one category the first column is fully permuted relative to
        // the second; rank correlation of the output stays near zero.
        let n = 1000;
        let mut rng = Seed(123).rng();
        let cols: Vec<Vec<f64>> = (0..2)
            .map(|_| {
                (0..n)
                    .map(|_| rand::Rng::random_range(&mut rng, -1.0..1.0))
                    .collect()
            })
            .collect();
        let data =
            DataMatrix::from_columns(cols, vec!["a".into(), "b".into()]).unwrap();
        let mut total = 0.0;
        let runs = 300;
        for seed in 0..runs {
            let out = sjppds(&data, 1, ShuffleVariant::Simplified, Seed(seed)).unwrap();
            let ra: Vec<f64> = rank_by_position(out.column(0)).iter().map(|&r| r as f64).collect();
            let rb: Vec<f64> = rank_by_position(out.column(1)).iter().map(|&r| r as f64).collect();
            total += pearson(&ra, &rb).abs();
        }
        let avg = total / runs as f64;
        assert!(avg < 0.05, "average |spearman| = {avg}");
    }

    #[test]
    fn sequential_preserves_marginals_bitwise() {
        let mut rng = Seed(55).rng();
        for &(n, p, n_c) in &[(30usize, 2usize, 3u32), (101, 5, 7), (64, 3, 64)] {
            let cols: Vec<Vec<f64>> = (0..p)
                .map(|_| {
                    (0..n)
                        .map(|_| {
                            // Mix in repeated values so ties are exercised.
                            let v: f64 = rand::Rng::random_range(&mut rng, -5.0..5.0);
                            (v * 4.0).round() / 4.0
                        })
                        .collect()
                })
                .collect();
            let data = DataMatrix::from_columns(cols, crate::matrix::default_names(p)).unwrap();
            for variant in [ShuffleVariant::Full, ShuffleVariant::Simplified] {
                let out = sjppds(&data, n_c, variant, Seed(n as u64)).unwrap();
                assert_eq!(out.names(), data.names());
                for j in 0..p {
                    // total_cmp orders -0.0 before +0.0, so equal bit
                    // multisets sort to equal bit sequences.
                    let bits = |col: &[f64]| {
                        let mut v = col.to_vec();
                        v.sort_unstable_by(f64::total_cmp);
                        v.iter().map(|x| x.to_bits()).collect::<Vec<u64>>()
                    };
                    assert_eq!(
                        bits(data.column(j)),
                        bits(out.column(j)),
                        "column {j} marginal changed"
                    );
                }
            }
        }
    }

    #[test]
    fn rotation_schedule_visits_all_orderings() {
        let data = DataMatrix::from_rows(&[
            vec![1.0, 2.0, 3.0, 4.0],
            vec![5.0, 6.0, 7.0, 8.0],
        ])
        .unwrap();
        let mut names_seen = Vec::new();
        let mut cur = data.clone();
        for _ in 0..3 {
            cur = cur.rotate_first_to_last();
            names_seen.push(cur.names().to_vec());
        }
        cur = cur.rotate_first_to_last();
        assert_eq!(
            names_seen,
            vec![
                vec!["X2", "X3", "X4", "X1"],
                vec!["X3", "X4", "X1", "X2"],
                vec!["X4", "X1", "X2", "X3"],
            ]
        );
        assert_eq!(cur.names(), data.names());
    }

    #[test]
    fn deterministic_per_seed() {
        let data = DataMatrix::from_rows(&[
            vec![1.0, 2.0],
            vec![3.0, 4.0],
            vec![5.0, 6.0],
            vec![7.0, 8.0],
            vec![9.0, 10.0],
        ])
        .unwrap();
        let a = sjppds(&data, 2, ShuffleVariant::Simplified, Seed(77)).unwrap();
        let b = sjppds(&data, 2, ShuffleVariant::Simplified, Seed(77)).unwrap();
        assert_eq!(a, b);
        let c = sjppds(&data, 2, ShuffleVariant::Simplified, Seed(78)).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn rejects_single_column() {
        let data = DataMatrix::from_columns(vec![vec![1.0, 2.0]], vec!["a".into()]).unwrap();
        assert!(sjppds(&data, 2, ShuffleVariant::Full, Seed(0)).is_err());
    }

    #[test]
    fn rejects_shape_mismatch() {
        let data = example_matrix();
        let other = DataMatrix::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        let cats = categorize_data(&other, 2).unwrap();
        assert!(jppds_full(&data, &cats, &mut Seed(0).rng()).is_err());
    }
}
