//! Disclosure risk metrics: distance-based record linkage, rank-based
//! interval disclosure, and standard-deviation interval disclosure.
//!
//! All three assume row i of the masked data corresponds to row i of the
//! original. For maskers that break that correspondence, evaluate through
//! [`crate::metrics::averaged_sorted`] instead.

use rayon::prelude::*;

use crate::error::Result;
use crate::matrix::DataMatrix;
use crate::ranking::rank_by_position;
use crate::stats::{mean, sample_std, sorted_copy};

/// Distance-based record linkage: the fraction of masked records whose
/// nearest original record (Euclidean distance on data z-scored by the
/// original's column mean/std) is their own original record. Distance ties
/// count as linked when the true record is among the minimizers.
pub fn dbrl(original: &DataMatrix, masked: &DataMatrix) -> Result<f64> {
    original.expect_same_shape(masked)?;
    let n = original.n();
    let p = original.p();

    let mut zo = original.to_row_major();
    let mut zm = masked.to_row_major();
    for j in 0..p {
        let col = original.column(j);
        let m = mean(col);
        let sd = sample_std(col);
        let scale = if sd > 0.0 { sd } else { 1.0 };
        for i in 0..n {
            zo[i * p + j] = (zo[i * p + j] - m) / scale;
            zm[i * p + j] = (zm[i * p + j] - m) / scale;
        }
    }

    let dist2 = |a: &[f64], b: &[f64]| -> f64 {
        a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
    };
    let linked = (0..n)
        .into_par_iter()
        .filter(|&i| {
            let rec = &zm[i * p..(i + 1) * p];
            let own = dist2(rec, &zo[i * p..(i + 1) * p]);
            let nearest = (0..n)
                .map(|t| dist2(rec, &zo[t * p..(t + 1) * p]))
                .fold(f64::INFINITY, f64::min);
            own <= nearest
        })
        .count();
    Ok(linked as f64 / n as f64)
}

/// Rank-based interval disclosure, averaged over interval widths of
/// 1%..=10% of the record count. A record is disclosed at width w when,
/// for every variable, its original value falls inside the interval of
/// masked values whose ranks are within w*n of the masked record's rank.
pub fn rid(original: &DataMatrix, masked: &DataMatrix) -> Result<f64> {
    original.expect_same_shape(masked)?;
    let n = original.n();
    let p = original.p();

    let sorted: Vec<Vec<f64>> = (0..p).map(|j| sorted_copy(masked.column(j))).collect();
    let ranks: Vec<Vec<u32>> = (0..p).map(|j| rank_by_position(masked.column(j))).collect();

    let mut total = 0.0;
    for w in 1..=10 {
        let width = w as f64 * n as f64 / 100.0;
        let mut disclosed = 0usize;
        for i in 0..n {
            let inside = (0..p).all(|j| {
                let r = ranks[j][i] as f64;
                let lo = (r - width).ceil().max(1.0) as usize;
                let hi = (r + width).floor().min(n as f64) as usize;
                let x = original.get(i, j);
                sorted[j][lo - 1] <= x && x <= sorted[j][hi - 1]
            });
            if inside {
                disclosed += 1;
            }
        }
        total += disclosed as f64 / n as f64;
    }
    Ok(total / 10.0)
}

/// Standard-deviation interval disclosure: like [`rid`] but with raw-value
/// intervals of half-width w times the original column's standard
/// deviation, w again averaged over 1%..=10%.
pub fn sdid(original: &DataMatrix, masked: &DataMatrix) -> Result<f64> {
    original.expect_same_shape(masked)?;
    let n = original.n();
    let p = original.p();
    let stds: Vec<f64> = (0..p).map(|j| sample_std(original.column(j))).collect();

    let mut total = 0.0;
    for w in 1..=10 {
        let frac = w as f64 / 100.0;
        let mut disclosed = 0usize;
        for i in 0..n {
            let inside =
                (0..p).all(|j| (original.get(i, j) - masked.get(i, j)).abs() <= frac * stds[j]);
            if inside {
                disclosed += 1;
            }
        }
        total += disclosed as f64 / n as f64;
    }
    Ok(total / 10.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::default_names;
    use crate::rng::Seed;
    use rand::Rng;

    fn random_matrix(n: usize, p: usize, seed: u64) -> DataMatrix {
        let mut rng = Seed(seed).rng();
        let cols: Vec<Vec<f64>> = (0..p)
            .map(|_| (0..n).map(|_| rng.random_range(-10.0..10.0)).collect())
            .collect();
        DataMatrix::from_columns(cols, default_names(p)).unwrap()
    }

    #[test]
    fn identical_data_is_fully_linked() {
        let data = random_matrix(50, 3, 1);
        assert_eq!(dbrl(&data, &data).unwrap(), 1.0);
        assert_eq!(rid(&data, &data).unwrap(), 1.0);
        assert_eq!(sdid(&data, &data).unwrap(), 1.0);
    }

    #[test]
    fn cyclic_shift_links_nothing() {
        // Each masked row matches a different original record exactly, so
        // the nearest neighbour is never the own record.
        let data = random_matrix(20, 3, 2);
        let perm: Vec<usize> = (0..20).map(|i| (i + 1) % 20).collect();
        let shifted = data.permute_rows(&perm);
        assert_eq!(dbrl(&data, &shifted).unwrap(), 0.0);
    }

    #[test]
    fn nearby_points_stay_linked() {
        let original = DataMatrix::from_rows(&[
            vec![0.0, 0.0],
            vec![10.0, 10.0],
            vec![20.0, 20.0],
        ])
        .unwrap();
        let masked = DataMatrix::from_rows(&[
            vec![1.0, 1.0],
            vec![9.0, 9.0],
            vec![26.0, 26.0],
        ])
        .unwrap();
        assert_eq!(dbrl(&original, &masked).unwrap(), 1.0);
    }

    #[test]
    fn rid_on_reversed_column_matches_brute_force() {
        let n = 100;
        let values: Vec<f64> = (0..n).map(|i| i as f64 * 0.5).collect();
        let reversed: Vec<f64> = values.iter().rev().copied().collect();
        let original = DataMatrix::from_columns(vec![values], default_names(1)).unwrap();
        let masked = DataMatrix::from_columns(vec![reversed], default_names(1)).unwrap();
        // Record at rank r maps to rank n+1-r; disclosed at width w
        // exactly when |n + 1 - 2r| <= w*n/100.
        let mut expect = 0.0;
        for w in 1..=10 {
            let width = w as f64 * n as f64 / 100.0;
            let count = (1..=n)
                .filter(|&r| ((n as i64 + 1 - 2 * r as i64).abs() as f64) <= width)
                .count();
            expect += count as f64 / n as f64;
        }
        expect /= 10.0;
        let got = rid(&original, &masked).unwrap();
        assert!((got - expect).abs() < 1e-12, "got {got}, expect {expect}");
    }

    #[test]
    fn rid_far_record_contributes_zero() {
        let original =
            DataMatrix::from_columns(vec![vec![1.0, 2.0, 3.0, 4.0, 100.0]], default_names(1))
                .unwrap();
        let masked =
            DataMatrix::from_columns(vec![vec![1.0, 2.0, 3.0, 4.0, -100.0]], default_names(1))
                .unwrap();
        // Widths reach at most 10% of n=5, i.e. rank distance 0.5; the last
        // record's original value (largest) sits at the other end of the
        // masked ranking, so only the first four can be disclosed.
        let got = rid(&original, &masked).unwrap();
        assert!((got - 0.8).abs() < 1e-12, "got {got}");
    }

    #[test]
    fn sdid_shifted_by_many_sigmas_is_zero() {
        let data = random_matrix(30, 2, 3);
        let mut masked = data.clone();
        for j in 0..2 {
            let sd = sample_std(data.column(j));
            for v in masked.column_mut(j) {
                *v += 100.0 * sd;
            }
        }
        assert_eq!(sdid(&data, &masked).unwrap(), 0.0);
    }

    #[test]
    fn sdid_hand_instance() {
        // One record inside the 10% band, two outside at every width.
        let original = DataMatrix::from_columns(vec![vec![0.0, 10.0, 20.0]], default_names(1)).unwrap();
        let sd = sample_std(original.column(0)); // 10
        assert_eq!(sd, 10.0);
        let masked =
            DataMatrix::from_columns(vec![vec![0.5, 10.0 + 1.5, 20.0 + 12.0]], default_names(1))
                .unwrap();
        // diffs = [0.5, 1.5, 12]; bands w% of sd = w/10 for w=1..10.
        // Row 0 inside for w >= 1 (0.5 <= w); wait: band = w/100*10 = 0.1w.
        // Row 0 (0.5) inside for 0.1w >= 0.5, i.e. w >= 5 -> widths 5..10: 6 hits.
        // Row 1 (1.5) never inside (max band 1.0). Row 2 never.
        let expect = (0..=10).skip(5).count() as f64 / (3.0 * 10.0);
        let got = sdid(&original, &masked).unwrap();
        assert!((got - expect).abs() < 1e-12, "got {got}, expect {expect}");
        // At w=10 exactly one of three records is inside.
        let w10_band = 0.10 * sd;
        let inside = [0.5, 1.5, 12.0].iter().filter(|&&d| d <= w10_band).count();
        assert_eq!(inside, 1);
    }

    #[test]
    fn scale_invariance_of_rank_based_metrics() {
        let data = random_matrix(40, 2, 5);
        let masked = random_matrix(40, 2, 6);
        let scale = |m: &DataMatrix, c: f64| {
            let cols: Vec<Vec<f64>> = (0..m.p())
                .map(|j| m.column(j).iter().map(|v| v * c).collect())
                .collect();
            DataMatrix::from_columns(cols, m.names().to_vec()).unwrap()
        };
        let c = 37.5;
        assert!(
            (dbrl(&data, &masked).unwrap() - dbrl(&scale(&data, c), &scale(&masked, c)).unwrap())
                .abs()
                < 1e-12
        );
        assert!(
            (rid(&data, &masked).unwrap() - rid(&scale(&data, c), &scale(&masked, c)).unwrap())
                .abs()
                < 1e-12
        );
    }
}
