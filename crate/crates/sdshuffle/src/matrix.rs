//! Tabular microdata containers.
//!
//! Matrices are stored column-major: the masking algorithms, the
//! discretizer, and the rank-based metrics all walk single columns, so
//! each column is kept contiguous.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An n x p matrix of finite real values with named columns.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DataMatrix {
    values: Vec<f64>, // column-major, column j at values[j*n .. (j+1)*n]
    names: Vec<String>,
    n: usize,
    p: usize,
}

impl DataMatrix {
    /// Builds a matrix from column-major values, validating the invariants:
    /// all values finite, n >= 2, p >= 1, unique column names.
    pub fn new(values: Vec<f64>, n: usize, p: usize, names: Vec<String>) -> Result<Self> {
        if p < 1 {
            return Err(Error::InvalidInput("matrix needs at least one column".into()));
        }
        if n < 2 {
            return Err(Error::InvalidInput(format!(
                "matrix needs at least two rows, got {n}"
            )));
        }
        if values.len() != n * p {
            return Err(Error::InvalidInput(format!(
                "expected {} values for a {n}x{p} matrix, got {}",
                n * p,
                values.len()
            )));
        }
        if names.len() != p {
            return Err(Error::InvalidInput(format!(
                "expected {p} column names, got {}",
                names.len()
            )));
        }
        for (j, name) in names.iter().enumerate() {
            if names[..j].contains(name) {
                return Err(Error::InvalidInput(format!("duplicate column name {name:?}")));
            }
        }
        for (k, &v) in values.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "non-finite value {v} at row {}, column {}",
                    k % n + 1,
                    k / n + 1
                )));
            }
        }
        Ok(Self { values, names, n, p })
    }

    /// Builds a matrix from per-column vectors.
    pub fn from_columns(columns: Vec<Vec<f64>>, names: Vec<String>) -> Result<Self> {
        let p = columns.len();
        let n = columns.first().map_or(0, Vec::len);
        if columns.iter().any(|c| c.len() != n) {
            return Err(Error::InvalidInput("columns have unequal lengths".into()));
        }
        let mut values = Vec::with_capacity(n * p);
        for col in &columns {
            values.extend_from_slice(col);
        }
        Self::new(values, n, p, names)
    }

    /// Builds a matrix from row slices, naming columns `X1..Xp`.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let p = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != p) {
            return Err(Error::InvalidInput("rows have unequal lengths".into()));
        }
        let mut values = vec![0.0; n * p];
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                values[j * n + i] = v;
            }
        }
        Self::new(values, n, p, default_names(p))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn column(&self, j: usize) -> &[f64] {
        &self.values[j * self.n..(j + 1) * self.n]
    }

    pub fn column_mut(&mut self, j: usize) -> &mut [f64] {
        &mut self.values[j * self.n..(j + 1) * self.n]
    }

    pub fn columns(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks_exact(self.n)
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[j * self.n + i]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.values[j * self.n + i] = v;
    }

    /// Copies row `i` into `buf` (length p).
    pub fn read_row(&self, i: usize, buf: &mut [f64]) {
        for j in 0..self.p {
            buf[j] = self.values[j * self.n + i];
        }
    }

    /// Row-major copy of the values; used by the distance-based routines
    /// that walk whole records.
    pub fn to_row_major(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.n * self.p];
        for j in 0..self.p {
            let col = self.column(j);
            for i in 0..self.n {
                out[i * self.p + j] = col[i];
            }
        }
        out
    }

    /// True if both matrices have the same shape.
    pub fn same_shape(&self, other: &DataMatrix) -> bool {
        self.n == other.n && self.p == other.p
    }

    pub(crate) fn expect_same_shape(&self, other: &DataMatrix) -> Result<()> {
        if self.same_shape(other) {
            Ok(())
        } else {
            Err(Error::ShapeMismatch {
                expected_rows: self.n,
                expected_cols: self.p,
                rows: other.n,
                cols: other.p,
            })
        }
    }

    /// Reorders rows so output row i is input row `perm[i]`.
    pub fn permute_rows(&self, perm: &[usize]) -> DataMatrix {
        debug_assert_eq!(perm.len(), self.n);
        let mut values = vec![0.0; self.n * self.p];
        for j in 0..self.p {
            let src = self.column(j);
            let dst = &mut values[j * self.n..(j + 1) * self.n];
            for (i, &s) in perm.iter().enumerate() {
                dst[i] = src[s];
            }
        }
        DataMatrix {
            values,
            names: self.names.clone(),
            n: self.n,
            p: self.p,
        }
    }

    /// Moves the first column to the last position (column rotation used by
    /// the sequential shuffler).
    pub fn rotate_first_to_last(&self) -> DataMatrix {
        let mut values = Vec::with_capacity(self.n * self.p);
        values.extend_from_slice(&self.values[self.n..]);
        values.extend_from_slice(&self.values[..self.n]);
        let mut names = self.names[1..].to_vec();
        names.push(self.names[0].clone());
        DataMatrix {
            values,
            names,
            n: self.n,
            p: self.p,
        }
    }
}

/// Integer labels in 1..=n_c, same shape as the data it was derived from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategoricalMatrix {
    labels: Vec<u32>, // column-major
    n: usize,
    p: usize,
    n_c: u32,
}

impl CategoricalMatrix {
    pub(crate) fn from_parts(labels: Vec<u32>, n: usize, p: usize, n_c: u32) -> Self {
        debug_assert_eq!(labels.len(), n * p);
        Self { labels, n, p, n_c }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn n_c(&self) -> u32 {
        self.n_c
    }

    pub fn column(&self, j: usize) -> &[u32] {
        &self.labels[j * self.n..(j + 1) * self.n]
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.labels[j * self.n + i]
    }
}

/// Per-column ranks: each column is a permutation of 1..=n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankMatrix {
    ranks: Vec<u32>, // column-major
    n: usize,
    p: usize,
}

impl RankMatrix {
    pub(crate) fn from_parts(ranks: Vec<u32>, n: usize, p: usize) -> Self {
        debug_assert_eq!(ranks.len(), n * p);
        Self { ranks, n, p }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn column(&self, j: usize) -> &[u32] {
        &self.ranks[j * self.n..(j + 1) * self.n]
    }
}

pub(crate) fn default_names(p: usize) -> Vec<String> {
    (1..=p).map(|j| format!("X{j}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_finite() {
        let err = DataMatrix::new(vec![1.0, f64::NAN], 2, 1, vec!["a".into()]);
        assert!(err.is_err());
        let err = DataMatrix::new(vec![1.0, f64::INFINITY], 2, 1, vec!["a".into()]);
        assert!(err.is_err());
    }

    #[test]
    fn rejects_duplicate_names() {
        let err = DataMatrix::new(vec![1.0, 2.0, 3.0, 4.0], 2, 2, vec!["a".into(), "a".into()]);
        assert!(err.is_err());
    }

    #[test]
    fn rejects_single_row() {
        assert!(DataMatrix::new(vec![1.0], 1, 1, vec!["a".into()]).is_err());
    }

    #[test]
    fn rotation_cycle_restores_order() {
        let m = DataMatrix::from_rows(&[vec![1.0, 2.0, 3.0], vec![4.0, 5.0, 6.0]]).unwrap();
        let mut r = m.clone();
        for _ in 0..3 {
            r = r.rotate_first_to_last();
        }
        assert_eq!(r, m);
    }

    #[test]
    fn rotation_moves_names() {
        let m = DataMatrix::from_rows(&[vec![1.0, 2.0, 3.0], vec![4.0, 5.0, 6.0]]).unwrap();
        let r = m.rotate_first_to_last();
        assert_eq!(r.names(), ["X2", "X3", "X1"]);
        assert_eq!(r.column(2), m.column(0));
    }

    #[test]
    fn row_major_round_trip() {
        let m = DataMatrix::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0], vec![5.0, 6.0]]).unwrap();
        assert_eq!(m.to_row_major(), vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
        assert_eq!(m.column(0), [1.0, 3.0, 5.0]);
    }
}
