//! Sparse matrices over an exact scalar ring.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Row-compressed sparse matrix. Each row is sorted by column and never
/// stores a zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, T)>>,
}

impl<T: Scalar> SparseMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let data = (0..n).map(|i| vec![(i, T::one())]).collect();
        SparseMatrix { rows: n, cols: n, data }
    }

    /// Builds a matrix from `(row, col, value)` triplets. Duplicate positions
    /// are summed and zeros dropped.
    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, T)>,
    {
        let mut acc: Vec<BTreeMap<usize, T>> = vec![BTreeMap::new(); rows];
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(Error::DimensionMismatch(format!(
                    "entry ({r}, {c}) outside {rows}x{cols}"
                )));
            }
            let slot = acc[r].entry(c).or_insert_with(T::zero);
            *slot = slot.clone() + v;
        }
        let data = acc
            .into_iter()
            .map(|row| row.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        Ok(SparseMatrix { rows, cols, data })
    }

    pub fn from_dense(rows: usize, cols: usize, dense: &[Vec<T>]) -> Self {
        assert_eq!(dense.len(), rows);
        let data = dense
            .iter()
            .map(|row| {
                assert_eq!(row.len(), cols);
                row.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(c, v)| (c, v.clone()))
                    .collect()
            })
            .collect();
        SparseMatrix { rows, cols, data }
    }

    /// Builds a matrix whose columns are the given dense vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<T>]) -> Self {
        let mut data: Vec<Vec<(usize, T)>> = vec![Vec::new(); rows];
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (r, v) in col.iter().enumerate() {
                if !v.is_zero() {
                    data[r].push((c, v.clone()));
                }
            }
        }
        SparseMatrix {
            rows,
            cols: columns.len(),
            data,
        }
    }

    pub(crate) fn from_sorted_rows(rows: usize, cols: usize, data: Vec<Vec<(usize, T)>>) -> Self {
        debug_assert_eq!(data.len(), rows);
        SparseMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn row(&self, r: usize) -> &[(usize, T)] {
        &self.data[r]
    }

    pub fn get(&self, r: usize, c: usize) -> T {
        match self.data[r].binary_search_by_key(&c, |(cc, _)| *cc) {
            Ok(pos) => self.data[r][pos].1.clone(),
            Err(_) => T::zero(),
        }
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &T)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn transpose(&self) -> Self {
        let mut data: Vec<Vec<(usize, T)>> = vec![Vec::new(); self.cols];
        for (r, c, v) in self.triplets() {
            data[c].push((r, v.clone()));
        }
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul(&self, other: &SparseMatrix<T>) -> Result<SparseMatrix<T>> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc: BTreeMap<usize, T> = BTreeMap::new();
                for (k, a) in row {
                    for (c, b) in &other.data[*k] {
                        let slot = acc.entry(*c).or_insert_with(T::zero);
                        *slot = slot.clone() + a.clone() * b.clone();
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        Ok(SparseMatrix {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        assert_eq!(x.len(), self.cols, "vector length mismatch");
        self.data
            .iter()
            .map(|row| {
                row.iter()
                    .fold(T::zero(), |acc, (c, v)| acc + v.clone() * x[*c].clone())
            })
            .collect()
    }

    pub fn column(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<T>> {
        let mut out = vec![vec![T::zero(); self.cols]; self.rows];
        for (r, c, v) in self.triplets() {
            out[r][c] = v.clone();
        }
        out
    }

    /// Keeps only rows in `range`.
    pub fn row_slice(&self, range: std::ops::Range<usize>) -> Self {
        let data = self.data[range.clone()].to_vec();
        SparseMatrix {
            rows: range.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn add(&self, other: &SparseMatrix<T>) -> Result<SparseMatrix<T>> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("matrix sum".into()));
        }
        SparseMatrix::from_triplets(
            self.rows,
            self.cols,
            self.triplets()
                .chain(other.triplets())
                .map(|(r, c, v)| (r, c, v.clone())),
        )
    }

    pub fn neg(&self) -> Self {
        let data = self
            .data
            .iter()
            .map(|row| row.iter().map(|(c, v)| (*c, -v.clone())).collect())
            .collect();
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }
}

/// Wire form: `{"rows":r,"cols":c,"entries":[[i,j,"int"],...]}` with
/// arbitrary-precision integers as decimal strings.
#[derive(Serialize, Deserialize)]
struct MatrixWire {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, String)>,
}

impl<T: Scalar> SparseMatrix<T> {
    pub fn to_json(&self) -> serde_json::Value {
        let wire = MatrixWire {
            rows: self.rows,
            cols: self.cols,
            entries: self.triplets().map(|(r, c, v)| (r, c, v.to_string())).collect(),
        };
        serde_json::to_value(wire).expect("matrix serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let wire: MatrixWire = serde_json::from_value(value.clone()).map_err(|e| Error::MalformedFile {
            location: "matrix".into(),
            message: e.to_string(),
        })?;
        let mut triplets = Vec::with_capacity(wire.entries.len());
        for (k, (r, c, s)) in wire.entries.into_iter().enumerate() {
            let v = s.parse::<T>().map_err(|_| Error::MalformedFile {
                location: format!("entries[{k}][2]"),
                message: format!("not an integer: {s:?}"),
            })?;
            triplets.push((r, c, v));
        }
        SparseMatrix::from_triplets(wire.rows, wire.cols, triplets).map_err(|e| Error::MalformedFile {
            location: "entries".into(),
            message: e.to_string(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn triplets_sum_and_drop_zeros() {
        let m = SparseMatrix::<i64>::from_triplets(2, 2, [(0, 0, 1), (0, 0, -1), (1, 1, 3)]).unwrap();
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.get(1, 1), 3);
        assert!(SparseMatrix::<i64>::from_triplets(1, 1, [(1, 0, 1)]).is_err());
    }

    #[test]
    fn multiply_and_transpose() {
        let a = SparseMatrix::from_dense(2, 3, &[vec![1i64, 2, 0], vec![0, 1, -1]]);
        let at = a.transpose();
        let g = a.mul(&at).unwrap();
        assert_eq!(g.to_dense(), vec![vec![5, 2], vec![2, 2]]);
        assert_eq!(a.mul_vec(&[1, 1, 1]), vec![3, 0]);
        assert!(a.mul(&a).is_err());
    }

    #[test]
    fn json_keeps_big_entries() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let m = SparseMatrix::from_triplets(2, 2, [(0, 1, big.clone())]).unwrap();
        let back = SparseMatrix::<BigInt>::from_json(&m.to_json()).unwrap();
        assert_eq!(back, m);
        let bad = serde_json::json!({"rows": 1, "cols": 1, "entries": [[0, 0, "x"]]});
        assert!(matches!(
            SparseMatrix::<BigInt>::from_json(&bad),
            Err(Error::MalformedFile { .. })
        ));
    }
}
