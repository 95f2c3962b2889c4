//! Independent exact oracles: rational rank and determinant by fraction-free
//! elimination. They share no code path with the Smith normal form and are
//! used to cross-check it.

use std::collections::BTreeMap;

use crate::matrix::SparseMatrix;
use crate::scalar::Scalar;

fn content<T: Scalar>(row: &BTreeMap<usize, T>) -> T {
    row.values().fold(T::zero(), |g, v| g.gcd(v))
}

/// Rank over the rationals via fraction-free sparse row echelon reduction.
/// Each reduced row is divided by its content to keep entries small.
pub fn rational_rank<T: Scalar>(m: &SparseMatrix<T>) -> usize {
    // eliminate along the shorter side
    let work = if m.rows() > m.cols() { m.transpose() } else { m.clone() };
    let mut pivots: BTreeMap<usize, BTreeMap<usize, T>> = BTreeMap::new();
    for r in 0..work.rows() {
        let mut row: BTreeMap<usize, T> = work.row(r).iter().cloned().collect();
        loop {
            let Some((&lead, lead_val)) = row.iter().next() else {
                break;
            };
            let lead_val = lead_val.clone();
            let Some(prow) = pivots.get(&lead) else {
                let g = content(&row);
                if !g.is_one() {
                    for v in row.values_mut() {
                        *v = v.clone() / g.clone();
                    }
                }
                pivots.insert(lead, row);
                break;
            };
            let pval = prow[&lead].clone();
            let g = pval.gcd(&lead_val);
            let (a, b) = (pval / g.clone(), lead_val / g);
            // row <- a*row - b*prow, which clears the leading entry
            let mut next: BTreeMap<usize, T> = BTreeMap::new();
            for (c, v) in &row {
                next.insert(*c, a.clone() * v.clone());
            }
            for (c, v) in prow {
                let slot = next.entry(*c).or_insert_with(T::zero);
                *slot = slot.clone() - b.clone() * v.clone();
            }
            next.retain(|_, v| !v.is_zero());
            let g = content(&next);
            if !g.is_zero() && !g.is_one() {
                for v in next.values_mut() {
                    *v = v.clone() / g.clone();
                }
            }
            row = next;
        }
    }
    pivots.len()
}

/// Determinant of a square dense matrix by Bareiss elimination.
pub fn determinant<T: Scalar>(rows: &[Vec<T>]) -> T {
    let n = rows.len();
    if n == 0 {
        return T::one();
    }
    let mut a: Vec<Vec<T>> = rows.to_vec();
    let mut sign = T::one();
    let mut prev = T::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return T::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].clone() * a[k][k].clone() - a[i][k].clone() * a[k][j].clone();
                a[i][j] = num / prev.clone();
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        let m = SparseMatrix::from_dense(3, 3, &[vec![1i64, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        assert_eq!(rational_rank(&m), 2);
        assert_eq!(rational_rank(&SparseMatrix::<i64>::zeros(4, 2)), 0);
        assert_eq!(rational_rank(&SparseMatrix::<i64>::identity(5)), 5);
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(determinant(&[vec![2i64, 0], vec![0, 3]]), 6);
        assert_eq!(determinant(&[vec![0i64, 1], vec![1, 0]]), -1);
        assert_eq!(determinant(&[vec![1i64, 2], vec![2, 4]]), 0);
        assert_eq!(determinant(&[vec![2i64, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]), 4);
    }
}
