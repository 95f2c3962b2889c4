//! Smith normal form over a Euclidean scalar ring.
//!
//! Reduction works on a doubly indexed sparse matrix (row maps and column
//! maps kept in sync) so that both row and column operations stay cheap.
//! Every elementary operation is mirrored onto the requested transforms
//! `U`, `U^-1`, `V`, `V^-1`, which keeps `U * A * V = D` exact at all times.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::matrix::SparseMatrix;
use crate::scalar::{ext_gcd, Scalar};

#[derive(Clone, Debug)]
pub(crate) struct Dual<T> {
    rows: Vec<BTreeMap<usize, T>>,
    cols: Vec<BTreeMap<usize, T>>,
}

impl<T: Scalar> Dual<T> {
    fn zeros(r: usize, c: usize) -> Self {
        Dual {
            rows: vec![BTreeMap::new(); r],
            cols: vec![BTreeMap::new(); c],
        }
    }

    fn identity(n: usize) -> Self {
        let mut d = Dual::zeros(n, n);
        for i in 0..n {
            d.set(i, i, T::one());
        }
        d
    }

    fn from_sparse(m: &SparseMatrix<T>) -> Self {
        let mut d = Dual::zeros(m.rows(), m.cols());
        for (r, c, v) in m.triplets() {
            d.set(r, c, v.clone());
        }
        d
    }

    fn to_sparse(&self) -> SparseMatrix<T> {
        let data = self
            .rows
            .iter()
            .map(|row| row.iter().map(|(c, v)| (*c, v.clone())).collect())
            .collect();
        SparseMatrix::from_sorted_rows(self.rows.len(), self.cols.len(), data)
    }

    fn get(&self, r: usize, c: usize) -> T {
        self.rows[r].get(&c).cloned().unwrap_or_else(T::zero)
    }

    fn set(&mut self, r: usize, c: usize, v: T) {
        if v.is_zero() {
            self.rows[r].remove(&c);
            self.cols[c].remove(&r);
        } else {
            self.rows[r].insert(c, v.clone());
            self.cols[c].insert(r, v);
        }
    }

    /// row[dst] += f * row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, f: &T) {
        let entries: Vec<(usize, T)> = self.rows[src].iter().map(|(c, v)| (*c, v.clone())).collect();
        for (c, v) in entries {
            let cur = self.get(dst, c);
            self.set(dst, c, cur + f.clone() * v);
        }
    }

    /// col[dst] += f * col[src]
    fn col_axpy(&mut self, dst: usize, src: usize, f: &T) {
        let entries: Vec<(usize, T)> = self.cols[src].iter().map(|(r, v)| (*r, v.clone())).collect();
        for (r, v) in entries {
            let cur = self.get(r, dst);
            self.set(r, dst, cur + f.clone() * v);
        }
    }

    /// Left multiplication by the 2x2 block `m` acting on rows `a`, `b`.
    fn row_mix(&mut self, a: usize, b: usize, m: &[[T; 2]; 2]) {
        let mut keys: Vec<usize> = self.rows[a].keys().chain(self.rows[b].keys()).copied().collect();
        keys.sort_unstable();
        keys.dedup();
        for c in keys {
            let x = self.get(a, c);
            let y = self.get(b, c);
            let na = m[0][0].clone() * x.clone() + m[0][1].clone() * y.clone();
            let nb = m[1][0].clone() * x + m[1][1].clone() * y;
            self.set(a, c, na);
            self.set(b, c, nb);
        }
    }

    /// Right multiplication by the 2x2 block `m` acting on columns `a`, `b`.
    fn col_mix(&mut self, a: usize, b: usize, m: &[[T; 2]; 2]) {
        let mut keys: Vec<usize> = self.cols[a].keys().chain(self.cols[b].keys()).copied().collect();
        keys.sort_unstable();
        keys.dedup();
        for r in keys {
            let x = self.get(r, a);
            let y = self.get(r, b);
            let na = x.clone() * m[0][0].clone() + y.clone() * m[1][0].clone();
            let nb = x * m[0][1].clone() + y * m[1][1].clone();
            self.set(r, a, na);
            self.set(r, b, nb);
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let ra = std::mem::take(&mut self.rows[a]);
        let rb = std::mem::take(&mut self.rows[b]);
        for c in ra.keys() {
            self.cols[*c].remove(&a);
        }
        for c in rb.keys() {
            self.cols[*c].remove(&b);
        }
        for (c, v) in ra {
            self.set(b, c, v);
        }
        for (c, v) in rb {
            self.set(a, c, v);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let ca = std::mem::take(&mut self.cols[a]);
        let cb = std::mem::take(&mut self.cols[b]);
        for r in ca.keys() {
            self.rows[*r].remove(&a);
        }
        for r in cb.keys() {
            self.rows[*r].remove(&b);
        }
        for (r, v) in ca {
            self.set(r, b, v);
        }
        for (r, v) in cb {
            self.set(r, a, v);
        }
    }

    fn negate_row(&mut self, r: usize) {
        let entries: Vec<(usize, T)> = self.rows[r].iter().map(|(c, v)| (*c, -v.clone())).collect();
        for (c, v) in entries {
            self.set(r, c, v);
        }
    }

    fn negate_col(&mut self, c: usize) {
        let entries: Vec<(usize, T)> = self.cols[c].iter().map(|(r, v)| (*r, -v.clone())).collect();
        for (r, v) in entries {
            self.set(r, c, v);
        }
    }
}

fn inverse_2x2<T: Scalar>(m: &[[T; 2]; 2]) -> [[T; 2]; 2] {
    let det = m[0][0].clone() * m[1][1].clone() - m[0][1].clone() * m[1][0].clone();
    debug_assert!(det.is_one() || (-det.clone()).is_one());
    [
        [m[1][1].clone() * det.clone(), -m[0][1].clone() * det.clone()],
        [-m[1][0].clone() * det.clone(), m[0][0].clone() * det],
    ]
}

/// Which transforms the reduction keeps track of.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Track {
    pub u: bool,
    pub u_inv: bool,
    pub v: bool,
    pub v_inv: bool,
}

impl Track {
    pub const ALL: Track = Track {
        u: true,
        u_inv: true,
        v: true,
        v_inv: true,
    };
}

struct Engine<T> {
    a: Dual<T>,
    u: Option<Dual<T>>,
    u_inv: Option<Dual<T>>,
    v: Option<Dual<T>>,
    v_inv: Option<Dual<T>>,
}

impl<T: Scalar> Engine<T> {
    fn row_axpy(&mut self, dst: usize, src: usize, f: &T) {
        self.a.row_axpy(dst, src, f);
        if let Some(u) = &mut self.u {
            u.row_axpy(dst, src, f);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.col_axpy(src, dst, &-f.clone());
        }
    }

    fn col_axpy(&mut self, dst: usize, src: usize, f: &T) {
        self.a.col_axpy(dst, src, f);
        if let Some(v) = &mut self.v {
            v.col_axpy(dst, src, f);
        }
        if let Some(vi) = &mut self.v_inv {
            vi.row_axpy(src, dst, &-f.clone());
        }
    }

    fn row_mix(&mut self, a: usize, b: usize, m: [[T; 2]; 2]) {
        self.a.row_mix(a, b, &m);
        if let Some(u) = &mut self.u {
            u.row_mix(a, b, &m);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.col_mix(a, b, &inverse_2x2(&m));
        }
    }

    fn col_mix(&mut self, a: usize, b: usize, m: [[T; 2]; 2]) {
        self.a.col_mix(a, b, &m);
        if let Some(v) = &mut self.v {
            v.col_mix(a, b, &m);
        }
        if let Some(vi) = &mut self.v_inv {
            vi.row_mix(a, b, &inverse_2x2(&m));
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.a.swap_rows(a, b);
        if let Some(u) = &mut self.u {
            u.swap_rows(a, b);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.swap_cols(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.a.swap_cols(a, b);
        if let Some(v) = &mut self.v {
            v.swap_cols(a, b);
        }
        if let Some(vi) = &mut self.v_inv {
            vi.swap_rows(a, b);
        }
    }

    fn negate_row(&mut self, r: usize) {
        self.a.negate_row(r);
        if let Some(u) = &mut self.u {
            u.negate_row(r);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.negate_col(r);
        }
    }

    /// Picks the next pivot among rows/cols `>= k`: a sparsest active column,
    /// then its entry of least magnitude (ties: sparsest row).
    fn choose_pivot(&self, k: usize) -> Option<(usize, usize)> {
        let mut best_col: Option<(usize, usize, bool)> = None;
        for c in k..self.a.cols.len() {
            let len = self.a.cols[c].range(k..).count();
            if len == 0 {
                continue;
            }
            let has_unit = self.a.cols[c].range(k..).any(|(_, v)| v.abs().is_one());
            let better = match best_col {
                None => true,
                Some((_, blen, bunit)) => (has_unit && !bunit) || (has_unit == bunit && len < blen),
            };
            if better {
                best_col = Some((c, len, has_unit));
                if has_unit && len == 1 {
                    break;
                }
            }
        }
        let (c, _, _) = best_col?;
        let (r, _) = self.a.cols[c]
            .range(k..)
            .min_by(|(r1, v1), (r2, v2)| {
                v1.abs()
                    .cmp(&v2.abs())
                    .then(self.a.rows[**r1].len().cmp(&self.a.rows[**r2].len()))
                    .then(r1.cmp(r2))
            })
            .map(|(r, v)| (*r, v.clone()))?;
        Some((r, c))
    }

    fn eliminate_at(&mut self, k: usize) {
        loop {
            let others: Vec<usize> = self.a.cols[k].keys().copied().filter(|&i| i != k).collect();
            for i in others {
                let piv = self.a.get(k, k);
                let v = self.a.get(i, k);
                if v.is_zero() {
                    continue;
                }
                if (v.clone() % piv.clone()).is_zero() {
                    self.row_axpy(i, k, &-(v / piv));
                } else {
                    let (g, s, t) = ext_gcd(&piv, &v);
                    let m = [[s, t], [-(v / g.clone()), piv / g]];
                    self.row_mix(k, i, m);
                }
            }
            let others: Vec<usize> = self.a.rows[k].keys().copied().filter(|&j| j != k).collect();
            for j in others {
                let piv = self.a.get(k, k);
                let v = self.a.get(k, j);
                if v.is_zero() {
                    continue;
                }
                if (v.clone() % piv.clone()).is_zero() {
                    self.col_axpy(j, k, &-(v / piv));
                } else {
                    let (g, s, t) = ext_gcd(&piv, &v);
                    let m = [[s, -(v / g.clone())], [t, piv / g]];
                    self.col_mix(k, j, m);
                }
            }
            if self.a.cols[k].len() == 1 && self.a.rows[k].len() == 1 {
                break;
            }
        }
        if self.a.get(k, k).is_negative() {
            self.negate_row(k);
        }
    }

    /// Enforces `d_i | d_{i+1}` on the leading `rank` diagonal entries.
    fn fix_divisibility(&mut self, rank: usize) {
        for i in 0..rank {
            for j in (i + 1)..rank {
                let di = self.a.get(i, i);
                let dj = self.a.get(j, j);
                if (dj.clone() % di.clone()).is_zero() {
                    continue;
                }
                self.col_axpy(i, j, &T::one());
                let (g, s, t) = ext_gcd(&di, &dj);
                let m = [[s, t.clone()], [-(dj.clone() / g.clone()), di / g.clone()]];
                self.row_mix(i, j, m);
                self.col_axpy(j, i, &-(t * dj / g));
                if self.a.get(j, j).is_negative() {
                    self.negate_row(j);
                }
            }
        }
    }
}

/// Output of a Smith normal form reduction.
#[derive(Clone, Debug)]
pub struct SnfResult<T> {
    rows: usize,
    cols: usize,
    /// Nonzero invariant factors `d_1 | d_2 | ...`, all positive.
    pub invariants: Vec<T>,
    pub u: Option<SparseMatrix<T>>,
    pub u_inv: Option<SparseMatrix<T>>,
    pub v: Option<SparseMatrix<T>>,
    pub v_inv: Option<SparseMatrix<T>>,
}

impl<T: Scalar> SnfResult<T> {
    pub fn rank(&self) -> usize {
        self.invariants.len()
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    /// The diagonal matrix `D`.
    pub fn diagonal(&self) -> SparseMatrix<T> {
        SparseMatrix::from_triplets(
            self.rows,
            self.cols,
            self.invariants.iter().enumerate().map(|(i, d)| (i, i, d.clone())),
        )
        .expect("diagonal fits")
    }

    /// Invariant factors other than 1.
    pub fn torsion(&self) -> Vec<T> {
        self.invariants.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    /// Re-checks the certificate against `a`: `U*A*V = D`, `U*U^-1 = I`,
    /// `V*V^-1 = I` and the divisibility chain, for whichever transforms
    /// were recorded.
    pub fn verify(&self, a: &SparseMatrix<T>) -> bool {
        if a.rows() != self.rows || a.cols() != self.cols {
            return false;
        }
        let chain_ok = self
            .invariants
            .windows(2)
            .all(|w| (w[1].clone() % w[0].clone()).is_zero())
            && self.invariants.iter().all(|d| d.is_positive());
        if !chain_ok {
            return false;
        }
        let d = self.diagonal();
        let ok_uv = match (&self.u, &self.v) {
            (Some(u), Some(v)) => u.mul(a).and_then(|ua| ua.mul(v)).map(|p| p == d).unwrap_or(false),
            (Some(u), None) => match &self.v_inv {
                Some(vi) => u.mul(a).map(|ua| ua == d.mul(vi).unwrap()).unwrap_or(false),
                None => true,
            },
            (None, Some(v)) => match &self.u_inv {
                Some(ui) => a.mul(v).map(|av| av == ui.mul(&d).unwrap()).unwrap_or(false),
                None => true,
            },
            (None, None) => match (&self.u_inv, &self.v_inv) {
                (Some(ui), Some(vi)) => ui.mul(&d).and_then(|x| x.mul(vi)).map(|p| &p == a).unwrap_or(false),
                _ => true,
            },
        };
        let inv_ok = |x: &Option<SparseMatrix<T>>, y: &Option<SparseMatrix<T>>, n: usize| match (x, y) {
            (Some(x), Some(y)) => x.mul(y).map(|p| p == SparseMatrix::identity(n)).unwrap_or(false),
            _ => true,
        };
        ok_uv && inv_ok(&self.u, &self.u_inv, self.rows) && inv_ok(&self.v, &self.v_inv, self.cols)
    }
}

thread_local! {
    static COUNTS: std::cell::Cell<(usize, usize)> = const { std::cell::Cell::new((0, 0)) };
}

/// Reductions performed and certificates re-verified on this thread.
pub fn certificate_counts() -> (usize, usize) {
    COUNTS.with(|c| c.get())
}

pub(crate) fn reduce<T: Scalar>(a: &SparseMatrix<T>, track: Track) -> SnfResult<T> {
    COUNTS.with(|c| {
        let (r, v) = c.get();
        c.set((r + 1, v));
    });
    let (m, n) = (a.rows(), a.cols());
    let mut eng = Engine {
        a: Dual::from_sparse(a),
        u: track.u.then(|| Dual::identity(m)),
        u_inv: track.u_inv.then(|| Dual::identity(m)),
        v: track.v.then(|| Dual::identity(n)),
        v_inv: track.v_inv.then(|| Dual::identity(n)),
    };
    let mut k = 0;
    while k < m.min(n) {
        let Some((r, c)) = eng.choose_pivot(k) else { break };
        eng.swap_rows(r, k);
        eng.swap_cols(c, k);
        eng.eliminate_at(k);
        k += 1;
    }
    let rank = k;
    eng.fix_divisibility(rank);
    let invariants = (0..rank).map(|i| eng.a.get(i, i)).collect();
    SnfResult {
        rows: m,
        cols: n,
        invariants,
        u: eng.u.map(|d| d.to_sparse()),
        u_inv: eng.u_inv.map(|d| d.to_sparse()),
        v: eng.v.map(|d| d.to_sparse()),
        v_inv: eng.v_inv.map(|d| d.to_sparse()),
    }
}

/// Smith normal form with both unimodular transforms, `U * A * V = D`.
/// The certificate is re-verified before returning.
pub fn smith_normal_form<T: Scalar>(a: &SparseMatrix<T>) -> Result<SnfResult<T>> {
    let res = reduce(a, Track::ALL);
    if !res.verify(a) {
        return Err(Error::NotInvertible("Smith normal form certificate failed".into()));
    }
    COUNTS.with(|c| {
        let (r, v) = c.get();
        c.set((r, v + 1));
    });
    Ok(res)
}

/// Solves `A x = b` over the integers, if a solution exists.
pub fn solve<T: Scalar>(snf: &SnfResult<T>, b: &[T]) -> Option<Vec<T>> {
    let u = snf.u.as_ref().expect("solve needs U");
    let v = snf.v.as_ref().expect("solve needs V");
    let ub = u.mul_vec(b);
    let mut y = vec![T::zero(); snf.cols];
    for (i, val) in ub.iter().enumerate() {
        if i < snf.rank() {
            let d = &snf.invariants[i];
            if !(val.clone() % d.clone()).is_zero() {
                return None;
            }
            y[i] = val.clone() / d.clone();
        } else if !val.is_zero() {
            return None;
        }
    }
    Some(v.mul_vec(&y))
}
