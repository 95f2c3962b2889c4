//! Linear algebra over prime fields `F_q`: ranks, canonical (RREF) subspaces,
//! enumeration of subspaces and vectors, and `GL_n(F_q)`.

use rand::Rng;

use crate::error::{Error, Result};
use crate::label::Label;

pub fn is_prime(q: i64) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| q % d != 0)
}

pub fn check_prime(q: i64) -> Result<()> {
    if is_prime(q) {
        Ok(())
    } else {
        Err(Error::invalid(format!("q = {q} is not prime")))
    }
}

fn inv_mod(a: i64, q: i64) -> i64 {
    // q is prime: a^(q-2)
    let (mut base, mut exp, mut acc) = (a.rem_euclid(q), q - 2, 1i64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % q;
        }
        base = base * base % q;
        exp >>= 1;
    }
    acc
}

pub fn reduce(v: &[i64], q: i64) -> Vec<i64> {
    v.iter().map(|x| x.rem_euclid(q)).collect()
}

pub fn is_zero(v: &[i64], q: i64) -> bool {
    v.iter().all(|x| x.rem_euclid(q) == 0)
}

fn common_width(vectors: &[Vec<i64>]) -> Result<usize> {
    let n = vectors.first().map_or(0, Vec::len);
    if vectors.iter().any(|v| v.len() != n) {
        return Err(Error::invalid("vectors have different lengths"));
    }
    Ok(n)
}

/// Nonzero rows of the reduced row echelon form of `vectors` over `F_q`.
pub fn rref(vectors: &[Vec<i64>], q: i64) -> Vec<Vec<i64>> {
    let mut rows: Vec<Vec<i64>> = vectors.iter().map(|v| reduce(v, q)).collect();
    let n = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = inv_mod(rows[r][c], q);
        for x in rows[r].iter_mut() {
            *x = *x * inv % q;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..n {
                    rows[i][j] = (rows[i][j] - f * rows[r][j]).rem_euclid(q);
                }
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

pub fn rank_mod(vectors: &[Vec<i64>], q: i64) -> usize {
    rref(vectors, q).len()
}

/// Coefficient field for [`rank_of_set`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Field {
    Prime(i64),
    Rationals,
}

/// Dimension of the span of `vectors`.
pub fn rank_of_set(vectors: &[Vec<i64>], field: Field) -> Result<usize> {
    common_width(vectors)?;
    match field {
        Field::Prime(q) => {
            check_prime(q)?;
            Ok(rank_mod(vectors, q))
        }
        Field::Rationals => Ok(crate::zlattice::rank_q(vectors)),
    }
}

/// A subspace of `F_q^n` stored by its canonical RREF basis.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FqSubspace {
    pub q: i64,
    pub n: usize,
    pub basis: Vec<Vec<i64>>,
}

impl FqSubspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn label(&self) -> Label {
        Label::Subspace(self.basis.clone())
    }

    pub fn from_label(label: &Label, q: i64) -> Result<Self> {
        match label {
            Label::Subspace(rows) => canonical_subspace(rows, q),
            other => Err(Error::invalid(format!("{other} is not a subspace label"))),
        }
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        rank_mod(&rows, self.q) == self.dim()
    }

    pub fn is_subspace_of(&self, other: &FqSubspace) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }
}

/// Canonical handle of the span of `vectors`.
pub fn canonical_subspace(vectors: &[Vec<i64>], q: i64) -> Result<FqSubspace> {
    check_prime(q)?;
    let n = common_width(vectors)?;
    let basis = rref(vectors, q);
    if basis.is_empty() {
        return Err(Error::invalid("span of the given vectors is zero"));
    }
    Ok(FqSubspace { q, n, basis })
}

/// All vectors of `F_q^n` in lexicographic order, zero first.
pub fn all_vectors(n: usize, q: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..q).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// Nonzero vectors of `F_q^n`, lexicographic.
pub fn nonzero_vectors(n: usize, q: i64) -> Vec<Vec<i64>> {
    all_vectors(n, q)
        .into_iter()
        .filter(|v| v.iter().any(|&x| x != 0))
        .collect()
}

/// All `d`-dimensional subspaces of `F_q^n`, sorted by RREF.
pub fn enumerate_subspaces(n: usize, q: i64, d: usize) -> Result<Vec<FqSubspace>> {
    check_prime(q)?;
    if d > n {
        return Err(Error::invalid(format!("no {d}-dimensional subspaces of F_q^{n}")));
    }
    let mut out = Vec::new();
    let mut pivots = Vec::new();
    choose(n, d, 0, &mut pivots, &mut |piv| {
        // free slots: (row, col) with col > pivot of row and col not a pivot
        let free: Vec<(usize, usize)> = piv
            .iter()
            .enumerate()
            .flat_map(|(r, &p)| (p + 1..n).filter(|c| !piv.contains(c)).map(move |c| (r, c)))
            .collect();
        for fill in all_vectors(free.len(), q) {
            let mut basis = vec![vec![0i64; n]; d];
            for (r, &p) in piv.iter().enumerate() {
                basis[r][p] = 1;
            }
            for (&(r, c), &x) in free.iter().zip(&fill) {
                basis[r][c] = x;
            }
            out.push(FqSubspace { q, n, basis });
        }
    });
    out.sort();
    Ok(out)
}

fn choose(n: usize, k: usize, start: usize, acc: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if acc.len() == k {
        f(acc);
        return;
    }
    for i in start..n {
        acc.push(i);
        choose(n, k, i + 1, acc, f);
        acc.pop();
    }
}

/// Determinant of a square matrix over `F_q`.
pub fn det_mod(m: &[Vec<i64>], q: i64) -> i64 {
    let n = m.len();
    let mut a: Vec<Vec<i64>> = m.iter().map(|r| reduce(r, q)).collect();
    let mut det = 1i64;
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| a[i][c] != 0) else {
            return 0;
        };
        if p != c {
            a.swap(p, c);
            det = (q - det) % q;
        }
        det = det * a[c][c] % q;
        let inv = inv_mod(a[c][c], q);
        for i in c + 1..n {
            let f = a[i][c] * inv % q;
            for j in c..n {
                a[i][j] = (a[i][j] - f * a[c][j]).rem_euclid(q);
            }
        }
    }
    det
}

/// An invertible `n x n` matrix over `F_q`, acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlMatrix {
    pub q: i64,
    pub rows: Vec<Vec<i64>>,
}

impl GlMatrix {
    pub fn new(rows: Vec<Vec<i64>>, q: i64) -> Result<Self> {
        check_prime(q)?;
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::invalid("matrix is not square"));
        }
        let rows: Vec<Vec<i64>> = rows.iter().map(|r| reduce(r, q)).collect();
        if det_mod(&rows, q) == 0 {
            return Err(Error::invalid("matrix is singular"));
        }
        Ok(GlMatrix { q, rows })
    }

    pub fn identity(n: usize, q: i64) -> Self {
        let rows = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        GlMatrix { q, rows }
    }

    pub fn random<R: Rng>(n: usize, q: i64, rng: &mut R) -> Self {
        loop {
            let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(0..q)).collect()).collect();
            if det_mod(&rows, q) != 0 {
                return GlMatrix { q, rows };
            }
        }
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        self.rows
            .iter()
            .map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum::<i64>().rem_euclid(self.q))
            .collect()
    }

    pub fn apply_subspace(&self, s: &FqSubspace) -> FqSubspace {
        let img: Vec<Vec<i64>> = s.basis.iter().map(|v| self.apply(v)).collect();
        canonical_subspace(&img, self.q).expect("invertible maps keep spans nonzero")
    }

    /// Acts on vector and subspace labels, and elementwise on set labels.
    pub fn apply_label(&self, l: &Label) -> Label {
        match l {
            Label::Vector(v) => Label::Vector(self.apply(v)),
            Label::Subspace(rows) => Label::Subspace(
                self.apply_subspace(&FqSubspace {
                    q: self.q,
                    n: self.n(),
                    basis: rows.clone(),
                })
                .basis,
            ),
            Label::Set(items) => Label::set(items.iter().map(|x| self.apply_label(x))),
            other => other.clone(),
        }
    }
}

/// A uniformly random nonzero vector of `F_q^n`.
pub fn random_nonzero<R: Rng>(n: usize, q: i64, rng: &mut R) -> Vec<i64> {
    loop {
        let v: Vec<i64> = (0..n).map(|_| rng.gen_range(0..q)).collect();
        if v.iter().any(|&x| x != 0) {
            return v;
        }
    }
}
