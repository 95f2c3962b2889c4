//! Submodules of `Z^n`: Hermite normal form, saturation, purity and
//! unimodular vectors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::label::Label;
use crate::matrix::SparseMatrix;
use crate::oracle;
use crate::snf;

fn to_big(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

/// Rank over `Q` of a set of integer vectors.
pub fn rank_q(vectors: &[Vec<i64>]) -> usize {
    let cols = vectors.first().map_or(0, Vec::len);
    oracle::rational_rank(&SparseMatrix::from_dense(vectors.len(), cols, &to_big(vectors)))
}

/// Row-style Hermite normal form: nonzero rows only, pivots positive and
/// strictly increasing, entries above a pivot reduced into `[0, pivot)`.
pub fn hermite_normal_form(rows: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let mut r = 0;
    for c in 0..n {
        if r == a.len() {
            break;
        }
        // gcd-combine everything below r into row r
        for i in r + 1..a.len() {
            if a[i][c].is_zero() {
                continue;
            }
            if a[r][c].is_zero() {
                a.swap(r, i);
                continue;
            }
            let eg = a[r][c].extended_gcd(&a[i][c]);
            let (g, s, t) = (eg.gcd, eg.x, eg.y);
            let (p, q) = (&a[r][c] / &g, &a[i][c] / &g);
            for j in 0..n {
                let (x, y) = (a[r][j].clone(), a[i][j].clone());
                a[r][j] = &s * &x + &t * &y;
                a[i][j] = &p * &y - &q * &x;
            }
        }
        if a[r][c].is_zero() {
            continue;
        }
        if a[r][c].is_negative() {
            for x in a[r].iter_mut() {
                *x = -x.clone();
            }
        }
        for i in 0..r {
            let f = a[i][c].div_floor(&a[r][c]);
            if !f.is_zero() {
                for j in 0..n {
                    let d = &f * &a[r][j];
                    a[i][j] -= d;
                }
            }
        }
        r += 1;
    }
    a.truncate(r);
    a
}

/// A submodule of `Z^n` held in Hermite normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZSubmodule {
    pub n: usize,
    pub basis: Vec<Vec<BigInt>>,
}

impl ZSubmodule {
    pub fn new(generators: &[Vec<i64>], n: usize) -> Result<Self> {
        if generators.iter().any(|g| g.len() != n) {
            return Err(Error::invalid(format!("generator of wrong length for Z^{n}")));
        }
        Ok(Self::from_big(&to_big(generators), n))
    }

    pub fn from_big(generators: &[Vec<BigInt>], n: usize) -> Self {
        ZSubmodule {
            n,
            basis: hermite_normal_form(generators, n),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        hermite_normal_form(&rows, self.n) == self.basis
    }

    pub fn contains_module(&self, other: &ZSubmodule) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    fn matrix(&self) -> SparseMatrix<BigInt> {
        SparseMatrix::from_dense(self.rank(), self.n, &self.basis)
    }

    /// Smallest pure submodule containing `self`: `(N ⊗ Q) ∩ Z^n`.
    ///
    /// With `U A V = D`, the row space of `A` is that of `D V^-1`, so the
    /// first `rank` rows of `V^-1` span the saturation.
    pub fn saturation(&self) -> ZSubmodule {
        if self.is_zero() {
            return self.clone();
        }
        let res = snf::smith_normal_form(&self.matrix()).expect("certified reduction");
        let r = res.rank();
        let v_inv = res.v_inv.expect("tracked").to_dense();
        ZSubmodule::from_big(&v_inv[..r], self.n)
    }

    /// `Z^n / N` is torsion-free.
    pub fn is_pure(&self) -> bool {
        self.saturation() == *self
    }

    /// Independent purity test: all invariant factors of the basis equal 1.
    pub fn quotient_is_torsion_free(&self) -> bool {
        if self.is_zero() {
            return true;
        }
        snf::smith_normal_form(&self.matrix())
            .map(|r| r.invariants.iter().all(One::is_one))
            .unwrap_or(false)
    }

    /// Label made of the HNF rows; entries must fit in `i64`.
    pub fn label(&self) -> Label {
        Label::Subspace(
            self.basis
                .iter()
                .map(|r| r.iter().map(|x| x.to_i64().expect("small lattice entry")).collect())
                .collect(),
        )
    }
}

/// Gcd of the coordinates.
pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Over `Z^n` a vector admits a form `θ` with `θ(v) = 1` exactly when its
/// content is 1 (Bézout).
pub fn is_unimodular(v: &[i64]) -> bool {
    content(&to_big(&[v.to_vec()])[0]).is_one()
}

/// A unimodular vector of a nonzero pure submodule.
pub fn unimodular_in_pure(n: &ZSubmodule) -> Result<Vec<BigInt>> {
    if !n.is_pure() {
        return Err(Error::ImpureInput);
    }
    let first = n.basis.first().ok_or_else(|| Error::invalid("zero submodule"))?;
    let c = content(first);
    Ok(first.iter().map(|x| x / &c).collect())
}
