//! Integral homology with explicit cycle representatives.
//!
//! For `H_p = ker d_p / im d_{p+1}`: a Smith reduction `U d_p V = D` gives a
//! lattice basis of `ker d_p` (the trailing columns of `V`) and coordinates
//! on it (the trailing rows of `V^-1`). The boundaries, written in those
//! coordinates, are reduced again; the columns of the second `U^-1` with
//! invariant factor other than 1 give free and torsion generators.

use std::collections::BTreeMap;

use serde_json::json;

use crate::chain::{ChainComplex, ChainMap};
use crate::error::{Error, Result};
use crate::matrix::SparseMatrix;
use crate::oracle;
use crate::scalar::Scalar;
use crate::snf;

/// Homology in one degree.
#[derive(Clone, Debug)]
pub struct DegreeHomology<T> {
    pub degree: usize,
    pub betti: usize,
    /// Invariant factors other than 1, ascending by divisibility.
    pub torsion: Vec<T>,
    /// Cycles whose classes form a basis of the free part.
    pub cycle_basis: Vec<Vec<T>>,
    /// Cycles generating the torsion part, with their orders.
    pub torsion_cycles: Vec<(Vec<T>, T)>,
    chain_rank: usize,
    boundary: SparseMatrix<T>,
    // leading rows of V^-1 that must vanish on cycles
    image_coords: SparseMatrix<T>,
    kernel_coords: SparseMatrix<T>,
    reducer: SparseMatrix<T>,
    free_positions: Vec<usize>,
    torsion_positions: Vec<(usize, T)>,
}

/// Coordinates of a homology class.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClassCoordinates<T> {
    pub free: Vec<T>,
    /// Residues modulo the matching torsion orders.
    pub torsion: Vec<T>,
}

impl<T: Scalar> ClassCoordinates<T> {
    pub fn is_zero(&self) -> bool {
        self.free.iter().chain(&self.torsion).all(|v| v.is_zero())
    }

    pub fn neg(&self, orders: &[T]) -> Self {
        ClassCoordinates {
            free: self.free.iter().map(|v| -v.clone()).collect(),
            torsion: self
                .torsion
                .iter()
                .zip(orders)
                .map(|(v, o)| (-v.clone()).mod_floor(o))
                .collect(),
        }
    }
}

impl<T: Scalar> DegreeHomology<T> {
    fn trivial(degree: usize) -> Self {
        DegreeHomology {
            degree,
            betti: 0,
            torsion: Vec::new(),
            cycle_basis: Vec::new(),
            torsion_cycles: Vec::new(),
            chain_rank: 0,
            boundary: SparseMatrix::zeros(0, 0),
            image_coords: SparseMatrix::zeros(0, 0),
            kernel_coords: SparseMatrix::zeros(0, 0),
            reducer: SparseMatrix::zeros(0, 0),
            free_positions: Vec::new(),
            torsion_positions: Vec::new(),
        }
    }

    pub fn chain_rank(&self) -> usize {
        self.chain_rank
    }

    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }

    /// Expresses the class of the cycle `z` in the computed basis.
    pub fn class_coordinates(&self, z: &[T]) -> Result<ClassCoordinates<T>> {
        if z.len() != self.chain_rank {
            return Err(Error::DimensionMismatch(format!(
                "chain of length {} in degree {} (rank {})",
                z.len(),
                self.degree,
                self.chain_rank
            )));
        }
        if self.chain_rank == 0 {
            return Ok(ClassCoordinates {
                free: Vec::new(),
                torsion: Vec::new(),
            });
        }
        if self.boundary.mul_vec(z).iter().any(|v| !v.is_zero()) {
            return Err(Error::NotACycle { degree: self.degree });
        }
        if self.image_coords.mul_vec(z).iter().any(|v| !v.is_zero()) {
            return Err(Error::NotInLattice { degree: self.degree });
        }
        let y = self.reducer.mul_vec(&self.kernel_coords.mul_vec(z));
        Ok(ClassCoordinates {
            free: self.free_positions.iter().map(|&i| y[i].clone()).collect(),
            torsion: self.torsion_positions.iter().map(|(i, d)| y[*i].mod_floor(d)).collect(),
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "degree": self.degree,
            "betti": self.betti,
            "torsion": self.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
        })
    }
}

/// Homology of `c` in each requested degree.
#[derive(Clone, Debug)]
pub struct HomologyResult<T> {
    pub degrees: BTreeMap<usize, DegreeHomology<T>>,
}

impl<T: Scalar> HomologyResult<T> {
    pub fn get(&self, p: usize) -> Option<&DegreeHomology<T>> {
        self.degrees.get(&p)
    }

    pub fn betti(&self) -> Vec<(usize, usize)> {
        self.degrees.iter().map(|(p, h)| (*p, h.betti)).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.degrees.values().map(DegreeHomology::to_json).collect())
    }
}

pub fn homology<T: Scalar, I>(c: &ChainComplex<T>, degrees: I) -> Result<HomologyResult<T>>
where
    I: IntoIterator<Item = usize>,
{
    let mut out = BTreeMap::new();
    for p in degrees {
        out.insert(p, homology_degree(c, p)?);
    }
    Ok(HomologyResult { degrees: out })
}

/// Homology in every materialized degree of a complex closed on both sides.
pub fn full_homology<T: Scalar>(c: &ChainComplex<T>) -> Result<HomologyResult<T>> {
    homology(c, c.p_min()..=c.p_max())
}

fn oracle_mismatch(what: &str, p: usize, snf_rank: usize, oracle_rank: usize) -> Error {
    Error::NotInvertible(format!(
        "rank oracle disagrees for {what} in degree {p}: reduction {snf_rank}, oracle {oracle_rank}"
    ))
}

pub fn homology_degree<T: Scalar>(c: &ChainComplex<T>, p: usize) -> Result<DegreeHomology<T>> {
    let n = c.dim(p).ok_or(Error::DegreeOutOfWindow { degree: p })?;
    let d_out = c.boundary(p)?;
    let d_in = c.boundary(p + 1)?;
    if n == 0 {
        return Ok(DegreeHomology::trivial(p));
    }

    let s1 = snf::smith_normal_form(&d_out)?;
    let r = s1.rank();
    let or = oracle::rational_rank(&d_out);
    if or != r {
        return Err(oracle_mismatch("d_p", p, r, or));
    }
    let v = s1.v.expect("tracked");
    let v_inv = s1.v_inv.expect("tracked");
    let k = n - r;
    let image_coords = v_inv.row_slice(0..r);
    let kernel_coords = v_inv.row_slice(r..n);
    // kernel basis: trailing columns of V
    let v_t = v.transpose();
    let kernel_basis: Vec<Vec<T>> = (r..n)
        .map(|j| {
            let mut col = vec![T::zero(); n];
            for (i, val) in v_t.row(j) {
                col[*i] = val.clone();
            }
            col
        })
        .collect();

    let x = kernel_coords.mul(&d_in)?;
    if !image_coords.mul(&d_in)?.is_zero() {
        return Err(Error::NonExact(format!("boundaries are not cycles in degree {p}")));
    }
    let s2 = snf::smith_normal_form(&x)?;
    let s = s2.rank();
    let oi = oracle::rational_rank(&d_in);
    if oi != s {
        return Err(oracle_mismatch("d_{p+1}", p, s, oi));
    }
    let u2 = s2.u.expect("tracked");
    let u2_inv_t = s2.u_inv.expect("tracked").transpose();

    let to_cycle = |i: usize| -> Vec<T> {
        let mut z = vec![T::zero(); n];
        for (kk, coef) in u2_inv_t.row(i) {
            for (row, val) in kernel_basis[*kk].iter().enumerate() {
                if !val.is_zero() {
                    z[row] = z[row].clone() + coef.clone() * val.clone();
                }
            }
        }
        z
    };

    let mut free_positions = Vec::new();
    let mut torsion_positions = Vec::new();
    let mut cycle_basis = Vec::new();
    let mut torsion_cycles = Vec::new();
    for i in 0..k {
        if i < s {
            let e = &s2.invariants[i];
            if !e.is_one() {
                torsion_positions.push((i, e.clone()));
                torsion_cycles.push((to_cycle(i), e.clone()));
            }
        } else {
            free_positions.push(i);
            cycle_basis.push(to_cycle(i));
        }
    }
    Ok(DegreeHomology {
        degree: p,
        betti: k - s,
        torsion: torsion_positions.iter().map(|(_, d)| d.clone()).collect(),
        cycle_basis,
        torsion_cycles,
        chain_rank: n,
        boundary: d_out,
        image_coords,
        kernel_coords,
        reducer: u2,
        free_positions,
        torsion_positions,
    })
}

/// Matrix of the map induced on free parts of `H_p` by a chain map
/// (target betti x source betti).
pub fn induced_homology_map<T: Scalar>(
    f: &ChainMap<T>,
    source: &DegreeHomology<T>,
    target: &DegreeHomology<T>,
) -> Result<SparseMatrix<T>> {
    let p = source.degree;
    let mut columns = Vec::with_capacity(source.betti);
    for z in &source.cycle_basis {
        let img = f.apply(p, z)?;
        columns.push(target.class_coordinates(&img)?.free);
    }
    Ok(SparseMatrix::from_columns(target.betti, &columns))
}

/// Whether an integer matrix is square with determinant ±1.
pub fn is_unimodular<T: Scalar>(m: &SparseMatrix<T>) -> bool {
    m.rows() == m.cols() && oracle::determinant(&m.to_dense()).abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::oriented_chains;
    use crate::label::Label;
    use crate::simplicial::{boundary_subcomplex, full_complex, int_labels, BoundaryMode, SimplicialComplex};
    use num_bigint::BigInt;

    type Z = BigInt;

    #[test]
    fn circle_homology() {
        let tb = boundary_subcomplex(&int_labels(0..3), BoundaryMode::Plain).unwrap();
        let h = full_homology(&oriented_chains::<Z>(&tb)).unwrap();
        assert_eq!(h.betti(), vec![(0, 1), (1, 1)]);
        assert!(h.get(1).unwrap().torsion.is_empty());
    }

    #[test]
    fn point_homology_of_full_complexes() {
        for n in [1, 4, 5] {
            let c = oriented_chains::<Z>(&full_complex(&int_labels(0..n)).unwrap());
            let h = full_homology(&c).unwrap();
            for (p, b) in h.betti() {
                assert_eq!(b, usize::from(p == 0), "n={n} p={p}");
            }
        }
    }

    #[test]
    fn projective_plane_has_two_torsion() {
        // 6-vertex triangulation of RP^2
        let faces = [
            [0, 1, 2],
            [0, 2, 3],
            [0, 3, 4],
            [0, 4, 5],
            [0, 5, 1],
            [1, 2, 4],
            [2, 3, 5],
            [3, 4, 1],
            [4, 5, 2],
            [5, 1, 3],
        ];
        let cx = SimplicialComplex::from_simplices(faces.iter().map(|f| f.iter().map(|&i| Label::Int(i)).collect()))
            .unwrap();
        let h = full_homology(&oriented_chains::<Z>(&cx)).unwrap();
        assert_eq!(h.get(1).unwrap().betti, 0);
        assert_eq!(h.get(1).unwrap().torsion, vec![Z::from(2)]);
        assert_eq!(h.get(2).unwrap().betti, 0);
        let (z, order) = &h.get(1).unwrap().torsion_cycles[0];
        assert_eq!(order, &Z::from(2));
        let coords = h.get(1).unwrap().class_coordinates(z).unwrap();
        assert_eq!(coords.torsion, vec![Z::from(1)]);
    }

    #[test]
    fn class_coordinates_basics() {
        let tb = boundary_subcomplex(&int_labels(0..4), BoundaryMode::Plain).unwrap();
        let c = oriented_chains::<Z>(&tb);
        let h = homology_degree(&c, 2).unwrap();
        assert_eq!(h.betti, 1);
        let zero = vec![Z::from(0); c.dim(2).unwrap()];
        assert_eq!(h.class_coordinates(&zero).unwrap().free, vec![Z::from(0)]);
        assert_eq!(h.class_coordinates(&h.cycle_basis[0]).unwrap().free, vec![Z::from(1)]);
        let mut not_cycle = zero.clone();
        not_cycle[0] = Z::from(1);
        assert!(matches!(h.class_coordinates(&not_cycle), Err(Error::NotACycle { .. })));
    }
}
