//! Chain complexes over an exact scalar ring.
//!
//! A complex is materialized on a window of degrees `p_min..=p_max`. Each
//! side of the window is either *closed* (the groups beyond it vanish) or
//! *open* (the complex continues but was not materialized), which matters
//! for the graded-infinite tuple complexes.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::matrix::SparseMatrix;
use crate::scalar::{alternating, Scalar};
use crate::simplicial::{simplex_label, subdivision, SimplicialComplex, SimplicialMap};
use crate::snf::{self, SnfResult};

/// Basis element of a chain group: a sorted simplex or an ordered tuple of
/// vertex indices.
pub type Tag = Vec<usize>;

#[derive(Clone, Debug)]
pub struct ChainComplex<T> {
    p_min: usize,
    bases: Vec<Vec<Tag>>,
    index: Vec<HashMap<Tag, usize>>,
    // boundaries[k]: degree p_min + k -> p_min + k - 1; None when unknown
    boundaries: Vec<Option<SparseMatrix<T>>>,
    lower_closed: bool,
    upper_closed: bool,
}

impl<T: Scalar> ChainComplex<T> {
    /// Assembles a complex from bases and boundaries. `boundaries[k]` maps
    /// degree `p_min + k` to the degree below; for `k = 0` it must be `None`
    /// unless the lower side is closed.
    pub fn from_parts(
        p_min: usize,
        bases: Vec<Vec<Tag>>,
        boundaries: Vec<Option<SparseMatrix<T>>>,
        lower_closed: bool,
        upper_closed: bool,
    ) -> Result<Self> {
        if bases.len() != boundaries.len() {
            return Err(Error::DimensionMismatch("one boundary per degree".into()));
        }
        for (k, b) in boundaries.iter().enumerate() {
            match b {
                Some(m) => {
                    let below = if k == 0 { 0 } else { bases[k - 1].len() };
                    if m.cols() != bases[k].len() || m.rows() != below {
                        return Err(Error::DimensionMismatch(format!(
                            "boundary in degree {} has shape {}x{}",
                            p_min + k,
                            m.rows(),
                            m.cols()
                        )));
                    }
                }
                None if k > 0 => return Err(Error::DimensionMismatch("interior boundary missing".into())),
                None => {}
            }
        }
        let index = bases
            .iter()
            .map(|b| b.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect())
            .collect();
        Ok(ChainComplex {
            p_min,
            bases,
            index,
            boundaries,
            lower_closed,
            upper_closed,
        })
    }

    pub fn p_min(&self) -> usize {
        self.p_min
    }

    /// Top materialized degree (`p_min - 1` sentinel avoided: an empty
    /// window reports `p_min`).
    pub fn p_max(&self) -> usize {
        (self.p_min + self.bases.len()).saturating_sub(1).max(self.p_min)
    }

    pub fn is_materialized(&self, p: usize) -> bool {
        p >= self.p_min && p < self.p_min + self.bases.len()
    }

    /// Rank of `C_p`, or `None` if it lies on an open side of the window.
    pub fn dim(&self, p: usize) -> Option<usize> {
        if self.is_materialized(p) {
            Some(self.bases[p - self.p_min].len())
        } else if p < self.p_min {
            self.lower_closed.then_some(0)
        } else {
            self.upper_closed.then_some(0)
        }
    }

    pub fn basis(&self, p: usize) -> &[Tag] {
        if self.is_materialized(p) {
            &self.bases[p - self.p_min]
        } else {
            &[]
        }
    }

    pub fn basis_index(&self, p: usize, tag: &[usize]) -> Option<usize> {
        if self.is_materialized(p) {
            self.index[p - self.p_min].get(tag).copied()
        } else {
            None
        }
    }

    /// The boundary `C_p -> C_{p-1}`.
    pub fn boundary(&self, p: usize) -> Result<SparseMatrix<T>> {
        let cols = self.dim(p).ok_or(Error::DegreeOutOfWindow { degree: p })?;
        let rows = if p == 0 {
            0
        } else {
            self.dim(p - 1).ok_or(Error::DegreeOutOfWindow { degree: p - 1 })?
        };
        if self.is_materialized(p) {
            if let Some(m) = &self.boundaries[p - self.p_min] {
                return Ok(m.clone());
            }
            if p == self.p_min && (p == 0 || self.lower_closed) {
                return Ok(SparseMatrix::zeros(rows, cols));
            }
            return Err(Error::DegreeOutOfWindow { degree: p - 1 });
        }
        Ok(SparseMatrix::zeros(rows, cols))
    }

    /// `d_{p-1} d_p = 0` in every degree where both are known.
    pub fn boundary_squared_vanishes(&self) -> bool {
        (self.p_min + 1..=self.p_max()).all(|p| match (self.boundary(p - 1), self.boundary(p)) {
            (Ok(a), Ok(b)) => a.mul(&b).map(|m| m.is_zero()).unwrap_or(false),
            _ => true,
        })
    }

    /// Naive truncation `σ^{<= r}`: drops every degree above `r`.
    pub fn truncate_above(&self, r: usize) -> Self {
        let keep = if r < self.p_min {
            0
        } else {
            (r - self.p_min + 1).min(self.bases.len())
        };
        ChainComplex::from_parts(
            self.p_min,
            self.bases[..keep].to_vec(),
            self.boundaries[..keep].to_vec(),
            self.lower_closed,
            true,
        )
        .expect("truncation keeps shapes")
    }

    /// Sum of `(-1)^p rank C_p` over the window.
    pub fn euler_characteristic(&self) -> i64 {
        self.bases
            .iter()
            .enumerate()
            .map(|(k, b)| {
                let n = b.len() as i64;
                if (self.p_min + k).is_multiple_of(2) {
                    n
                } else {
                    -n
                }
            })
            .sum()
    }

    /// Quotient by a subcomplex whose tags are a subset of ours in every
    /// degree.
    pub fn quotient_by(&self, sub: &ChainComplex<T>) -> Result<ChainComplex<T>> {
        let degrees: Vec<usize> = (self.p_min..self.p_min + self.bases.len()).collect();
        let mut bases: Vec<Vec<Tag>> = Vec::new();
        for &p in &degrees {
            for t in sub.basis(p) {
                if self.basis_index(p, t).is_none() {
                    return Err(Error::NonExact(format!(
                        "tag {t:?} of degree {p} not in ambient complex"
                    )));
                }
            }
            bases.push(
                self.basis(p)
                    .iter()
                    .filter(|t| sub.basis_index(p, t).is_none())
                    .cloned()
                    .collect(),
            );
        }
        let mut boundaries = Vec::new();
        for (k, &p) in degrees.iter().enumerate() {
            let Ok(full) = self.boundary(p) else {
                boundaries.push(None);
                continue;
            };
            let rows = if k == 0 { 0 } else { bases[k - 1].len() };
            if k == 0 && full.rows() > 0 {
                boundaries.push(None);
                continue;
            }
            let row_map: HashMap<usize, usize> = if k == 0 {
                HashMap::new()
            } else {
                bases[k - 1]
                    .iter()
                    .enumerate()
                    .map(|(i, t)| (self.basis_index(p - 1, t).unwrap(), i))
                    .collect()
            };
            let full_t = full.transpose();
            let mut trip = Vec::new();
            for (j, t) in bases[k].iter().enumerate() {
                let col = self.basis_index(p, t).unwrap();
                for (r, v) in full_t.row(col) {
                    if let Some(&i) = row_map.get(r) {
                        trip.push((i, j, v.clone()));
                    }
                }
            }
            boundaries.push(Some(SparseMatrix::from_triplets(rows, bases[k].len(), trip)?));
        }
        ChainComplex::from_parts(self.p_min, bases, boundaries, self.lower_closed, self.upper_closed)
    }
}

/// Sign of the permutation sorting `items` (which must be distinct).
pub fn sort_sign(items: &[usize]) -> (Vec<usize>, bool) {
    let mut inversions = 0usize;
    for i in 0..items.len() {
        for j in i + 1..items.len() {
            if items[i] > items[j] {
                inversions += 1;
            }
        }
    }
    let mut sorted = items.to_vec();
    sorted.sort_unstable();
    (sorted, inversions % 2 == 1)
}

fn boundary_matrix<T: Scalar>(
    faces: &HashMap<Tag, usize>,
    rows: usize,
    cells: &[Tag],
    skip_missing: bool,
) -> Result<SparseMatrix<T>> {
    let mut trip = Vec::new();
    for (j, cell) in cells.iter().enumerate() {
        for i in 0..cell.len() {
            let mut face = cell.clone();
            face.remove(i);
            match faces.get(&face) {
                Some(&r) => trip.push((r, j, alternating::<T>(i))),
                None if skip_missing => {}
                None => return Err(Error::invalid(format!("face {face:?} missing"))),
            }
        }
    }
    SparseMatrix::from_triplets(rows, cells.len(), trip)
}

/// Oriented chain complex: `p`-simplices with sorted vertices, boundary
/// `sum (-1)^i` (delete the i-th vertex).
pub fn oriented_chains<T: Scalar>(complex: &SimplicialComplex) -> ChainComplex<T> {
    let bases = complex.all_simplices();
    chains_from_bases(bases)
}

/// Oriented chains of `sub`, tagged by the vertex indices of `ambient`.
pub fn oriented_chains_in<T: Scalar>(sub: &SimplicialComplex, ambient: &SimplicialComplex) -> Result<ChainComplex<T>> {
    let mut bases: Vec<Vec<Tag>> = Vec::new();
    for layer in sub.all_simplices() {
        let mut out = Vec::with_capacity(layer.len());
        for s in layer {
            let mut t = Vec::with_capacity(s.len());
            for v in s {
                t.push(
                    ambient
                        .index_of(sub.label(v))
                        .ok_or_else(|| Error::invalid(format!("vertex {} not in ambient complex", sub.label(v))))?,
                );
            }
            t.sort_unstable();
            out.push(t);
        }
        out.sort();
        bases.push(out);
    }
    Ok(chains_from_bases(bases))
}

fn chains_from_bases<T: Scalar>(bases: Vec<Vec<Tag>>) -> ChainComplex<T> {
    let mut boundaries = Vec::with_capacity(bases.len());
    for p in 0..bases.len() {
        if p == 0 {
            boundaries.push(Some(SparseMatrix::zeros(0, bases[0].len())));
        } else {
            let faces: HashMap<Tag, usize> = bases[p - 1].iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
            boundaries.push(Some(
                boundary_matrix(&faces, bases[p - 1].len(), &bases[p], false)
                    .expect("simplicial complexes are closed under faces"),
            ));
        }
    }
    ChainComplex::from_parts(0, bases, boundaries, true, true).expect("consistent shapes")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TupleMode {
    /// All tuples: `C_*(E(X))`.
    Full,
    /// Tuples of rank `< n`: `C_*(E*)`.
    Bounded,
    /// Tuples of rank exactly `n`: the quotient `C_*(E) / C_*(E*)`.
    Quotient,
}

/// Ordered-tuple chains on `vertex_count` vertices (repetitions allowed),
/// materialized on the degree window `window`. `rank` gives the rank of a
/// tuple's vertex set; `n` is the ambient dimension.
pub fn tuple_chains<T: Scalar, R>(
    vertex_count: usize,
    rank: R,
    n: usize,
    mode: TupleMode,
    window: std::ops::RangeInclusive<usize>,
    budget: Option<usize>,
) -> Result<ChainComplex<T>>
where
    R: Fn(&[usize]) -> usize,
{
    let (lo, hi) = (*window.start(), *window.end());
    if lo > hi {
        return Err(Error::invalid(format!("empty degree window {lo}..={hi}")));
    }
    let mut bases: Vec<Vec<Tag>> = Vec::new();
    for p in lo..=hi {
        let required = (vertex_count as u128).checked_pow(p as u32 + 1).unwrap_or(u128::MAX);
        if let Some(b) = budget {
            if required > b as u128 {
                return Err(Error::InstanceTooLarge {
                    required: usize::try_from(required).unwrap_or(usize::MAX),
                    budget: b,
                });
            }
        }
        let mut layer = Vec::new();
        let mut tuple = vec![0usize; p + 1];
        if vertex_count > 0 {
            loop {
                let keep = match mode {
                    TupleMode::Full => true,
                    TupleMode::Bounded => rank(&tuple) < n,
                    TupleMode::Quotient => rank(&tuple) == n,
                };
                if keep {
                    layer.push(tuple.clone());
                }
                // odometer, last coordinate fastest: lexicographic order
                let mut i = p + 1;
                loop {
                    if i == 0 {
                        break;
                    }
                    i -= 1;
                    tuple[i] += 1;
                    if tuple[i] < vertex_count {
                        break;
                    }
                    tuple[i] = 0;
                    if i == 0 {
                        i = usize::MAX;
                        break;
                    }
                }
                if i == usize::MAX {
                    break;
                }
            }
        }
        bases.push(layer);
    }
    let lower_closed = lo == 0 || (mode == TupleMode::Quotient && lo < n);
    let mut boundaries = Vec::new();
    for (k, p) in (lo..=hi).enumerate() {
        if k == 0 {
            boundaries.push(lower_closed.then(|| SparseMatrix::zeros(0, bases[0].len())));
            continue;
        }
        let faces: HashMap<Tag, usize> = bases[k - 1].iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        let skip = mode == TupleMode::Quotient;
        let _ = p;
        boundaries.push(Some(boundary_matrix(&faces, bases[k - 1].len(), &bases[k], skip)?));
    }
    ChainComplex::from_parts(lo, bases, boundaries, lower_closed, false)
}

/// A degreewise family of matrices `C_p -> D_p`.
#[derive(Clone, Debug)]
pub struct ChainMap<T> {
    pub p_min: usize,
    pub matrices: Vec<SparseMatrix<T>>,
}

impl<T: Scalar> ChainMap<T> {
    pub fn p_max(&self) -> usize {
        self.p_min + self.matrices.len().saturating_sub(1)
    }

    pub fn degree(&self, p: usize) -> Option<&SparseMatrix<T>> {
        if p >= self.p_min {
            self.matrices.get(p - self.p_min)
        } else {
            None
        }
    }

    pub fn apply(&self, p: usize, chain: &[T]) -> Result<Vec<T>> {
        let m = self.degree(p).ok_or(Error::DegreeOutOfWindow { degree: p })?;
        if m.cols() != chain.len() {
            return Err(Error::DimensionMismatch("chain length".into()));
        }
        Ok(m.mul_vec(chain))
    }

    /// Exact check of `d' f_p = f_{p-1} d` wherever both sides are defined.
    pub fn commutes(&self, source: &ChainComplex<T>, target: &ChainComplex<T>) -> bool {
        for p in self.p_min..=self.p_max() {
            let (Some(fp), Ok(d_src), Ok(d_tgt)) = (self.degree(p), source.boundary(p), target.boundary(p)) else {
                continue;
            };
            let lhs = d_tgt.mul(fp);
            let rhs = if p == 0 {
                Ok(SparseMatrix::zeros(0, fp.cols()))
            } else {
                match self.degree(p - 1) {
                    Some(fq) => fq.mul(&d_src),
                    None if d_tgt.rows() == 0 => Ok(SparseMatrix::zeros(0, fp.cols())),
                    None => continue,
                }
            };
            match (lhs, rhs) {
                (Ok(a), Ok(b)) if a == b => {}
                _ => return false,
            }
        }
        true
    }

    pub fn compose(&self, after: &ChainMap<T>) -> Result<ChainMap<T>> {
        let lo = self.p_min.max(after.p_min);
        let hi = self.p_max().min(after.p_max());
        let mut matrices = Vec::new();
        for p in lo..=hi {
            matrices.push(after.degree(p).unwrap().mul(self.degree(p).unwrap())?);
        }
        Ok(ChainMap { p_min: lo, matrices })
    }
}

/// Image of one oriented simplex under a simplicial map: `None` when it
/// degenerates, otherwise the sorted target simplex and whether the sign
/// is negative.
pub fn push_simplex(map: &SimplicialMap<'_>, simplex: &[usize]) -> Option<(Tag, bool)> {
    let img: Vec<usize> = simplex.iter().map(|&v| map.vertex_map[v]).collect();
    let (sorted, neg) = sort_sign(&img);
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((sorted, neg))
}

/// Pushes a degree-`p` chain of `Or(source)` forward along `map`.
pub fn push_chain<T: Scalar>(
    map: &SimplicialMap<'_>,
    source: &ChainComplex<T>,
    target: &ChainComplex<T>,
    p: usize,
    chain: &[T],
) -> Result<Vec<T>> {
    let mut out = vec![T::zero(); target.dim(p).unwrap_or(0)];
    for (j, c) in chain.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if let Some((tag, neg)) = push_simplex(map, &source.basis(p)[j]) {
            let i = target.basis_index(p, &tag).ok_or_else(|| Error::NotSimplicial {
                simplex: format!("{tag:?}"),
            })?;
            out[i] = if neg {
                out[i].clone() - c.clone()
            } else {
                out[i].clone() + c.clone()
            };
        }
    }
    Ok(out)
}

/// Chain map `Or(source) -> Or(target)` of a simplicial map; degenerate
/// images die.
pub fn induced_chain_map<T: Scalar>(map: &SimplicialMap<'_>) -> ChainMap<T> {
    let src = map.source.all_simplices();
    let tgt = map.target.all_simplices();
    let mut matrices = Vec::new();
    for (p, layer) in src.iter().enumerate() {
        let tindex: HashMap<&Tag, usize> = tgt
            .get(p)
            .map(|l| l.iter().enumerate().map(|(i, t)| (t, i)).collect())
            .unwrap_or_default();
        let rows = tgt.get(p).map_or(0, Vec::len);
        let mut trip = Vec::new();
        for (j, s) in layer.iter().enumerate() {
            if let Some((tag, neg)) = push_simplex(map, s) {
                let i = tindex[&tag];
                trip.push((i, j, if neg { -T::one() } else { T::one() }));
            }
        }
        matrices.push(SparseMatrix::from_triplets(rows, layer.len(), trip).expect("in range"));
    }
    ChainMap { p_min: 0, matrices }
}

/// Barycentric subdivision operator `sd_#: Or(Γ) -> Or(sd Γ)`.
///
/// `sd_#(v) = {v}` and `sd_#(σ) = b_σ * sd_#(∂σ)`, where the cone puts the
/// barycenter vertex `b_σ` first: `∂(b * c) = c - b * ∂c`.
pub struct SubdivisionOperator<T> {
    pub subdivided: SimplicialComplex,
    pub chains: ChainMap<T>,
}

pub fn subdivision_chain_operator<T: Scalar>(complex: &SimplicialComplex) -> SubdivisionOperator<T> {
    let sd = subdivision(complex);
    let sd_bases = sd.all_simplices();
    let sd_index: Vec<HashMap<&Tag, usize>> = sd_bases
        .iter()
        .map(|l| l.iter().enumerate().map(|(i, t)| (t, i)).collect())
        .collect();
    let bases = complex.all_simplices();
    // images[p][j]: sd_# of the j-th p-simplex as sparse chain in sd degree p
    let mut images: Vec<Vec<BTreeMap<usize, T>>> = Vec::new();
    for (p, layer) in bases.iter().enumerate() {
        let mut layer_images = Vec::with_capacity(layer.len());
        let lower_index: HashMap<&Tag, usize> = if p > 0 {
            bases[p - 1].iter().enumerate().map(|(i, t)| (t, i)).collect()
        } else {
            HashMap::new()
        };
        for s in layer {
            let b = sd.index_of(&simplex_label(complex, s)).expect("barycenter vertex");
            let mut img: BTreeMap<usize, T> = BTreeMap::new();
            if p == 0 {
                img.insert(sd_index[0][&vec![b]], T::one());
            } else {
                for i in 0..s.len() {
                    let mut face = s.clone();
                    face.remove(i);
                    let sign = alternating::<T>(i);
                    let face_img = &images[p - 1][lower_index[&face]];
                    for (tau, coef) in face_img {
                        let mut tuple = Vec::with_capacity(p + 1);
                        tuple.push(b);
                        tuple.extend_from_slice(&sd_bases[p - 1][*tau]);
                        let (sorted, neg) = sort_sign(&tuple);
                        let k = sd_index[p][&sorted];
                        let mut c = sign.clone() * coef.clone();
                        if neg {
                            c = -c;
                        }
                        let slot = img.entry(k).or_insert_with(T::zero);
                        *slot = slot.clone() + c;
                    }
                }
                img.retain(|_, v| !v.is_zero());
            }
            layer_images.push(img);
        }
        images.push(layer_images);
    }
    let matrices = images
        .iter()
        .enumerate()
        .map(|(p, layer)| {
            let trip = layer
                .iter()
                .enumerate()
                .flat_map(|(j, img)| img.iter().map(move |(i, v)| (*i, j, v.clone())));
            SparseMatrix::from_triplets(sd_bases[p].len(), layer.len(), trip).expect("in range")
        })
        .collect();
    SubdivisionOperator {
        subdivided: sd,
        chains: ChainMap { p_min: 0, matrices },
    }
}

/// A degreewise split short exact sequence `0 -> S -> C -> Q -> 0` in
/// which `S` and `Q` carry subsets of the tags of `C`.
#[derive(Clone, Debug)]
pub struct ShortExactSequence<T> {
    pub sub: ChainComplex<T>,
    pub total: ChainComplex<T>,
    pub quotient: ChainComplex<T>,
    pub inclusion: ChainMap<T>,
    pub projection: ChainMap<T>,
}

impl<T: Scalar> ShortExactSequence<T> {
    pub fn split(sub: ChainComplex<T>, total: ChainComplex<T>, quotient: ChainComplex<T>) -> Result<Self> {
        let lo = total.p_min();
        let hi = total.p_max();
        let mut inc = Vec::new();
        let mut proj = Vec::new();
        for p in lo..=hi {
            let mut it = Vec::new();
            for (j, t) in sub.basis(p).iter().enumerate() {
                let i = total
                    .basis_index(p, t)
                    .ok_or_else(|| Error::NonExact(format!("sub tag {t:?} missing in degree {p}")))?;
                it.push((i, j, T::one()));
            }
            inc.push(SparseMatrix::from_triplets(
                total.basis(p).len(),
                sub.basis(p).len(),
                it,
            )?);
            let mut pt = Vec::new();
            for (j, t) in total.basis(p).iter().enumerate() {
                if let Some(i) = quotient.basis_index(p, t) {
                    pt.push((i, j, T::one()));
                }
            }
            proj.push(SparseMatrix::from_triplets(
                quotient.basis(p).len(),
                total.basis(p).len(),
                pt,
            )?);
        }
        let ses = ShortExactSequence {
            sub,
            total,
            quotient,
            inclusion: ChainMap {
                p_min: lo,
                matrices: inc,
            },
            projection: ChainMap {
                p_min: lo,
                matrices: proj,
            },
        };
        for p in lo..=hi {
            ses.verify_exact(p)?;
        }
        Ok(ses)
    }

    /// Degreewise exactness: `i` injective with saturated image, `π`
    /// surjective, `π i = 0` and ranks adding up.
    pub fn verify_exact(&self, p: usize) -> Result<()> {
        let i = self.inclusion.degree(p).ok_or(Error::DegreeOutOfWindow { degree: p })?;
        let q = self
            .projection
            .degree(p)
            .ok_or(Error::DegreeOutOfWindow { degree: p })?;
        if !q.mul(i)?.is_zero() {
            return Err(Error::NonExact(format!(
                "projection after inclusion nonzero in degree {p}"
            )));
        }
        let si = snf::smith_normal_form(i)?;
        let sq = snf::smith_normal_form(q)?;
        let unit = |s: &SnfResult<T>| s.invariants.iter().all(|d| d.is_one());
        if si.rank() != i.cols() || !unit(&si) {
            return Err(Error::NonExact(format!(
                "inclusion not a split injection in degree {p}"
            )));
        }
        if sq.rank() != q.rows() || !unit(&sq) {
            return Err(Error::NonExact(format!("projection not surjective in degree {p}")));
        }
        if i.cols() + q.rows() != i.rows() {
            return Err(Error::NonExact(format!("ranks do not add up in degree {p}")));
        }
        Ok(())
    }

    /// Connecting map `H_p(Q) -> H_{p-1}(S)` at chain level.
    pub fn connecting(&self, p: usize) -> Result<ConnectingMap<'_, T>> {
        if p == 0 {
            return Err(Error::DegreeOutOfWindow { degree: 0 });
        }
        self.verify_exact(p)?;
        self.verify_exact(p - 1)?;
        let proj = snf::smith_normal_form(self.projection.degree(p).unwrap())?;
        let incl = snf::smith_normal_form(self.inclusion.degree(p - 1).unwrap())?;
        Ok(ConnectingMap {
            ses: self,
            p,
            proj,
            incl,
        })
    }
}

pub struct ConnectingMap<'a, T> {
    ses: &'a ShortExactSequence<T>,
    p: usize,
    proj: SnfResult<T>,
    incl: SnfResult<T>,
}

impl<T: Scalar> ConnectingMap<'_, T> {
    pub fn degree(&self) -> usize {
        self.p
    }

    /// Some preimage of `z` under the projection.
    pub fn lift(&self, z: &[T]) -> Result<Vec<T>> {
        snf::solve(&self.proj, z).ok_or_else(|| Error::NonExact("chain has no lift".into()))
    }

    /// Zig-zag from a chosen lift `x`: `i^{-1}(∂x)`.
    pub fn from_lift(&self, x: &[T]) -> Result<Vec<T>> {
        let dx = self.ses.total.boundary(self.p)?.mul_vec(x);
        snf::solve(&self.incl, &dx).ok_or_else(|| Error::NonExact("boundary of lift is not in the subcomplex".into()))
    }

    /// Image of the quotient cycle `z` in the chains of the subcomplex.
    pub fn apply(&self, z: &[T]) -> Result<Vec<T>> {
        let dz = self.ses.quotient.boundary(self.p)?.mul_vec(z);
        if dz.iter().any(|v| !v.is_zero()) {
            return Err(Error::NotACycle { degree: self.p });
        }
        self.from_lift(&self.lift(z)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::Label;
    use crate::simplicial::{boundary_subcomplex, full_complex, induced_simplicial_map, int_labels, BoundaryMode};
    use num_bigint::BigInt;
    use num_traits::Zero;

    type Z = BigInt;

    fn z(v: i64) -> Z {
        Z::from(v)
    }

    #[test]
    fn triangle_boundary_squares_to_zero() {
        let tb = boundary_subcomplex(&int_labels(0..3), BoundaryMode::Plain).unwrap();
        let c = oriented_chains::<Z>(&tb);
        assert!(c.boundary_squared_vanishes());
        assert_eq!(c.dim(0), Some(3));
        assert_eq!(c.dim(1), Some(3));
        assert_eq!(c.dim(2), Some(0));
        assert_eq!(c.euler_characteristic(), 0);
    }

    #[test]
    fn tuple_quotient_ranks_for_f2_plane() {
        // nonzero vectors of F_2^2: 3; any two distinct are independent
        let rank = |t: &[usize]| {
            let mut s = t.to_vec();
            s.sort_unstable();
            s.dedup();
            s.len().min(2)
        };
        let c = tuple_chains::<Z, _>(3, rank, 2, TupleMode::Quotient, 0..=2, None).unwrap();
        assert_eq!(c.dim(0), Some(0));
        assert_eq!(c.dim(1), Some(6));
        assert_eq!(c.dim(2), Some(24));
        assert!(c.boundary_squared_vanishes());
        let full = tuple_chains::<Z, _>(3, rank, 2, TupleMode::Full, 0..=2, None).unwrap();
        assert_eq!(full.dim(2), Some(27));
        assert!(matches!(
            tuple_chains::<Z, _>(3, rank, 2, TupleMode::Full, 0..=2, Some(10)),
            Err(Error::InstanceTooLarge {
                required: 27,
                budget: 10
            })
        ));
        assert!(tuple_chains::<Z, _>(3, rank, 2, TupleMode::Full, 2..=1, None).is_err());
    }

    #[test]
    fn subdivision_operator_on_edge() {
        let edge = full_complex(&int_labels(0..2)).unwrap();
        let op = subdivision_chain_operator::<Z>(&edge);
        let sd_c = oriented_chains::<Z>(&op.subdivided);
        let img = op.chains.apply(1, &[z(1)]).unwrap();
        let d = sd_c.boundary(1).unwrap().mul_vec(&img);
        let v0 = op.subdivided.index_of(&Label::set([Label::Int(0)])).unwrap();
        let v1 = op.subdivided.index_of(&Label::set([Label::Int(1)])).unwrap();
        let mut expect = vec![z(0); 3];
        expect[v1] = z(1);
        expect[v0] = z(-1);
        assert_eq!(d, expect);
        assert!(op.chains.commutes(&oriented_chains(&edge), &sd_c));
    }

    #[test]
    fn vertex_subdivides_to_itself() {
        let pt = full_complex(&int_labels(0..1)).unwrap();
        let op = subdivision_chain_operator::<Z>(&pt);
        assert_eq!(op.chains.apply(0, &[z(1)]).unwrap(), vec![z(1)]);
    }

    #[test]
    fn collapse_kills_degenerate_edge() {
        let src = full_complex(&int_labels(0..3)).unwrap();
        let tgt = full_complex(&int_labels(0..2)).unwrap();
        let f = induced_simplicial_map(&src, &tgt, |l| match l {
            Label::Int(2) => Label::Int(1),
            o => o.clone(),
        })
        .unwrap();
        let cm = induced_chain_map::<Z>(&f);
        let src_c = oriented_chains::<Z>(&src);
        let e12 = src_c.basis_index(1, &[1, 2]).unwrap();
        assert!(cm.degree(1).unwrap().column(e12).iter().all(|v| v.is_zero()));
        assert!(cm.commutes(&src_c, &oriented_chains(&tgt)));
        let id = induced_simplicial_map(&src, &src, |l| l.clone()).unwrap();
        let idm = induced_chain_map::<Z>(&id);
        for p in 0..=2 {
            let n = src_c.dim(p).unwrap();
            assert_eq!(idm.degree(p).unwrap(), &SparseMatrix::identity(n));
        }
    }

    #[test]
    fn connecting_map_of_edge_pair() {
        let s = int_labels(0..2);
        let total = full_complex(&s).unwrap();
        let sub_cx = boundary_subcomplex(&s, BoundaryMode::Plain).unwrap();
        let t = oriented_chains::<Z>(&total);
        let sub = oriented_chains_in::<Z>(&sub_cx, &total).unwrap();
        let q = t.quotient_by(&sub).unwrap();
        let ses = ShortExactSequence::split(sub, t, q).unwrap();
        let delta = ses.connecting(1).unwrap();
        let img = delta.apply(&[z(1)]).unwrap();
        assert_eq!(img, vec![z(-1), z(1)]);
    }

    #[test]
    fn nonexact_triple_is_rejected() {
        let s = int_labels(0..2);
        let total = full_complex(&s).unwrap();
        let t = oriented_chains::<Z>(&total);
        let sub = t.truncate_above(0);
        // quotient that forgets nothing: ranks cannot add up
        let res = ShortExactSequence::split(sub, t.clone(), t);
        assert!(matches!(res, Err(Error::NonExact(_))));
    }
}
