//! Finite complexes built from linear data: the Tits building `T(V)`, the
//! rank-bounded complexes `E*` and `U*`, general-position complexes, the
//! map `Y -> <Y>` and the action of `GL_n(F_q)`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::fq::{self, FqSubspace, GlMatrix};
use crate::label::Label;
use crate::simplicial::{
    face_poset, for_each_subset, induced_simplicial_map, order_complex, Poset, PosetMap, SimplicialComplex,
    SimplicialMap,
};
use crate::zlattice::{self, ZSubmodule};

/// Coefficients of the ambient module.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ring {
    Prime(i64),
    Integers,
}

impl Ring {
    pub fn rank(&self, vectors: &[Vec<i64>]) -> usize {
        match self {
            Ring::Prime(q) => fq::rank_mod(vectors, *q),
            Ring::Integers => zlattice::rank_q(vectors),
        }
    }
}

fn check_dims(n: usize, q: i64) -> Result<()> {
    if n < 2 {
        return Err(Error::invalid(format!("need n >= 2, got {n}")));
    }
    fq::check_prime(q)
}

fn vector_of(l: &Label) -> Result<&[i64]> {
    l.as_vector()
        .ok_or_else(|| Error::invalid(format!("{l} is not a vector label")))
}

fn vectors_of(set: &Label) -> Result<Vec<Vec<i64>>> {
    let items = set
        .as_set()
        .ok_or_else(|| Error::invalid(format!("{set} is not a set label")))?;
    items.iter().map(|l| vector_of(l).map(<[i64]>::to_vec)).collect()
}

/// Proper nonzero subspaces of `F_q^n` ordered by inclusion.
pub fn subspace_poset(n: usize, q: i64) -> Result<Poset> {
    check_dims(n, q)?;
    let mut elements = Vec::new();
    for d in 1..n {
        elements.extend(fq::enumerate_subspaces(n, q, d)?.iter().map(FqSubspace::label));
    }
    Ok(Poset::new(elements, move |a, b| subspace_leq(a, b, q)))
}

fn subspace_leq(a: &Label, b: &Label, q: i64) -> bool {
    match (a, b) {
        (Label::Subspace(x), Label::Subspace(y)) => {
            if x.len() > y.len() {
                return false;
            }
            let mut rows = y.clone();
            rows.extend(x.iter().cloned());
            fq::rank_mod(&rows, q) == y.len()
        }
        _ => false,
    }
}

#[derive(Clone, Debug)]
pub struct TitsBuilding {
    pub n: usize,
    pub q: i64,
    pub poset: Poset,
    pub complex: SimplicialComplex,
}

/// `T(F_q^n)`: flags of proper nonzero subspaces.
pub fn tits_building(n: usize, q: i64) -> Result<TitsBuilding> {
    let poset = subspace_poset(n, q)?;
    let complex = order_complex(&poset);
    Ok(TitsBuilding { n, q, poset, complex })
}

/// A complex whose simplices are vector sets of rank `< n`.
#[derive(Clone, Debug)]
pub struct RankBoundedComplex {
    pub n: usize,
    pub ring: Ring,
    pub complex: SimplicialComplex,
}

/// `E*(F_q^n)`: its facets are the nonzero vectors of each hyperplane.
pub fn estar_complex(n: usize, q: i64) -> Result<RankBoundedComplex> {
    check_dims(n, q)?;
    let vectors = fq::nonzero_vectors(n, q);
    let facets: Vec<Vec<Label>> = fq::enumerate_subspaces(n, q, n - 1)?
        .iter()
        .map(|h| {
            vectors
                .iter()
                .filter(|v| h.contains(v))
                .cloned()
                .map(Label::Vector)
                .collect()
        })
        .collect();
    let complex = SimplicialComplex::new(vectors.into_iter().map(Label::Vector), facets)?;
    Ok(RankBoundedComplex {
        n,
        ring: Ring::Prime(q),
        complex,
    })
}

/// `E*` over `Z^n` restricted to an explicit finite vertex set.
pub fn estar_z(vertices: &[Vec<i64>], n: usize) -> Result<RankBoundedComplex> {
    if n < 2 {
        return Err(Error::invalid(format!("need n >= 2, got {n}")));
    }
    let mut verts: Vec<Vec<i64>> = vertices.to_vec();
    verts.sort();
    verts.dedup();
    if verts.is_empty() {
        return Err(Error::invalid("empty vertex set"));
    }
    for v in &verts {
        if v.len() != n {
            return Err(Error::invalid(format!("vector {v:?} does not lie in Z^{n}")));
        }
        if v.iter().all(|&x| x == 0) {
            return Err(Error::invalid("zero vector is not a vertex"));
        }
    }
    let ring = Ring::Integers;
    let mut facets: BTreeSet<Vec<usize>> = BTreeSet::new();
    if ring.rank(&verts) < n {
        facets.insert((0..verts.len()).collect());
    } else {
        // maximal sets of rank < n: vertices inside the span of an
        // independent (n-1)-subset
        let idx: Vec<usize> = (0..verts.len()).collect();
        for_each_subset(&idx, n - 1, |s| {
            let base: Vec<Vec<i64>> = s.iter().map(|&i| verts[i].clone()).collect();
            if ring.rank(&base) < n - 1 {
                return;
            }
            let facet: Vec<usize> = idx
                .iter()
                .copied()
                .filter(|&j| {
                    let mut t = base.clone();
                    t.push(verts[j].clone());
                    ring.rank(&t) == n - 1
                })
                .collect();
            facets.insert(facet);
        });
    }
    let labels: Vec<Label> = verts.iter().cloned().map(Label::Vector).collect();
    let cells: Vec<Vec<Label>> = facets
        .iter()
        .map(|f| f.iter().map(|&i| labels[i].clone()).collect())
        .collect();
    let complex = SimplicialComplex::new(labels, cells)?;
    Ok(RankBoundedComplex { n, ring, complex })
}

/// `U*`: the `Z`-variant of `E*` on unimodular vertices only.
pub fn ustar_complex(vertices: &[Vec<i64>], n: usize) -> Result<RankBoundedComplex> {
    if let Some(bad) = vertices.iter().find(|v| !zlattice::is_unimodular(v)) {
        return Err(Error::NonUnimodularVertex(Label::Vector(bad.clone()).to_string()));
    }
    estar_z(vertices, n)
}

/// `GP(F_q^n)` and its frame skeleton `Fr = Sk^{n-1} GP`.
#[derive(Clone, Debug)]
pub struct GeneralPositionComplex {
    pub n: usize,
    pub q: i64,
    pub gp: SimplicialComplex,
    pub frame: SimplicialComplex,
}

impl GeneralPositionComplex {
    pub fn skeleton(&self, r: usize) -> SimplicialComplex {
        crate::simplicial::skeleton(&self.gp, r)
    }
}

pub fn gp_and_frame_complex(n: usize, q: i64) -> Result<GeneralPositionComplex> {
    check_dims(n, q)?;
    let vectors = fq::nonzero_vectors(n, q);
    let mut cells: Vec<Vec<usize>> = Vec::new();
    let mut current: Vec<usize> = Vec::new();
    extend_general(&vectors, n, q, 0, &mut current, &mut cells);
    let labels: Vec<Label> = vectors.iter().cloned().map(Label::Vector).collect();
    let gp = SimplicialComplex::new(
        labels.iter().cloned(),
        cells
            .iter()
            .map(|c| c.iter().map(|&i| labels[i].clone()).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    )?;
    let frame = crate::simplicial::skeleton(&gp, n - 1);
    Ok(GeneralPositionComplex { n, q, gp, frame })
}

fn extend_general(
    vectors: &[Vec<i64>],
    n: usize,
    q: i64,
    start: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let mut extended = false;
    for v in start..vectors.len() {
        // every subset of size <= n containing v must be independent; it
        // suffices to check the largest ones
        let k = current.len().min(n - 1);
        let mut ok = true;
        for_each_subset(current, k, |s| {
            if ok {
                let mut rows: Vec<Vec<i64>> = s.iter().map(|&i| vectors[i].clone()).collect();
                rows.push(vectors[v].clone());
                ok = fq::rank_mod(&rows, q) == rows.len();
            }
        });
        if ok {
            extended = true;
            current.push(v);
            extend_general(vectors, n, q, v + 1, current, out);
            current.pop();
        }
    }
    if !extended && !current.is_empty() {
        out.push(current.clone());
    }
}

/// `<Y>` over a field, `<Y>_sat` over `Z`, as a subspace label.
pub fn span_label(vectors: &[Vec<i64>], ring: Ring) -> Result<Label> {
    match ring {
        Ring::Prime(q) => fq::canonical_subspace(vectors, q).map(|s| s.label()),
        Ring::Integers => {
            let n = vectors.first().map_or(0, Vec::len);
            let m = ZSubmodule::new(vectors, n)?.saturation();
            if m.is_zero() {
                return Err(Error::invalid("span of the given vectors is zero"));
            }
            Ok(m.label())
        }
    }
}

fn ring_leq(a: &Label, b: &Label, ring: Ring) -> bool {
    match ring {
        Ring::Prime(q) => subspace_leq(a, b, q),
        Ring::Integers => match (a, b) {
            (Label::Subspace(x), Label::Subspace(y)) => {
                let n = y.first().or(x.first()).map_or(0, Vec::len);
                let (Ok(x), Ok(y)) = (ZSubmodule::new(x, n), ZSubmodule::new(y, n)) else {
                    return false;
                };
                y.contains_module(&x)
            }
            _ => false,
        },
    }
}

/// The map `Y -> <Y>` from the face poset of `E*` to subspaces (over
/// `F_q`: all proper subspaces; over `Z`: the pure submodules hit).
#[derive(Clone, Debug)]
pub struct ArMap {
    pub source: Poset,
    pub target: Poset,
    pub map: PosetMap,
}

pub fn ar_map(estar: &RankBoundedComplex) -> Result<ArMap> {
    let source = face_poset(&estar.complex);
    let images: Vec<Label> = source
        .elements()
        .iter()
        .map(|y| span_label(&vectors_of(y)?, estar.ring))
        .collect::<Result<_>>()?;
    let ring = estar.ring;
    let target = match ring {
        Ring::Prime(q) => subspace_poset(estar.n, q)?,
        Ring::Integers => Poset::new(images.iter().cloned(), move |a, b| ring_leq(a, b, ring)),
    };
    let map = images
        .iter()
        .map(|l| {
            target
                .index_of(l)
                .ok_or_else(|| Error::invalid(format!("{l} is not a proper subspace")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ArMap {
        source,
        target,
        map: PosetMap { map },
    })
}

/// `B(AR)`: the simplicial map `sd E* -> T` sending a vertex `Y` to `<Y>`.
pub fn ar_simplicial_map<'a>(
    sd_estar: &'a SimplicialComplex,
    tits: &'a SimplicialComplex,
    ring: Ring,
) -> Result<SimplicialMap<'a>> {
    let images: Vec<Label> = sd_estar
        .vertices()
        .iter()
        .map(|y| span_label(&vectors_of(y)?, ring))
        .collect::<Result<_>>()?;
    let lookup: std::collections::HashMap<&Label, &Label> = sd_estar.vertices().iter().zip(images.iter()).collect();
    induced_simplicial_map(sd_estar, tits, |l| lookup[l].clone())
}

/// `A` applied to every vertex label of `complex`.
pub fn gl_act_complex(a: &GlMatrix, complex: &SimplicialComplex) -> Result<SimplicialComplex> {
    complex.relabel(|l| a.apply_label(l))
}

/// The automorphism of `complex` induced by `A` (the complex must be
/// stable under `A`).
pub fn gl_automorphism<'a>(a: &GlMatrix, complex: &'a SimplicialComplex) -> Result<SimplicialMap<'a>> {
    induced_simplicial_map(complex, complex, |l| a.apply_label(l))
}
