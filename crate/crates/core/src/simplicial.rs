//! Finite abstract simplicial complexes, posets, and the functors between
//! them: the full complex on a set, the order complex of a poset, the face
//! poset of a complex, barycentric subdivision, skeleta and boundaries.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::label::Label;

/// A finite abstract simplicial complex, stored by its facets.
///
/// Vertices are kept sorted by label; a simplex is a sorted list of vertex
/// indices, so index order and label order agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<Label>,
    index: HashMap<Label, usize>,
    facets: Vec<Vec<usize>>,
    // vertex -> facets containing it
    star: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    /// Builds the downward closure of `simplices` over the given vertex set.
    /// Vertices not covered by any simplex become isolated points.
    pub fn new<V, S>(vertices: V, simplices: S) -> Result<Self>
    where
        V: IntoIterator<Item = Label>,
        S: IntoIterator<Item = Vec<Label>>,
    {
        let mut verts: Vec<Label> = vertices.into_iter().collect();
        verts.sort();
        verts.dedup();
        let index: HashMap<Label, usize> = verts.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
        let mut cells: Vec<Vec<usize>> = Vec::new();
        for s in simplices {
            if s.is_empty() {
                return Err(Error::invalid("empty simplex"));
            }
            let mut idx = s
                .iter()
                .map(|l| {
                    index
                        .get(l)
                        .copied()
                        .ok_or_else(|| Error::invalid(format!("simplex uses unknown vertex {l}")))
                })
                .collect::<Result<Vec<_>>>()?;
            idx.sort_unstable();
            idx.dedup();
            cells.push(idx);
        }
        cells.extend((0..verts.len()).map(|i| vec![i]));
        Ok(Self::from_cells(verts, index, cells))
    }

    /// Builds a complex from simplices given by labels; the vertex set is
    /// their union.
    pub fn from_simplices<S>(simplices: S) -> Result<Self>
    where
        S: IntoIterator<Item = Vec<Label>>,
    {
        let simplices: Vec<Vec<Label>> = simplices.into_iter().collect();
        let verts: Vec<Label> = simplices.iter().flatten().cloned().collect();
        Self::new(verts, simplices)
    }

    fn from_cells(vertices: Vec<Label>, index: HashMap<Label, usize>, mut cells: Vec<Vec<usize>>) -> Self {
        cells.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        cells.dedup();
        let mut star: Vec<Vec<usize>> = vec![Vec::new(); vertices.len()];
        let mut facets: Vec<Vec<usize>> = Vec::new();
        for c in cells {
            let covered = star[c[0]].iter().any(|&f| is_subset(&c, &facets[f]));
            if !covered {
                for &v in &c {
                    star[v].push(facets.len());
                }
                facets.push(c);
            }
        }
        // canonical facet order: lexicographic
        let mut order: Vec<usize> = (0..facets.len()).collect();
        order.sort_by(|&a, &b| facets[a].cmp(&facets[b]));
        let mut rank = vec![0; facets.len()];
        for (new, &old) in order.iter().enumerate() {
            rank[old] = new;
        }
        let facets: Vec<Vec<usize>> = order.iter().map(|&i| facets[i].clone()).collect();
        for s in &mut star {
            for f in s.iter_mut() {
                *f = rank[*f];
            }
            s.sort_unstable();
        }
        SimplicialComplex {
            vertices,
            index,
            facets,
            star,
        }
    }

    pub fn vertices(&self) -> &[Label] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn label(&self, v: usize) -> &Label {
        &self.vertices[v]
    }

    pub fn index_of(&self, l: &Label) -> Option<usize> {
        self.index.get(l).copied()
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Largest simplex cardinality minus one (0 for the empty complex).
    pub fn dim(&self) -> usize {
        self.facets.iter().map(Vec::len).max().unwrap_or(1) - 1
    }

    /// Membership test for a sorted list of vertex indices.
    pub fn contains(&self, simplex: &[usize]) -> bool {
        match simplex.first() {
            None => false,
            Some(&v) if v < self.vertices.len() => self.star[v].iter().any(|&f| is_subset(simplex, &self.facets[f])),
            Some(_) => false,
        }
    }

    /// Membership test by labels (any order).
    pub fn contains_labels(&self, labels: &[Label]) -> bool {
        let mut idx = Vec::with_capacity(labels.len());
        for l in labels {
            match self.index_of(l) {
                Some(i) => idx.push(i),
                None => return false,
            }
        }
        idx.sort_unstable();
        idx.dedup();
        self.contains(&idx)
    }

    /// All `p`-simplices, sorted lexicographically.
    pub fn simplices(&self, p: usize) -> Vec<Vec<usize>> {
        let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
        for f in &self.facets {
            if f.len() > p {
                for_each_subset(f, p + 1, |s| {
                    out.insert(s.to_vec());
                });
            }
        }
        out.into_iter().collect()
    }

    /// All simplices grouped by dimension.
    pub fn all_simplices(&self) -> Vec<Vec<Vec<usize>>> {
        if self.is_empty() {
            return Vec::new();
        }
        (0..=self.dim()).map(|p| self.simplices(p)).collect()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.all_simplices().iter().map(Vec::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(p, &n)| if p % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    pub fn simplex_labels(&self, simplex: &[usize]) -> Vec<Label> {
        simplex.iter().map(|&v| self.vertices[v].clone()).collect()
    }

    /// Facets as label lists.
    pub fn facet_labels(&self) -> Vec<Vec<Label>> {
        self.facets.iter().map(|f| self.simplex_labels(f)).collect()
    }

    /// Exhaustive check of downward closure over the enumerated simplices.
    pub fn is_downward_closed(&self) -> bool {
        let all = self.all_simplices();
        let sets: Vec<BTreeSet<&Vec<usize>>> = all.iter().map(|l| l.iter().collect()).collect();
        for (p, layer) in all.iter().enumerate() {
            for s in layer {
                if !self.contains(s) {
                    return false;
                }
                if p > 0 {
                    for i in 0..s.len() {
                        let mut face = s.clone();
                        face.remove(i);
                        if !sets[p - 1].contains(&face) {
                            return false;
                        }
                    }
                }
            }
        }
        all.first().is_none_or(|v| v.len() == self.vertices.len())
    }

    /// Applies an injective relabelling of vertices.
    pub fn relabel<F: Fn(&Label) -> Label>(&self, f: F) -> Result<Self> {
        let new_labels: Vec<Label> = self.vertices.iter().map(&f).collect();
        let distinct: BTreeSet<&Label> = new_labels.iter().collect();
        if distinct.len() != new_labels.len() {
            return Err(Error::invalid("relabelling is not injective"));
        }
        let facets = self
            .facets
            .iter()
            .map(|fct| fct.iter().map(|&v| new_labels[v].clone()).collect());
        SimplicialComplex::new(new_labels.clone(), facets)
    }

    /// The subcomplex of simplices all of whose vertices satisfy `keep`.
    pub fn full_subcomplex<F: Fn(&Label) -> bool>(&self, keep: F) -> Self {
        let keep_v: Vec<bool> = self.vertices.iter().map(&keep).collect();
        let verts: Vec<Label> = self
            .vertices
            .iter()
            .zip(&keep_v)
            .filter(|(_, k)| **k)
            .map(|(l, _)| l.clone())
            .collect();
        let cells = self.facets.iter().filter_map(|f| {
            let s: Vec<Label> = f
                .iter()
                .filter(|&&v| keep_v[v])
                .map(|&v| self.vertices[v].clone())
                .collect();
            (!s.is_empty()).then_some(s)
        });
        SimplicialComplex::new(verts, cells.collect::<Vec<_>>()).expect("subcomplex of a valid complex")
    }
}

pub(crate) fn is_subset(a: &[usize], b: &[usize]) -> bool {
    // both sorted
    let mut j = 0;
    for x in a {
        while j < b.len() && b[j] < *x {
            j += 1;
        }
        if j == b.len() || b[j] != *x {
            return false;
        }
        j += 1;
    }
    true
}

/// Calls `f` on every `k`-subset of the sorted slice `items`, in
/// lexicographic order.
pub(crate) fn for_each_subset<F: FnMut(&[usize])>(items: &[usize], k: usize, mut f: F) {
    fn rec<F: FnMut(&[usize])>(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, f: &mut F) {
        if cur.len() == k {
            f(cur);
            return;
        }
        let need = k - cur.len();
        for i in start..=items.len().saturating_sub(need) {
            if items.len() < need {
                break;
            }
            cur.push(items[i]);
            rec(items, k, i + 1, cur, f);
            cur.pop();
        }
    }
    if k == 0 || k > items.len() {
        return;
    }
    let mut cur = Vec::with_capacity(k);
    rec(items, k, 0, &mut cur, &mut f);
}

/// A finite poset with its order relation tabulated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    elements: Vec<Label>,
    index: HashMap<Label, usize>,
    leq: Vec<bool>,
}

impl Poset {
    /// Tabulates `leq` over the (sorted, deduplicated) elements. The relation
    /// is not validated; see [`Poset::checked`].
    pub fn new<F>(elements: impl IntoIterator<Item = Label>, leq: F) -> Self
    where
        F: Fn(&Label, &Label) -> bool,
    {
        let mut elements: Vec<Label> = elements.into_iter().collect();
        elements.sort();
        elements.dedup();
        let n = elements.len();
        let mut table = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = i == j || leq(&elements[i], &elements[j]);
            }
        }
        let index = elements.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
        Poset {
            elements,
            index,
            leq: table,
        }
    }

    /// Like [`Poset::new`], rejecting relations that are not partial orders.
    pub fn checked<F>(elements: impl IntoIterator<Item = Label>, leq: F) -> Result<Self>
    where
        F: Fn(&Label, &Label) -> bool,
    {
        let p = Self::new(elements, leq);
        if p.is_partial_order() {
            Ok(p)
        } else {
            Err(Error::invalid("relation is not a partial order"))
        }
    }

    /// The chain `labels[0] < labels[1] < ...`.
    pub fn total_order(labels: &[Label]) -> Self {
        let pos: HashMap<&Label, usize> = labels.iter().enumerate().map(|(i, l)| (l, i)).collect();
        Self::new(labels.iter().cloned(), |a, b| pos[a] <= pos[b])
    }

    pub fn antichain(labels: &[Label]) -> Self {
        Self::new(labels.iter().cloned(), |a, b| a == b)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Label] {
        &self.elements
    }

    pub fn index_of(&self, l: &Label) -> Option<usize> {
        self.index.get(l).copied()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.elements.len() + j]
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    /// Exhaustive reflexivity, antisymmetry and transitivity check.
    pub fn is_partial_order(&self) -> bool {
        let n = self.len();
        for i in 0..n {
            if !self.leq(i, i) {
                return false;
            }
            for j in 0..n {
                if i != j && self.leq(i, j) && self.leq(j, i) {
                    return false;
                }
                if self.leq(i, j) {
                    for k in 0..n {
                        if self.leq(j, k) && !self.leq(i, k) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Covering relation: `covers[i]` lists `j` with `i < j` and nothing
    /// strictly between.
    fn covers(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| self.lt(i, j) && !(0..n).any(|k| self.lt(i, k) && self.lt(k, j)))
                    .collect()
            })
            .collect()
    }

    /// All maximal chains, each listed bottom to top.
    pub fn maximal_chains(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let covers = self.covers();
        let minimal: Vec<usize> = (0..n).filter(|&j| !(0..n).any(|i| self.lt(i, j))).collect();
        let mut out = Vec::new();
        let mut stack: Vec<Vec<usize>> = minimal.into_iter().map(|m| vec![m]).collect();
        while let Some(chain) = stack.pop() {
            let top = *chain.last().unwrap();
            if covers[top].is_empty() {
                out.push(chain);
            } else {
                for &next in covers[top].iter().rev() {
                    let mut c = chain.clone();
                    c.push(next);
                    stack.push(c);
                }
            }
        }
        out.sort();
        out
    }

    /// Whether the listed elements form a chain.
    pub fn is_chain(&self, items: &[usize]) -> bool {
        items
            .iter()
            .enumerate()
            .all(|(a, &i)| items[a + 1..].iter().all(|&j| self.leq(i, j) || self.leq(j, i)))
    }
}

/// An order-preserving map between finite posets, by element index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetMap {
    pub map: Vec<usize>,
}

impl PosetMap {
    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    /// Exhaustive monotonicity check.
    pub fn is_order_preserving(&self, source: &Poset, target: &Poset) -> bool {
        let n = source.len();
        self.map.len() == n && (0..n).all(|i| (0..n).all(|j| !source.leq(i, j) || target.leq(self.map[i], self.map[j])))
    }
}

/// A validated vertex map between complexes.
#[derive(Clone, Debug)]
pub struct SimplicialMap<'a> {
    pub source: &'a SimplicialComplex,
    pub target: &'a SimplicialComplex,
    pub vertex_map: Vec<usize>,
}

impl<'a> SimplicialMap<'a> {
    /// Image of a simplex as a sorted, deduplicated target simplex.
    pub fn image(&self, simplex: &[usize]) -> Vec<usize> {
        let mut img: Vec<usize> = simplex.iter().map(|&v| self.vertex_map[v]).collect();
        img.sort_unstable();
        img.dedup();
        img
    }
}

/// `E(X)`: every nonempty subset of `x` is a simplex.
pub fn full_complex(x: &[Label]) -> Result<SimplicialComplex> {
    if x.is_empty() {
        return Err(Error::invalid("full complex of the empty set"));
    }
    SimplicialComplex::new(x.iter().cloned(), [x.to_vec()])
}

/// `B(P)`: simplices are the nonempty chains of `poset`.
pub fn order_complex(poset: &Poset) -> SimplicialComplex {
    let chains = poset
        .maximal_chains()
        .into_iter()
        .map(|c| c.into_iter().map(|i| poset.elements()[i].clone()).collect::<Vec<_>>());
    SimplicialComplex::new(poset.elements().iter().cloned(), chains.collect::<Vec<_>>())
        .expect("chains use poset elements")
}

/// Label of the vertex of a subdivision corresponding to a simplex.
pub fn simplex_label(complex: &SimplicialComplex, simplex: &[usize]) -> Label {
    Label::set(complex.simplex_labels(simplex))
}

/// Simplices of `complex` ordered by inclusion; elements are set labels.
pub fn face_poset(complex: &SimplicialComplex) -> Poset {
    let elements = complex
        .all_simplices()
        .into_iter()
        .flatten()
        .map(|s| simplex_label(complex, &s));
    Poset::new(elements, |a, b| match (a.as_set(), b.as_set()) {
        (Some(x), Some(y)) => x.iter().all(|l| y.binary_search(l).is_ok()),
        _ => false,
    })
}

/// Barycentric subdivision, `sd = B ∘ Simpl`.
pub fn subdivision(complex: &SimplicialComplex) -> SimplicialComplex {
    order_complex(&face_poset(complex))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundaryMode {
    /// All nonempty proper subsets of `S` as simplices.
    Plain,
    /// Full subcomplex of `sd E(S)` on the proper subsets.
    Subdivided,
}

pub fn boundary_subcomplex(s: &[Label], mode: BoundaryMode) -> Result<SimplicialComplex> {
    let mut s: Vec<Label> = s.to_vec();
    s.sort();
    s.dedup();
    if s.len() < 2 {
        return Err(Error::invalid("boundary needs at least two vertices"));
    }
    match mode {
        BoundaryMode::Plain => {
            let facets = (0..s.len()).map(|skip| {
                s.iter()
                    .enumerate()
                    .filter(|(i, _)| *i != skip)
                    .map(|(_, l)| l.clone())
                    .collect()
            });
            SimplicialComplex::new(s.iter().cloned(), facets.collect::<Vec<Vec<Label>>>())
        }
        BoundaryMode::Subdivided => {
            let sd = subdivision(&full_complex(&s)?);
            let total = s.len();
            Ok(sd.full_subcomplex(|l| l.as_set().is_some_and(|v| v.len() < total)))
        }
    }
}

/// `Sk^r`: same vertices, simplices of dimension at most `r`.
pub fn skeleton(complex: &SimplicialComplex, r: usize) -> SimplicialComplex {
    let mut cells: Vec<Vec<Label>> = Vec::new();
    for f in complex.facets() {
        if f.len() <= r + 1 {
            cells.push(complex.simplex_labels(f));
        } else {
            for_each_subset(f, r + 1, |s| cells.push(complex.simplex_labels(s)));
        }
    }
    SimplicialComplex::new(complex.vertices().iter().cloned(), cells).expect("skeleton is valid")
}

/// `θ_S`: sends a chain of `s` (an element of `Simpl B(S)`) to its supremum.
pub fn sup_map_theta(s: &Poset) -> (Poset, PosetMap) {
    let faces = face_poset(&order_complex(s));
    let map = faces
        .elements()
        .iter()
        .map(|chain| {
            let members: Vec<usize> = chain
                .as_set()
                .expect("face labels are sets")
                .iter()
                .map(|l| s.index_of(l).expect("chain element in poset"))
                .collect();
            *members
                .iter()
                .find(|&&m| members.iter().all(|&o| s.leq(o, m)))
                .expect("a chain has a maximum")
        })
        .collect();
    (faces, PosetMap { map })
}

/// Validates a candidate vertex map: every facet image must be a simplex.
pub fn induced_simplicial_map<'a, F>(
    source: &'a SimplicialComplex,
    target: &'a SimplicialComplex,
    f: F,
) -> Result<SimplicialMap<'a>>
where
    F: Fn(&Label) -> Label,
{
    let vertex_map = source
        .vertices()
        .iter()
        .map(|l| {
            let img = f(l);
            target.index_of(&img).ok_or_else(|| Error::NotSimplicial {
                simplex: format!("{{{l}}} -> {img}"),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let map = SimplicialMap {
        source,
        target,
        vertex_map,
    };
    for facet in source.facets() {
        if !target.contains(&map.image(facet)) {
            let labels: Vec<String> = source.simplex_labels(facet).iter().map(|l| l.to_string()).collect();
            return Err(Error::NotSimplicial {
                simplex: format!("[{}]", labels.join(", ")),
            });
        }
    }
    Ok(map)
}

pub fn int_labels(range: std::ops::Range<i64>) -> Vec<Label> {
    range.map(Label::Int).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_complex_counts() {
        let c = full_complex(&int_labels(0..3)).unwrap();
        assert_eq!(c.f_vector(), vec![3, 3, 1]);
        assert_eq!(c.dim(), 2);
        let p = full_complex(&int_labels(0..1)).unwrap();
        assert_eq!(p.f_vector(), vec![1]);
        assert!(matches!(full_complex(&[]), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn order_complex_of_chain_and_antichain() {
        let labels = int_labels(0..3);
        let oc = order_complex(&Poset::total_order(&labels));
        assert_eq!(oc, full_complex(&labels).unwrap());
        let ab = [Label::from("a"), Label::from("b")];
        let oc = order_complex(&Poset::antichain(&ab));
        assert_eq!(oc.f_vector(), vec![2]);
    }

    #[test]
    fn face_poset_of_edge() {
        let fp = face_poset(&full_complex(&int_labels(0..2)).unwrap());
        assert_eq!(fp.len(), 3);
        let e = fp.index_of(&Label::set(int_labels(0..2))).unwrap();
        let v0 = fp.index_of(&Label::set(int_labels(0..1))).unwrap();
        let v1 = fp.index_of(&Label::set(int_labels(1..2))).unwrap();
        assert!(fp.lt(v0, e) && fp.lt(v1, e));
        assert!(!fp.leq(v0, v1) && !fp.leq(v1, v0));
        let single = face_poset(&full_complex(&int_labels(0..1)).unwrap());
        assert_eq!(single.len(), 1);
    }

    #[test]
    fn face_poset_of_full_complex_is_finite_subsets() {
        for n in 1..=4 {
            let x = int_labels(0..n);
            let fp = face_poset(&full_complex(&x).unwrap());
            assert_eq!(fp.len(), (1usize << n) - 1);
            for (i, a) in fp.elements().iter().enumerate() {
                for (j, b) in fp.elements().iter().enumerate() {
                    let sub = a.as_set().unwrap().iter().all(|l| b.as_set().unwrap().contains(l));
                    assert_eq!(fp.leq(i, j), sub);
                }
            }
        }
    }

    #[test]
    fn subdivision_examples() {
        let edge = full_complex(&int_labels(0..2)).unwrap();
        let sd = subdivision(&edge);
        assert_eq!(sd.f_vector(), vec![3, 2]);
        let tri = subdivision(&full_complex(&int_labels(0..3)).unwrap());
        assert_eq!(tri.facets().len(), 6);
        assert_eq!(tri.f_vector(), vec![7, 12, 6]);
        let pt = subdivision(&full_complex(&int_labels(0..1)).unwrap());
        assert_eq!(pt.f_vector(), vec![1]);
    }

    #[test]
    fn boundary_examples() {
        let two = boundary_subcomplex(&int_labels(0..2), BoundaryMode::Subdivided).unwrap();
        assert_eq!(two.f_vector(), vec![2]);
        assert_eq!(
            two.vertices(),
            &[Label::set([Label::Int(0)]), Label::set([Label::Int(1)])]
        );
        let hex = boundary_subcomplex(&int_labels(0..3), BoundaryMode::Subdivided).unwrap();
        assert_eq!(hex.f_vector(), vec![6, 6]);
        let tri = boundary_subcomplex(&int_labels(0..3), BoundaryMode::Plain).unwrap();
        assert_eq!(tri.f_vector(), vec![3, 3]);
        assert!(boundary_subcomplex(&int_labels(0..1), BoundaryMode::Plain).is_err());
    }

    #[test]
    fn lambda_isomorphism_is_identity_on_labels() {
        for n in 2..=5 {
            let s = int_labels(0..n);
            let a = subdivision(&boundary_subcomplex(&s, BoundaryMode::Plain).unwrap());
            let b = boundary_subcomplex(&s, BoundaryMode::Subdivided).unwrap();
            assert_eq!(a, b, "n = {n}");
        }
    }

    #[test]
    fn skeleton_examples() {
        let tri = full_complex(&int_labels(0..3)).unwrap();
        assert_eq!(skeleton(&tri, 0).f_vector(), vec![3]);
        assert_eq!(
            skeleton(&tri, 1),
            boundary_subcomplex(&int_labels(0..3), BoundaryMode::Plain).unwrap()
        );
        assert_eq!(skeleton(&tri, 5), tri);
    }

    #[test]
    fn theta_takes_suprema() {
        let labels = int_labels(0..3);
        let s = Poset::total_order(&labels);
        let (faces, theta) = sup_map_theta(&s);
        let i = faces.index_of(&Label::set(int_labels(0..2))).unwrap();
        assert_eq!(s.elements()[theta.apply(i)], Label::Int(1));
        let j = faces.index_of(&Label::set([Label::Int(2)])).unwrap();
        assert_eq!(s.elements()[theta.apply(j)], Label::Int(2));
    }

    #[test]
    fn theta_is_monotone_on_four_element_poset() {
        // diamond 0 < 1, 2 < 3
        let labels = int_labels(0..4);
        let p = Poset::checked(labels, |a, b| {
            let (a, b) = (a.as_int().unwrap(), b.as_int().unwrap());
            a == b || a == 0 || b == 3
        })
        .unwrap();
        let (faces, theta) = sup_map_theta(&p);
        assert!(theta.is_order_preserving(&faces, &p));
    }

    #[test]
    fn simplicial_map_validation() {
        let tri = full_complex(&int_labels(0..3)).unwrap();
        let id = induced_simplicial_map(&tri, &tri, |l| l.clone()).unwrap();
        assert_eq!(id.vertex_map, vec![0, 1, 2]);
        let edge = full_complex(&int_labels(0..2)).unwrap();
        let collapse = induced_simplicial_map(&tri, &edge, |l| match l {
            Label::Int(2) => Label::Int(1),
            other => other.clone(),
        });
        assert!(collapse.is_ok());
        // square boundary 0-1-2-3-0; send the triangle boundary edge {0,1} to {0,2}
        let square = SimplicialComplex::from_simplices(
            [[0, 1], [1, 2], [2, 3], [3, 0]]
                .iter()
                .map(|e| e.iter().map(|&i| Label::Int(i)).collect()),
        )
        .unwrap();
        let tb = boundary_subcomplex(&int_labels(0..3), BoundaryMode::Plain).unwrap();
        let bad = induced_simplicial_map(&tb, &square, |l| match l {
            Label::Int(1) => Label::Int(2),
            Label::Int(2) => Label::Int(3),
            other => other.clone(),
        });
        assert!(matches!(bad, Err(Error::NotSimplicial { .. })));
    }

    #[test]
    fn poset_validation_rejects_cycles() {
        let r = Poset::checked(int_labels(0..2), |_, _| true);
        assert!(r.is_err());
    }
}
