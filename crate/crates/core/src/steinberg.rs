//! Universal modular symbols, the (reduced) Steinberg module, the tuple
//! resolution `C̄_* -> St̃(V)` and the comparisons between them.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::building::{
    ar_simplicial_map, estar_complex, gl_automorphism, gp_and_frame_complex, tits_building, RankBoundedComplex,
    TitsBuilding,
};
use crate::chain::{
    induced_chain_map, oriented_chains, oriented_chains_in, push_chain, sort_sign, subdivision_chain_operator,
    tuple_chains, ChainComplex, ChainMap, ShortExactSequence, Tag, TupleMode,
};
use crate::error::{Error, Result};
use crate::fq::{self, GlMatrix};
use crate::homology::{
    full_homology, homology_degree, induced_homology_map, is_unimodular, ClassCoordinates, DegreeHomology,
    HomologyResult,
};
use crate::label::Label;
use crate::matrix::SparseMatrix;
use crate::oracle;
use crate::report::CheckReport;
use crate::scalar::alternating;
use crate::simplicial::{
    boundary_subcomplex, full_complex, induced_simplicial_map, int_labels, skeleton, BoundaryMode, SimplicialComplex,
};
use crate::snf::{self, smith_normal_form};

type Z = BigInt;

/// `ζ`: the image of `∂(0, 1, ..., n-1)` under subdivision, a cycle of
/// degree `n-2` on the subdivided boundary of the simplex on `{0..n-1}`.
#[derive(Clone, Debug)]
pub struct FundamentalCycle {
    pub n: usize,
    pub complex: SimplicialComplex,
    pub chains: ChainComplex<Z>,
    pub cycle: Vec<Z>,
}

pub fn fundamental_class(n: usize) -> Result<FundamentalCycle> {
    if n < 2 {
        return Err(Error::invalid(format!("fundamental class needs n >= 2, got {n}")));
    }
    let plain = boundary_subcomplex(&int_labels(0..n as i64), BoundaryMode::Plain)?;
    let plain_chains = oriented_chains::<Z>(&plain);
    let mut d = vec![Z::zero(); plain_chains.dim(n - 2).unwrap_or(0)];
    for i in 0..n {
        let face: Vec<usize> = (0..n).filter(|&k| k != i).collect();
        let j = plain_chains.basis_index(n - 2, &face).expect("codimension-one face");
        d[j] += alternating::<Z>(i);
    }
    // sd of the plain boundary has exactly the vertices and flags of the
    // subdivided boundary
    let op = subdivision_chain_operator::<Z>(&plain);
    let cycle = op.chains.apply(n - 2, &d)?;
    let chains = oriented_chains::<Z>(&op.subdivided);
    Ok(FundamentalCycle {
        n,
        complex: op.subdivided,
        chains,
        cycle,
    })
}

/// A modular symbol: its cycle in `Or(T)` and its homology coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolClass {
    pub coordinates: ClassCoordinates<Z>,
    pub cycle: Vec<Z>,
}

impl SymbolClass {
    pub fn to_json(&self, basis: &[Tag], complex: &SimplicialComplex) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .cycle
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let simplex: Vec<serde_json::Value> =
                    complex.simplex_labels(&basis[i]).iter().map(Label::to_json).collect();
                json!({"coefficient": c.to_string(), "simplex": simplex})
            })
            .collect();
        json!({
            "coordinates": self.coordinates.free.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "torsion_coordinates": self.coordinates.torsion.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "cycle": terms,
        })
    }
}

/// `St(V)` or the reduced `St̃(V)` as an abstract group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteinbergModule {
    pub n: usize,
    pub q: i64,
    /// Rank of `St̃(V)`.
    pub rank: usize,
    pub torsion: Vec<Z>,
    /// Rank of the unreduced module (`H_{n-2}` of the building).
    pub full_rank: usize,
}

/// Everything needed to evaluate symbols on one instance `V = F_q^n`.
#[derive(Clone, Debug)]
pub struct SteinbergContext {
    pub n: usize,
    pub q: i64,
    pub building: TitsBuilding,
    pub chains: ChainComplex<Z>,
    pub homology: HomologyResult<Z>,
    pub fundamental: FundamentalCycle,
}

impl SteinbergContext {
    pub fn new(n: usize, q: i64) -> Result<Self> {
        let building = tits_building(n, q)?;
        let chains = oriented_chains::<Z>(&building.complex);
        let homology = full_homology(&chains)?;
        let fundamental = fundamental_class(n)?;
        Ok(SteinbergContext {
            n,
            q,
            building,
            chains,
            homology,
            fundamental,
        })
    }

    /// `H_{n-2}(T(V))`.
    pub fn top(&self) -> &DegreeHomology<Z> {
        self.homology.get(self.n - 2).expect("top degree computed")
    }

    fn check_tuple(&self, vectors: &[Vec<i64>], len: usize) -> Result<Vec<Vec<i64>>> {
        if vectors.len() != len {
            return Err(Error::invalid(format!("expected {len} vectors, got {}", vectors.len())));
        }
        vectors
            .iter()
            .map(|v| {
                if v.len() != self.n {
                    return Err(Error::invalid(format!("vector {v:?} does not lie in F_q^{}", self.n)));
                }
                if fq::is_zero(v, self.q) {
                    return Err(Error::invalid("symbol entries must be nonzero"));
                }
                Ok(fq::reduce(v, self.q))
            })
            .collect()
    }

    /// `(φ_Q)_# ζ`, where `φ_Q` sends a proper subset `I` to `<v_i : i ∈ I>`.
    pub fn symbol_cycle(&self, vectors: &[Vec<i64>]) -> Result<Vec<Z>> {
        let vs = self.check_tuple(vectors, self.n)?;
        let q = self.q;
        let f = &self.fundamental;
        let map = induced_simplicial_map(&f.complex, &self.building.complex, |l| {
            let rows: Vec<Vec<i64>> = l
                .as_set()
                .expect("subset label")
                .iter()
                .map(|i| vs[i.as_int().expect("integer vertex") as usize].clone())
                .collect();
            fq::canonical_subspace(&rows, q).expect("nonzero vectors").label()
        })?;
        push_chain(&map, &f.chains, &self.chains, self.n - 2, &f.cycle)
    }

    pub fn modular_symbol(&self, vectors: &[Vec<i64>]) -> Result<SymbolClass> {
        let cycle = self.symbol_cycle(vectors)?;
        let coordinates = self.top().class_coordinates(&cycle)?;
        Ok(SymbolClass { coordinates, cycle })
    }

    /// `A` acting on a chain of `Or(T)` of degree `n-2`.
    pub fn act_on_cycle(&self, a: &GlMatrix, cycle: &[Z]) -> Result<Vec<Z>> {
        let m = gl_automorphism(a, &self.building.complex)?;
        push_chain(&m, &self.chains, &self.chains, self.n - 2, cycle)
    }

    /// Sum of coefficients; the augmentation on `H_0` when `n = 2`.
    pub fn augmentation(cycle: &[Z]) -> Z {
        cycle.iter().fold(Z::zero(), |a, b| a + b)
    }

    /// Augmentation of each free generator of `H_0` (meaningful for `n = 2`).
    pub fn augmentation_row(&self) -> Vec<Z> {
        self.top().cycle_basis.iter().map(|c| Self::augmentation(c)).collect()
    }

    pub fn steinberg(&self) -> SteinbergModule {
        let top = self.top();
        let mut rank = top.betti;
        if self.n == 2 {
            let aug = SparseMatrix::from_dense(1, top.betti, &[self.augmentation_row()]);
            rank -= oracle::rational_rank(&aug);
        }
        SteinbergModule {
            n: self.n,
            q: self.q,
            rank,
            torsion: top.torsion.clone(),
            full_rank: top.betti,
        }
    }
}

/// The reduced Steinberg module, with the constant cases for `n <= 1`.
pub fn reduced_steinberg(n: usize, q: i64) -> Result<SteinbergModule> {
    if n < 2 {
        fq::check_prime(q)?;
        return Ok(SteinbergModule {
            n,
            q,
            rank: 1,
            torsion: Vec::new(),
            full_rank: 1,
        });
    }
    Ok(SteinbergContext::new(n, q)?.steinberg())
}

fn tuple_rank(vectors: &[Vec<i64>], q: i64) -> impl Fn(&[usize]) -> usize + '_ {
    move |t: &[usize]| fq::rank_mod(&t.iter().map(|&i| vectors[i].clone()).collect::<Vec<_>>(), q)
}

/// The quotient tuple complex `C̄` in degrees `n-1..=n` (or `..=n+1`)
/// together with `ar: C̄_{n-1} -> St̃(V)`.
#[derive(Clone, Debug)]
pub struct LeeSzczarbaResolution {
    pub n: usize,
    pub q: i64,
    pub vectors: Vec<Vec<i64>>,
    pub complex: ChainComplex<Z>,
    pub generators: Vec<Tag>,
    pub d_n: SparseMatrix<Z>,
    pub d_n1: Option<SparseMatrix<Z>>,
    pub cokernel_rank: usize,
    pub cokernel_torsion: Vec<Z>,
    /// `H_n(C̄)`, when degree `n+1` was materialized.
    pub top_homology: Option<DegreeHomology<Z>>,
    /// Symbol coordinates of each generator (one column per generator).
    pub ar: SparseMatrix<Z>,
    /// `ar` induces `coker(d_n) ≅ St̃(V)`.
    pub ar_exact: bool,
}

pub fn lee_szczarba_resolution(
    ctx: &SteinbergContext,
    budget: Option<usize>,
    with_top: bool,
) -> Result<LeeSzczarbaResolution> {
    let (n, q) = (ctx.n, ctx.q);
    let vectors = fq::nonzero_vectors(n, q);
    let hi = if with_top { n + 1 } else { n };
    let complex = tuple_chains::<Z, _>(
        vectors.len(),
        tuple_rank(&vectors, q),
        n,
        TupleMode::Quotient,
        n - 1..=hi,
        budget,
    )?;
    let generators = complex.basis(n - 1).to_vec();
    let d_n = complex.boundary(n)?;
    let d_n1 = if with_top { Some(complex.boundary(n + 1)?) } else { None };
    let s = smith_normal_form(&d_n)?;
    let cokernel_rank = generators.len() - s.rank();
    let cokernel_torsion = s.torsion();
    let top_homology = if with_top {
        Some(homology_degree(&complex, n)?)
    } else {
        None
    };

    let mut columns = Vec::with_capacity(generators.len());
    let mut torsion_free = true;
    for g in &generators {
        let tuple: Vec<Vec<i64>> = g.iter().map(|&i| vectors[i].clone()).collect();
        let sym = ctx.modular_symbol(&tuple)?;
        torsion_free &= sym.coordinates.torsion.iter().all(Zero::is_zero);
        columns.push(sym.coordinates.free);
    }
    let st = ctx.steinberg();
    let ar = SparseMatrix::from_columns(ctx.top().betti, &columns);
    let sa = smith_normal_form(&ar)?;
    let mut ar_exact = torsion_free
        && ar.mul(&d_n)?.is_zero()
        && sa.rank() == st.rank
        && sa.invariants.iter().all(One::is_one)
        && sa.rank() + s.rank() == generators.len()
        && cokernel_torsion.is_empty();
    if n == 2 {
        let aug = SparseMatrix::from_dense(1, ctx.top().betti, &[ctx.augmentation_row()]);
        ar_exact &= aug.mul(&ar)?.is_zero();
    }
    Ok(LeeSzczarbaResolution {
        n,
        q,
        vectors,
        complex,
        generators,
        d_n,
        d_n1,
        cokernel_rank,
        cokernel_torsion,
        top_homology,
        ar,
        ar_exact,
    })
}

/// `H_*(E*) -> H_*(T)` induced by subdivision followed by `B(AR)`.
#[derive(Clone, Debug)]
pub struct ZigzagIso {
    pub estar: RankBoundedComplex,
    pub estar_chains: ChainComplex<Z>,
    pub estar_homology: HomologyResult<Z>,
    pub composite: ChainMap<Z>,
    pub commutes: bool,
    /// Per degree: target betti x source betti.
    pub matrices: BTreeMap<usize, SparseMatrix<Z>>,
    pub torsion_matches: bool,
}

impl ZigzagIso {
    pub fn apply(&self, p: usize, chain: &[Z]) -> Result<Vec<Z>> {
        self.composite.apply(p, chain)
    }

    pub fn determinants(&self) -> BTreeMap<usize, Option<Z>> {
        self.matrices
            .iter()
            .map(|(p, m)| (*p, (m.rows() == m.cols()).then(|| oracle::determinant(&m.to_dense()))))
            .collect()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.commutes && self.torsion_matches && self.matrices.values().all(is_unimodular)
    }
}

pub fn zigzag_iso(ctx: &SteinbergContext) -> Result<ZigzagIso> {
    let estar = estar_complex(ctx.n, ctx.q)?;
    let estar_chains = oriented_chains::<Z>(&estar.complex);
    let estar_homology = full_homology(&estar_chains)?;
    let sd = subdivision_chain_operator::<Z>(&estar.complex);
    let bar = ar_simplicial_map(&sd.subdivided, &ctx.building.complex, estar.ring)?;
    let composite = sd.chains.compose(&induced_chain_map::<Z>(&bar))?;
    let commutes = composite.commutes(&estar_chains, &ctx.chains);
    let mut matrices = BTreeMap::new();
    let mut torsion_matches = true;
    for (p, hs) in &estar_homology.degrees {
        let ht = match ctx.homology.get(*p) {
            Some(h) => h.clone(),
            None => homology_degree(&ctx.chains, *p)?,
        };
        torsion_matches &= hs.torsion == ht.torsion;
        matrices.insert(*p, induced_homology_map(&composite, hs, &ht)?);
    }
    Ok(ZigzagIso {
        estar,
        estar_chains,
        estar_homology,
        composite,
        commutes,
        matrices,
        torsion_matches,
    })
}

/// Ordered-tuple chain of `E*` to oriented chain: sort with sign, drop
/// tuples with a repeated vertex.
fn tuples_to_oriented(
    chain: &[Z],
    basis: &[Tag],
    vertex_of: &[usize],
    target: &ChainComplex<Z>,
    p: usize,
) -> Result<Vec<Z>> {
    let mut out = vec![Z::zero(); target.dim(p).unwrap_or(0)];
    for (k, c) in chain.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let verts: Vec<usize> = basis[k].iter().map(|&i| vertex_of[i]).collect();
        let (sorted, neg) = sort_sign(&verts);
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        let idx = target.basis_index(p, &sorted).ok_or_else(|| Error::NotSimplicial {
            simplex: format!("{sorted:?}"),
        })?;
        if neg {
            out[idx] -= c;
        } else {
            out[idx] += c;
        }
    }
    Ok(out)
}

/// The exact sequence `0 -> C(E*) -> C(E(V-0)) -> C̄ -> 0` of ordered
/// tuples in degrees `n-2..=n-1`.
pub fn tuple_sequence(n: usize, q: i64) -> Result<(Vec<Vec<i64>>, ShortExactSequence<Z>)> {
    let vectors = fq::nonzero_vectors(n, q);
    let m = vectors.len();
    let rank = tuple_rank(&vectors, q);
    let w = n - 2..=n - 1;
    let sub = tuple_chains::<Z, _>(m, &rank, n, TupleMode::Bounded, w.clone(), None)?;
    let total = tuple_chains::<Z, _>(m, &rank, n, TupleMode::Full, w.clone(), None)?;
    let quot = tuple_chains::<Z, _>(m, &rank, n, TupleMode::Quotient, w, None)?;
    let ses = ShortExactSequence::split(sub, total, quot)?;
    Ok((vectors.clone(), ses))
}

/// For every generator `Q` of `C̄_{n-1}`: the connecting map followed by
/// the zig-zag agrees with `[Q]`, up to one sign fixed on the first
/// generator with a nonzero symbol.
pub fn connecting_map_check(ctx: &SteinbergContext, zz: &ZigzagIso) -> Result<CheckReport> {
    let n = ctx.n;
    let (vectors, ses) = tuple_sequence(n, ctx.q)?;
    let conn = ses.connecting(n - 1)?;
    let vertex_of: Vec<usize> = vectors
        .iter()
        .map(|v| {
            zz.estar
                .complex
                .index_of(&Label::Vector(v.clone()))
                .expect("vector vertex")
        })
        .collect();
    let gens = ses.quotient.basis(n - 1).to_vec();
    let top = ctx.top();
    let mut report = CheckReport::new("p3", n, ctx.q);
    let mut sign: Option<bool> = None;
    for (j, g) in gens.iter().enumerate() {
        let mut z = vec![Z::zero(); gens.len()];
        z[j] = Z::one();
        let c = conn.apply(&z)?;
        let or = tuples_to_oriented(&c, ses.sub.basis(n - 2), &vertex_of, &zz.estar_chains, n - 2)?;
        let lhs = top.class_coordinates(&zz.apply(n - 2, &or)?)?;
        let tuple: Vec<Vec<i64>> = g.iter().map(|&i| vectors[i].clone()).collect();
        let rhs = ctx.modular_symbol(&tuple)?.coordinates;
        if sign.is_none() && !rhs.is_zero() {
            if lhs == rhs {
                sign = Some(false);
            } else if lhs == rhs.neg(&top.torsion) {
                sign = Some(true);
            }
        }
        let expected = if sign == Some(true) { rhs.neg(&top.torsion) } else { rhs };
        report.record(lhs == expected, || {
            format!(
                "generator {tuple:?}: zig-zag gives {:?}, symbol gives {:?}",
                lhs.free, expected.free
            )
        });
    }
    report.detail("generators", json!(gens.len()));
    report.detail("global_sign", json!(if sign == Some(true) { -1 } else { 1 }));
    Ok(report)
}

fn add_coords(acc: &mut ClassCoordinates<Z>, x: &ClassCoordinates<Z>, negate: bool, orders: &[Z]) {
    for (a, b) in acc.free.iter_mut().zip(&x.free) {
        if negate {
            *a -= b;
        } else {
            *a += b;
        }
    }
    for ((a, b), o) in acc.torsion.iter_mut().zip(&x.torsion).zip(orders) {
        let s = if negate { a.clone() - b } else { a.clone() + b };
        *a = num_integer::Integer::mod_floor(&s, o);
    }
}

fn random_tuple<R: Rng>(n: usize, q: i64, len: usize, rng: &mut R) -> Vec<Vec<i64>> {
    (0..len).map(|_| fq::random_nonzero(n, q, rng)).collect()
}

/// Seeded checks of the relations (a)-(e) on homology coordinates.
pub fn verify_relations(ctx: &SteinbergContext, trials: usize, seed: u64) -> Result<CheckReport> {
    let (n, q) = (ctx.n, ctx.q);
    let top = ctx.top();
    let orders = top.torsion.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = CheckReport::new("relations", n, q);
    report.seed = Some(seed);
    let mut per: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
    let mut tally = |report: &mut CheckReport, rel: &'static str, ok: bool, msg: String| {
        let e = per.entry(rel).or_default();
        e.0 += 1;
        if !ok {
            e.1 += 1;
        }
        report.record(ok, || format!("({rel}) {msg}"));
    };
    for t in 0..trials {
        // (a) a transposition negates the symbol
        let qa = random_tuple(n, q, n, &mut rng);
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let mut swapped = qa.clone();
        swapped.swap(i, j);
        let (x, y) = (ctx.modular_symbol(&qa)?, ctx.modular_symbol(&swapped)?);
        tally(
            &mut report,
            "a",
            y.coordinates == x.coordinates.neg(&orders),
            format!("trial {t}: {qa:?} swap {i},{j}"),
        );

        // (b) scaling one vector
        let qb = random_tuple(n, q, n, &mut rng);
        let i = rng.gen_range(0..n);
        let a = rng.gen_range(1..q);
        let mut scaled = qb.clone();
        scaled[i] = fq::reduce(&scaled[i].iter().map(|c| c * a).collect::<Vec<_>>(), q);
        let ok = ctx.modular_symbol(&qb)?.coordinates == ctx.modular_symbol(&scaled)?.coordinates;
        tally(&mut report, "b", ok, format!("trial {t}: {qb:?} scale v_{i} by {a}"));

        // (c) dependent tuples vanish
        let mut qc = random_tuple(n, q, n, &mut rng);
        let k = rng.gen_range(0..n);
        let mut comb = vec![0i64; n];
        for (idx, v) in qc.iter().enumerate() {
            if idx != k {
                let c = rng.gen_range(0..q);
                for (s, x) in comb.iter_mut().zip(v) {
                    *s += c * x;
                }
            }
        }
        comb = fq::reduce(&comb, q);
        if fq::is_zero(&comb, q) {
            let a = rng.gen_range(1..q);
            comb = fq::reduce(&qc[(k + 1) % n].iter().map(|x| x * a).collect::<Vec<_>>(), q);
        }
        qc[k] = comb;
        let ok = fq::det_mod(&qc, q) == 0 && ctx.modular_symbol(&qc)?.coordinates.is_zero();
        tally(&mut report, "c", ok, format!("trial {t}: {qc:?}"));

        // (d) alternating sum over n+1 vectors
        let qd = random_tuple(n, q, n + 1, &mut rng);
        let mut acc = ClassCoordinates {
            free: vec![Z::zero(); top.betti],
            torsion: vec![Z::zero(); orders.len()],
        };
        for i in 0..=n {
            let face: Vec<Vec<i64>> = qd
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != i)
                .map(|(_, v)| v.clone())
                .collect();
            add_coords(&mut acc, &ctx.modular_symbol(&face)?.coordinates, i % 2 == 1, &orders);
        }
        tally(&mut report, "d", acc.is_zero(), format!("trial {t}: {qd:?}"));

        // (e) equivariance
        let a = GlMatrix::random(n, q, &mut rng);
        let qe = random_tuple(n, q, n, &mut rng);
        let aq: Vec<Vec<i64>> = qe.iter().map(|v| a.apply(v)).collect();
        let lhs = ctx.modular_symbol(&aq)?.coordinates;
        let rhs = top.class_coordinates(&ctx.act_on_cycle(&a, &ctx.symbol_cycle(&qe)?)?)?;
        tally(
            &mut report,
            "e",
            lhs == rhs,
            format!("trial {t}: A = {:?}, Q = {qe:?}", a.rows),
        );
    }
    let summary: serde_json::Map<String, serde_json::Value> = per
        .iter()
        .map(|(k, (tot, fail))| (k.to_string(), json!({"trials": tot, "failures": fail})))
        .collect();
    report.detail("relations", serde_json::Value::Object(summary));
    Ok(report)
}

/// The group presented by generators `e_Q` (all `n`-tuples of nonzero
/// vectors) and relations (c) and (d).
#[derive(Clone, Debug)]
pub struct Presentation {
    pub n: usize,
    pub q: i64,
    pub generators: usize,
    pub relations: usize,
    pub rank: usize,
    pub torsion: Vec<Z>,
    /// Sampled antisymmetry relations `e_Q + e_Q'` and whether each lies
    /// in the relation span.
    pub antisymmetry: Vec<(Vec<Vec<i64>>, bool)>,
}

fn tuple_index(t: &[usize], m: usize) -> usize {
    t.iter().fold(0, |acc, &i| acc * m + i)
}

fn for_each_tuple(m: usize, len: usize, mut f: impl FnMut(&[usize])) {
    let mut t = vec![0usize; len];
    if m == 0 {
        return;
    }
    loop {
        f(&t);
        let mut i = len;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            t[i] += 1;
            if t[i] < m {
                break;
            }
            t[i] = 0;
        }
    }
}

pub fn presentation_from_relations(
    n: usize,
    q: i64,
    samples: usize,
    seed: u64,
    budget: Option<usize>,
) -> Result<Presentation> {
    if n < 2 {
        return Err(Error::invalid(format!("need n >= 2, got {n}")));
    }
    fq::check_prime(q)?;
    let vectors = fq::nonzero_vectors(n, q);
    let m = vectors.len();
    let required = (m as u128).pow(n as u32 + 1);
    if let Some(b) = budget {
        if required > b as u128 {
            return Err(Error::InstanceTooLarge {
                required: usize::try_from(required).unwrap_or(usize::MAX),
                budget: b,
            });
        }
    }
    let rank = tuple_rank(&vectors, q);
    let generators = m.pow(n as u32);
    let mut trip: Vec<(usize, usize, Z)> = Vec::new();
    let mut col = 0;
    for_each_tuple(m, n, |t| {
        if rank(t) < n {
            trip.push((tuple_index(t, m), col, Z::one()));
            col += 1;
        }
    });
    for_each_tuple(m, n + 1, |t| {
        let mut entries: BTreeMap<usize, Z> = BTreeMap::new();
        for i in 0..=n {
            let face: Vec<usize> = t.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, v)| *v).collect();
            *entries.entry(tuple_index(&face, m)).or_insert_with(Z::zero) += alternating::<Z>(i);
        }
        entries.retain(|_, v| !v.is_zero());
        if !entries.is_empty() {
            trip.extend(entries.into_iter().map(|(r, v)| (r, col, v)));
            col += 1;
        }
    });
    let rel = SparseMatrix::from_triplets(generators, col, trip)?;
    let s = smith_normal_form(&rel)?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut antisymmetry = Vec::with_capacity(samples);
    for _ in 0..samples {
        let t: Vec<usize> = (0..n).map(|_| rng.gen_range(0..m)).collect();
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let mut u = t.clone();
        u.swap(i, j);
        let mut b = vec![Z::zero(); generators];
        b[tuple_index(&t, m)] += 1;
        b[tuple_index(&u, m)] += 1;
        let tuple: Vec<Vec<i64>> = t.iter().map(|&k| vectors[k].clone()).collect();
        antisymmetry.push((tuple, snf::solve(&s, &b).is_some()));
    }
    Ok(Presentation {
        n,
        q,
        generators,
        relations: col,
        rank: generators - s.rank(),
        torsion: s.torsion(),
        antisymmetry,
    })
}

/// Degreewise facts about `Or(GP)/σ^{<=n-2} -> Or(E(V-0))/Or(E*)` and
/// the map `H_{n-2}(Sk^{n-2} GP) -> H_{n-2}(E*)`.
pub fn gp_comparison_check(n: usize, q: i64) -> Result<CheckReport> {
    let gp = gp_and_frame_complex(n, q)?;
    let estar = estar_complex(n, q)?;
    let mut report = CheckReport::new("gp", n, q);

    let or_gp = oriented_chains::<Z>(&gp.gp);
    let left = or_gp.quotient_by(&or_gp.truncate_above(n - 2))?;
    let all = skeleton(&full_complex(estar.complex.vertices())?, n - 1);
    let total = oriented_chains::<Z>(&all);
    let sub = oriented_chains_in::<Z>(&skeleton(&estar.complex, n - 1), &all)?;
    let right = total.quotient_by(&sub)?;
    for p in 0..n - 1 {
        report.record(left.basis(p).is_empty(), || {
            format!("GP quotient nonzero in degree {p}")
        });
        report.record(right.basis(p).is_empty(), || {
            format!("E/E* quotient nonzero in degree {p}")
        });
    }
    let mut lb: Vec<Vec<Label>> = left.basis(n - 1).iter().map(|t| gp.gp.simplex_labels(t)).collect();
    let mut rb: Vec<Vec<Label>> = right.basis(n - 1).iter().map(|t| all.simplex_labels(t)).collect();
    lb.sort();
    rb.sort();
    report.record(lb == rb, || {
        format!("degree {} bases differ ({} vs {})", n - 1, lb.len(), rb.len())
    });
    report.detail("frames", json!(lb.len()));

    let sk = gp.skeleton(n - 2);
    let inclusion = induced_simplicial_map(&sk, &estar.complex, Label::clone)?;
    let f = induced_chain_map::<Z>(&inclusion);
    let hs = homology_degree(&oriented_chains::<Z>(&sk), n - 2)?;
    let ht = homology_degree(&oriented_chains::<Z>(&estar.complex), n - 2)?;
    let mat = induced_homology_map(&f, &hs, &ht)?;
    let s = smith_normal_form(&mat)?;
    let surjective = s.rank() == ht.betti && s.invariants.iter().all(One::is_one) && ht.torsion.is_empty();
    report.detail(
        "map",
        json!({
            "source_rank": hs.betti,
            "target_rank": ht.betti,
            "rank": s.rank(),
            "cokernel_rank": ht.betti - s.rank(),
            "cokernel_torsion": s.torsion().iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            "surjective": surjective,
            "injective": s.rank() == hs.betti && hs.torsion.is_empty(),
        }),
    );
    Ok(report)
}

/// Homology of the building: vanishing, torsion and Euler checks.
pub fn solomon_tits_check(ctx: &SteinbergContext) -> CheckReport {
    let n = ctx.n;
    let mut report = CheckReport::new("solomon-tits", n, ctx.q);
    for (p, h) in &ctx.homology.degrees {
        let (p, h) = (*p, h);
        if p > 0 && p < n - 2 {
            report.record(h.is_zero(), || format!("H_{p} is nonzero"));
        }
        if p == 0 && n >= 3 {
            report.record(h.betti == 1 && h.torsion.is_empty(), || {
                "building is disconnected".into()
            });
        }
    }
    report.record(ctx.top().torsion.is_empty(), || format!("H_{} has torsion", n - 2));
    let betti_chi: i64 = ctx
        .homology
        .degrees
        .iter()
        .map(|(p, h)| if p % 2 == 0 { h.betti as i64 } else { -(h.betti as i64) })
        .sum();
    let chi = ctx.chains.euler_characteristic();
    report.record(chi == betti_chi, || {
        format!("Euler characteristic {chi} != {betti_chi}")
    });
    let st = ctx.steinberg();
    report.detail("homology", ctx.homology.to_json());
    report.detail("euler_characteristic", json!(chi));
    report.detail("steinberg_rank", json!(st.full_rank));
    report.detail("reduced_rank", json!(st.rank));
    report
}

/// Report for the zig-zag comparison `H_*(E*) -> H_*(T)`.
pub fn zigzag_report(ctx: &SteinbergContext, zz: &ZigzagIso) -> CheckReport {
    let mut report = CheckReport::new("ar-equivalence", ctx.n, ctx.q);
    report.record(zz.commutes, || "composite is not a chain map".into());
    report.record(zz.torsion_matches, || "torsion differs".into());
    let dets = zz.determinants();
    for (p, m) in &zz.matrices {
        report.record(is_unimodular(m), || {
            format!("degree {p}: {}x{} map is not invertible", m.rows(), m.cols())
        });
    }
    report.detail(
        "determinants",
        json!(dets
            .iter()
            .map(|(p, d)| (p.to_string(), json!(d.as_ref().map(|d| d.to_string()))))
            .collect::<serde_json::Map<_, _>>()),
    );
    report
}

/// Report for the resolution `C̄_n -> C̄_{n-1} -> St̃(V)`.
pub fn resolution_report(ctx: &SteinbergContext, res: &LeeSzczarbaResolution) -> Result<CheckReport> {
    let st = ctx.steinberg();
    let mut report = CheckReport::new("lee-szczarba", ctx.n, ctx.q);
    report.record(res.cokernel_rank == st.rank, || {
        format!(
            "coker(d_n) has rank {}, reduced Steinberg rank {}",
            res.cokernel_rank, st.rank
        )
    });
    report.record(res.cokernel_torsion.is_empty(), || "coker(d_n) has torsion".into());
    report.record(res.ar_exact, || "ar does not induce coker(d_n) ≅ St̃".into());
    if let Some(d1) = &res.d_n1 {
        report.record(res.d_n.mul(d1)?.is_zero(), || "d_n d_{n+1} != 0".into());
    }
    if let Some(h) = &res.top_homology {
        report.record(h.is_zero(), || {
            format!("H_n has betti {} torsion {:?}", h.betti, h.torsion)
        });
    }
    report.detail(
        "ranks",
        json!({
            "generators": res.generators.len(),
            "c_n": res.complex.dim(ctx.n),
            "c_n1": res.complex.dim(ctx.n + 1),
            "cokernel_rank": res.cokernel_rank,
            "cokernel_torsion": res.cokernel_torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            "top_homology": res.top_homology.as_ref().map(DegreeHomology::to_json),
        }),
    );
    Ok(report)
}

/// Report comparing the presented group with `St̃(V)`.
pub fn presentation_report(st: &SteinbergModule, p: &Presentation) -> CheckReport {
    let mut report = CheckReport::new("c2", p.n, p.q);
    report.record(p.rank == st.rank, || {
        format!("presented rank {} vs {}", p.rank, st.rank)
    });
    report.record(p.torsion.is_empty(), || format!("presented torsion {:?}", p.torsion));
    for (t, ok) in &p.antisymmetry {
        report.record(*ok, || format!("antisymmetry for {t:?} not in the relation span"));
    }
    report.detail(
        "presentation",
        json!({"generators": p.generators, "relations": p.relations, "rank": p.rank, "samples": p.antisymmetry.len()}),
    );
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: i64) -> Z {
        Z::from(v)
    }

    #[test]
    fn fundamental_class_small() {
        let f = fundamental_class(2).unwrap();
        let one = f.complex.index_of(&Label::set([Label::Int(1)])).unwrap();
        let zero = f.complex.index_of(&Label::set([Label::Int(0)])).unwrap();
        let mut expect = vec![z(0); 2];
        expect[one] = z(1);
        expect[zero] = z(-1);
        assert_eq!(f.cycle, expect);
        let f3 = fundamental_class(3).unwrap();
        assert_eq!(f3.cycle.iter().filter(|c| !c.is_zero()).count(), 6);
        assert!(f3
            .chains
            .boundary(1)
            .unwrap()
            .mul_vec(&f3.cycle)
            .iter()
            .all(Zero::is_zero));
        assert_eq!(
            f3.complex,
            boundary_subcomplex(&int_labels(0..3), BoundaryMode::Subdivided).unwrap()
        );
        assert!(fundamental_class(1).is_err());
    }

    #[test]
    fn symbol_for_n2() {
        let ctx = SteinbergContext::new(2, 2).unwrap();
        let c = ctx.symbol_cycle(&[vec![1, 0], vec![0, 1]]).unwrap();
        let l0 = ctx
            .building
            .complex
            .index_of(&Label::Subspace(vec![vec![1, 0]]))
            .unwrap();
        let l1 = ctx
            .building
            .complex
            .index_of(&Label::Subspace(vec![vec![0, 1]]))
            .unwrap();
        let mut expect = vec![z(0); 3];
        expect[l1] = z(1);
        expect[l0] = z(-1);
        assert_eq!(c, expect);
        assert!(ctx
            .modular_symbol(&[vec![1, 1], vec![1, 1]])
            .unwrap()
            .coordinates
            .is_zero());
        assert!(ctx.modular_symbol(&[vec![0, 0], vec![1, 1]]).is_err());
        assert_eq!(ctx.steinberg().rank, 2);
        assert_eq!(ctx.steinberg().full_rank, 3);
    }

    #[test]
    fn small_resolution() {
        let ctx = SteinbergContext::new(2, 2).unwrap();
        let res = lee_szczarba_resolution(&ctx, None, true).unwrap();
        assert_eq!(res.generators.len(), 6);
        assert_eq!(res.complex.dim(2), Some(24));
        assert_eq!(res.cokernel_rank, 2);
        assert!(res.ar_exact);
        assert!(res.top_homology.unwrap().is_zero());
    }

    #[test]
    fn small_zigzag_and_p3() {
        let ctx = SteinbergContext::new(2, 2).unwrap();
        let zz = zigzag_iso(&ctx).unwrap();
        assert!(zz.is_isomorphism());
        let r = connecting_map_check(&ctx, &zz).unwrap();
        assert_eq!(r.total, 6);
        assert!(r.passed(), "{:?}", r.failures);
    }

    #[test]
    fn reduced_constant_cases() {
        assert_eq!(reduced_steinberg(1, 5).unwrap().rank, 1);
        assert_eq!(reduced_steinberg(0, 2).unwrap().rank, 1);
        assert!(reduced_steinberg(1, 4).is_err());
    }
}
