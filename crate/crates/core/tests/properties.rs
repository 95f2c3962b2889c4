use std::sync::OnceLock;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use modsym::building::{ar_map, estar_complex, gl_act_complex, gp_and_frame_complex, tits_building};
use modsym::chain::{oriented_chains, subdivision_chain_operator};
use modsym::fq::GlMatrix;
use modsym::harness::random_complex;
use modsym::homology::full_homology;
use modsym::io::{complex_from_json, complex_to_json};
use modsym::oracle::rational_rank;
use modsym::simplicial::{boundary_subcomplex, int_labels, subdivision, BoundaryMode};
use modsym::steinberg::SteinbergContext;
use modsym::{smith_normal_form, BigInt, SimplicialComplex, SparseMatrix};

fn ctx(n: usize, q: i64) -> &'static SteinbergContext {
    static C23: OnceLock<SteinbergContext> = OnceLock::new();
    static C32: OnceLock<SteinbergContext> = OnceLock::new();
    let cell = if (n, q) == (2, 3) { &C23 } else { &C32 };
    cell.get_or_init(|| SteinbergContext::new(n, q).unwrap())
}

fn complex_from_seed(seed: u64) -> SimplicialComplex {
    random_complex(&mut ChaCha8Rng::seed_from_u64(seed), 8)
}

fn betti_and_torsion(c: &SimplicialComplex) -> Vec<(usize, usize, Vec<BigInt>)> {
    full_homology(&oriented_chains::<BigInt>(c))
        .unwrap()
        .degrees
        .into_iter()
        .map(|(p, d)| (p, d.betti, d.torsion))
        .collect()
}

fn instance() -> impl Strategy<Value = (usize, i64)> {
    prop_oneof![Just((2usize, 3i64)), Just((3, 2))]
}

fn tuple(n: usize, q: i64, len: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    proptest::collection::vec(proptest::collection::vec(0..q, n), len)
        .prop_filter("nonzero entries", |t| t.iter().all(|v| v.iter().any(|&x| x != 0)))
}

fn instance_and_tuple() -> impl Strategy<Value = ((usize, i64), Vec<Vec<i64>>)> {
    instance().prop_flat_map(|(n, q)| (Just((n, q)), tuple(n, q, n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_complexes_are_closed_with_dd_zero(seed in any::<u64>()) {
        let c = complex_from_seed(seed);
        prop_assert!(c.is_downward_closed());
        prop_assert!(oriented_chains::<BigInt>(&c).boundary_squared_vanishes());
        prop_assert!(subdivision(&c).is_downward_closed());
    }

    #[test]
    fn subdivision_preserves_homology(seed in any::<u64>()) {
        let c = complex_from_seed(seed);
        prop_assert_eq!(betti_and_torsion(&c), betti_and_torsion(&subdivision(&c)));
    }

    #[test]
    fn subdivision_operator_is_a_chain_map(seed in any::<u64>()) {
        let c = complex_from_seed(seed);
        let op = subdivision_chain_operator::<BigInt>(&c);
        prop_assert!(op.chains.commutes(&oriented_chains(&c), &oriented_chains(&op.subdivided)));
    }

    #[test]
    fn complex_json_round_trip(seed in any::<u64>()) {
        let c = complex_from_seed(seed);
        prop_assert_eq!(complex_from_json(&complex_to_json(&c)).unwrap(), c.clone());
        let s = subdivision(&c);
        prop_assert_eq!(complex_from_json(&complex_to_json(&s)).unwrap(), s);
    }

    #[test]
    fn snf_rank_agrees_with_rational_oracle(
        entries in proptest::collection::vec(-6i64..=6, 1..=30),
        cols in 1usize..6,
    ) {
        let rows = entries.len().div_ceil(cols);
        let mut dense = vec![vec![BigInt::from(0); cols]; rows];
        for (k, e) in entries.iter().enumerate() {
            dense[k / cols][k % cols] = BigInt::from(*e);
        }
        let m = SparseMatrix::from_dense(rows, cols, &dense);
        let s = smith_normal_form(&m).unwrap();
        prop_assert!(s.verify(&m));
        prop_assert_eq!(s.rank(), rational_rank(&m));
    }

    #[test]
    fn gl_action_commutes_with_constructors(seed in any::<u64>(), (n, q) in instance()) {
        let a = GlMatrix::random(n, q, &mut ChaCha8Rng::seed_from_u64(seed));
        let t = tits_building(n, q).unwrap().complex;
        prop_assert_eq!(gl_act_complex(&a, &t).unwrap(), t);
        let e = estar_complex(n, q).unwrap().complex;
        prop_assert_eq!(gl_act_complex(&a, &e).unwrap(), e);
        let gp = gp_and_frame_complex(n, q).unwrap();
        prop_assert_eq!(gl_act_complex(&a, &gp.gp).unwrap(), gp.gp);
    }

    #[test]
    fn symbols_are_antisymmetric(seed in any::<u64>(), ((n, q), t) in instance_and_tuple()) {
        let c = ctx(n, q);
        let i = (seed % n as u64) as usize;
        let j = (i + 1) % n;
        let mut s = t.clone();
        s.swap(i, j);
        let orders = &c.top().torsion;
        prop_assert_eq!(c.modular_symbol(&s).unwrap().coordinates, c.modular_symbol(&t).unwrap().coordinates.neg(orders));
    }

    #[test]
    fn symbols_are_equivariant(seed in any::<u64>(), ((n, q), t) in instance_and_tuple()) {
        let c = ctx(n, q);
        let a = GlMatrix::random(n, q, &mut ChaCha8Rng::seed_from_u64(seed));
        let at: Vec<Vec<i64>> = t.iter().map(|v| a.apply(v)).collect();
        let moved = c.act_on_cycle(&a, &c.symbol_cycle(&t).unwrap()).unwrap();
        prop_assert_eq!(c.top().class_coordinates(&moved).unwrap(), c.modular_symbol(&at).unwrap().coordinates);
    }

    #[test]
    fn symbols_with_two_vectors_in_the_reduced_module(t in tuple(2, 3, 2)) {
        let c = ctx(2, 3);
        let cycle = c.symbol_cycle(&t).unwrap();
        prop_assert_eq!(SteinbergContext::augmentation(&cycle), BigInt::from(0));
    }
}

#[test]
fn ar_is_monotone_on_small_instances() {
    for (n, q) in [(2, 2), (3, 2), (2, 3)] {
        let e = estar_complex(n, q).unwrap();
        let ar = ar_map(&e).unwrap();
        assert!(ar.map.is_order_preserving(&ar.source, &ar.target));
    }
}

#[test]
fn simplex_boundaries_agree_up_to_labels() {
    for n in 2..=4 {
        let labels = int_labels(0..n);
        let plain = boundary_subcomplex(&labels, BoundaryMode::Plain).unwrap();
        let sd = boundary_subcomplex(&labels, BoundaryMode::Subdivided).unwrap();
        assert_eq!(subdivision(&plain), sd);
        assert_eq!(betti_and_torsion(&plain), betti_and_torsion(&sd));
    }
}
