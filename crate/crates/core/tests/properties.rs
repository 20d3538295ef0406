mod common;

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use trivalent::graph::perm::{compose, parity};
use trivalent::graph::LabelledTrivalentGraph;
use trivalent::linalg::{rational_rank, SparseRow};
use trivalent::morse::matrix::{int_determinant, is_identity, mul, to_q};
use trivalent::morse::{
    close, compute_propagator, dual_propagator, has_idempotent_projections, is_contraction, split_edges, transport,
    CritPoint, Decoration, HandleSlideEvent, MorseError,
};
use trivalent::space::{enumerate_classes, modular_rank, AVector, GraphSpace, SpaceConfig};
use trivalent::surgery::{block_sign, BlockDegrees};

fn space(k: usize) -> &'static GraphSpace {
    static SPACES: OnceLock<Vec<GraphSpace>> = OnceLock::new();
    &SPACES.get_or_init(|| (1..=3).map(|k| GraphSpace::build(k, &SpaceConfig::default()).unwrap()).collect())[k - 1]
}

fn sparse_rows(cols: usize) -> impl Strategy<Value = Vec<SparseRow>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, cols), 0..12).prop_map(|rows| {
        rows.into_iter()
            .map(|r| r.into_iter().enumerate().filter(|&(_, x)| x != 0).collect())
            .collect()
    })
}

/// A random vector in the k-space with small rational coefficients.
fn vector(k: usize) -> impl Strategy<Value = AVector> {
    let n = space(k).basis.len();
    prop::collection::btree_map(0..n, (-5i64..=5, 1i64..=3), 0..=n).prop_map(move |m| {
        let coeffs: BTreeMap<usize, BigRational> = m
            .into_iter()
            .filter(|&(_, (a, _))| a != 0)
            .map(|(i, (a, b))| (i, BigRational::new(a.into(), b.into())))
            .collect();
        AVector::from_map(k, coeffs)
    })
}

/// A permutation of `0..parities.len()` that maps each index to one of equal parity.
fn parity_preserving(parities: &[u32], keys: &[u64]) -> Vec<usize> {
    let mut out = vec![0; parities.len()];
    for p in 0..2 {
        let idx: Vec<usize> = (0..parities.len()).filter(|&i| parities[i] == p).collect();
        let mut shuffled = idx.clone();
        shuffled.sort_by_key(|&i| keys[i]);
        for (a, b) in idx.into_iter().zip(shuffled) {
            out[a] = b;
        }
    }
    out
}

fn random_perm(n: usize, keys: &[u64]) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.sort_by_key(|&i| (keys[i % keys.len()], i));
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn modular_rank_matches_exact_rank(rows in sparse_rows(10), seed in any::<u64>()) {
        let cfg = SpaceConfig { seed, ..SpaceConfig::default() };
        prop_assert_eq!(modular_rank(&rows, &cfg).unwrap().0, rational_rank(&rows));
    }

    #[test]
    fn normal_form_is_linear_and_idempotent(k in 2usize..=3, a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>(), c in -4i64..=4) {
        let s = space(k);
        let pick = |i: prop::sample::Index| {
            let v: Vec<AVector> = (0..s.basis.len()).map(|j| AVector::unit(k, j, 1)).collect();
            v[i.index(v.len())].clone()
        };
        let (x, y) = (pick(a), pick(b));
        let f = BigRational::from_integer(BigInt::from(c));
        let lhs = s.normal_form(&x.scale(&f).add(&y));
        let rhs = s.normal_form(&x).scale(&f).add(&s.normal_form(&y));
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(s.normal_form(&lhs), lhs);
    }

    #[test]
    fn normal_form_of_random_vectors(v in vector(3)) {
        // A_3 = 0, so every vector reduces to zero
        prop_assert!(space(3).normal_form(&v).is_zero());
    }

    #[test]
    fn block_sign_is_a_homomorphism_on_parity_preserving_permutations(
        degrees in prop::collection::vec(prop::array::uniform3(1u32..=2), 1..7),
        k1 in prop::collection::vec(any::<u64>(), 7),
        k2 in prop::collection::vec(any::<u64>(), 7),
    ) {
        let d = BlockDegrees { slots: degrees };
        let parities: Vec<u32> = (0..d.slots.len()).map(|v| d.parity(v)).collect();
        let s = parity_preserving(&parities, &k1);
        let r = parity_preserving(&parities, &k2);
        prop_assert_eq!(block_sign(&d, &compose(&s, &r)), block_sign(&d, &s) * block_sign(&d, &r));
        prop_assert_eq!(block_sign(&d, &compose(&r, &s)), block_sign(&d, &s) * block_sign(&d, &r));
    }

    #[test]
    fn transport_is_unimodular(
        ranks in prop::array::uniform5(2usize..=5),
        raw in prop::collection::vec((0usize..5, any::<u32>(), any::<u32>(), any::<bool>()), 0..20),
    ) {
        let events: Vec<HandleSlideEvent> = raw
            .into_iter()
            .map(|(d, p, q, s)| {
                let r = ranks[d];
                let p = p as usize % r;
                let q = (p + 1 + q as usize % (r - 1)) % r;
                HandleSlideEvent { degree: d, p, q, sign: if s { 1 } else { -1 } }
            })
            .collect();
        let t = transport(&events, &ranks).unwrap();
        for d in 0..5 {
            prop_assert_eq!(int_determinant(&t.phi[d]), BigInt::from(1));
            prop_assert!(is_identity(&mul(&to_q(&t.phi[d]), &to_q(&t.inverse[d]), ranks[d])));
        }
    }

    #[test]
    fn close_inverts_split(class in 0usize..17, mask in any::<u16>(), idx in prop::collection::vec((0u8..4, 0usize..3), 9)) {
        let g = LabelledTrivalentGraph::from_key(&enumerate_classes(3)[class].key).unwrap();
        let subset: Vec<usize> = (0..g.edges().len()).filter(|e| mask >> e & 1 == 1).collect();
        let decorations = subset
            .iter()
            .map(|&e| {
                let (i, id) = idx[e];
                (e, Decoration { p: CritPoint { index: i + 1, id }, q: CritPoint { index: i, id } })
            })
            .collect();
        let c = split_edges(&g, &subset, &decorations).unwrap();
        prop_assert_eq!(c.num_white(), 2 * subset.len());
        prop_assert_eq!(close(&c), g);
    }

    #[test]
    fn canonical_key_is_relabelling_invariant(class in 0usize..17, kv in prop::collection::vec(any::<u64>(), 6), ke in prop::collection::vec(any::<u64>(), 9)) {
        let g = LabelledTrivalentGraph::from_key(&enumerate_classes(3)[class].key).unwrap();
        let h = g.relabel(&random_perm(6, &kv), &random_perm(9, &ke));
        let (a, b) = (g.reduce(), h.reduce());
        prop_assert_eq!(&a.key, &b.key);
        prop_assert_eq!(a.status == trivalent::graph::ClassStatus::Zero, b.status == trivalent::graph::ClassStatus::Zero);
        // relabelling by an automorphism never changes the sign of a nonzero class
        for aut in g.automorphisms() {
            if let trivalent::graph::ClassStatus::Signed(_) = a.status {
                prop_assert_eq!(parity(&aut.edge_perm), 1);
            }
        }
    }

    #[test]
    fn propagator_contracts_acyclic_complexes(seed in any::<u64>()) {
        let c = common::random_complex(seed, 40, 0);
        let g = compute_propagator(&c).unwrap();
        prop_assert!(is_contraction(&c, &g));
        prop_assert!(has_idempotent_projections(&c, &g));
        let (dc, dg) = dual_propagator(&c, &g);
        prop_assert!(is_contraction(&dc, &dg));
    }

    #[test]
    fn not_acyclic_exactly_when_homology(seed in any::<u64>(), h in 0usize..3) {
        let c = common::random_complex(seed, 30, h);
        let oracle = common::oracle_homology(&c);
        prop_assert_eq!(oracle, h);
        match compute_propagator(&c) {
            Ok(_) => prop_assert_eq!(oracle, 0),
            Err(MorseError::NotAcyclic { .. }) => prop_assert!(oracle > 0),
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }
}

#[test]
fn smith_rank_oracle_sanity() {
    assert_eq!(common::smith_rank(&vec![vec![2, 4], vec![1, 2]], 2), 1);
    assert_eq!(common::smith_rank(&vec![vec![2, 3], vec![4, 5]], 2), 2);
    assert_eq!(common::smith_rank(&vec![], 3), 0);
}
