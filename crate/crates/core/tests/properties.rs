use std::sync::Arc;

use chein_double::identity::Term;
use chein_double::morphisms::fingerprint;
use chein_double::pair_ops::{apply, compose};
use chein_double::{
    are_isomorphic, build_double, build_group, builtin, check_identity, lemma1_gate,
    opposite_matrix, parse_identity, verify_homomorphism, CayleyTable, ElementMap, Group, Identity,
    OpMatrix, PairOp,
};
use proptest::prelude::*;

fn groups() -> Vec<Arc<Group>> {
    ["S3", "D8", "Q8", "C4", "C2xC2", "C3"]
        .iter()
        .map(|s| Arc::new(build_group(&s.parse().unwrap()).unwrap()))
        .collect()
}

fn relabel(t: &CayleyTable, perm: &[usize]) -> CayleyTable {
    let mut inv = vec![0; perm.len()];
    for (a, &b) in perm.iter().enumerate() {
        inv[b] = a;
    }
    CayleyTable::from_fn(t.order(), |r, c| perm[t.get(inv[r], inv[c])]).unwrap()
}

/// A random relabeling that keeps 0, the loop identity, in place.
fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|rest| std::iter::once(0).chain(rest).collect())
}

fn loop_matrix() -> impl Strategy<Value = OpMatrix> {
    let loops: Vec<OpMatrix> = OpMatrix::all().filter(lemma1_gate).collect();
    proptest::sample::select(loops)
}

fn random_table() -> impl Strategy<Value = CayleyTable> {
    (1usize..=6).prop_flat_map(|n| {
        proptest::collection::vec(0..n, n * n)
            .prop_map(move |cells| CayleyTable::from_fn(n, |r, c| cells[r * n + c]).unwrap())
    })
}

fn term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![Just("x"), Just("y"), Just("z"), Just("w1")].prop_map(Term::var);
    leaf.prop_recursive(5, 32, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::mul(a, b)),
            inner.prop_map(Term::inv),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn opposite_is_an_involution(i in 0usize..4096) {
        let m = OpMatrix::from_index(i);
        prop_assert_eq!(opposite_matrix(&opposite_matrix(&m)), m);
    }

    #[test]
    fn opposite_table_is_transpose(i in 0usize..4096, gi in 0usize..6) {
        let g = groups().swap_remove(gi);
        let m = OpMatrix::from_index(i);
        let d = build_double(g.clone(), m);
        let op = build_double(g, opposite_matrix(&m));
        prop_assert_eq!(op.table(), &d.table().transpose());
    }

    #[test]
    fn compose_agrees_with_apply(a in 0usize..8, b in 0usize..8, gi in 0usize..6, x in 0usize..8, y in 0usize..8) {
        let g = &groups()[gi];
        let (x, y) = (x % g.order(), y % g.order());
        let (first, then) = (PairOp::from_index(a), PairOp::from_index(b));
        let (u, v) = first.transform(g, x, y);
        prop_assert_eq!(apply(compose(first, then), x, y, g).unwrap(), apply(then, u, v, g).unwrap());
    }

    #[test]
    fn terms_round_trip(lhs in term(), rhs in term()) {
        let id = Identity::new(lhs, rhs);
        let printed = id.to_string();
        let parsed = parse_identity(&printed).unwrap();
        prop_assert_eq!(parsed, id, "{}", printed);
    }

    #[test]
    fn associativity_matches_scan(t in random_table()) {
        let n = t.order();
        let mut first = None;
        'scan: for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if t.get(t.get(x, y), z) != t.get(x, t.get(y, z)) {
                        first = Some(vec![x, y, z]);
                        break 'scan;
                    }
                }
            }
        }
        let out = check_identity(&t, &builtin("associativity").unwrap()).unwrap();
        prop_assert_eq!(out.counterexample().map(|c| c.values()), first);
        prop_assert_eq!(t.is_associative(), out.holds());
    }

    #[test]
    fn fingerprint_survives_relabeling((m, gi, perm) in (loop_matrix(), 0usize..6).prop_flat_map(|(m, gi)| {
        let n = 2 * groups()[gi].order();
        (Just(m), Just(gi), permutation(n))
    })) {
        let g = groups().swap_remove(gi);
        let t = build_double(g, m).into_table();
        prop_assert_eq!(fingerprint(&t), fingerprint(&relabel(&t, &perm)));
    }

    #[test]
    fn relabeled_loops_are_isomorphic((m, gi, perm) in (loop_matrix(), 0usize..3).prop_flat_map(|(m, gi)| {
        let n = 2 * groups()[gi].order();
        (Just(m), Just(gi), permutation(n))
    })) {
        let g = groups().swap_remove(gi);
        let t = build_double(g, m).into_table();
        let u = relabel(&t, &perm);
        let f = ElementMap::new(perm);
        prop_assert!(verify_homomorphism(&t, &u, &f).unwrap());
        let found = are_isomorphic(&t, &u).unwrap().expect("isomorphism exists");
        prop_assert!(verify_homomorphism(&t, &u, &found).unwrap());
    }
}
