use gossip_core::reduce::{
    extract_gjp_witness_block, extract_mgtp_witness, nest_in_gossip, reduce_ds_to_mgtp,
    reduce_gtp_to_gjp, reduce_mgtp_to_gmp, strip_redundant, witness_gjp_from_gtp,
    witness_gmp_from_mgtp, witness_mgtp_from_dominating_set, BlockLayout, Family,
};
use gossip_core::{
    check_maximal_column_condition, solve_dominating_set, solve_gmp, solve_gtp, solve_mgtp,
    verify_gjp_witness, BoolMatrix, CallPair, CallSequence, Graph, ReductionError, DEFAULT_BUDGET,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn all_matrices(n: usize) -> Vec<BoolMatrix> {
    (0u32..1 << (n * n))
        .map(|bits| BoolMatrix::from_fn(n, |i, j| bits >> (i * n + j) & 1 == 1))
        .collect()
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> BoolMatrix {
    BoolMatrix::from_fn(n, |_, _| rng.random_bool(0.5))
}

#[test]
fn dominating_set_reduction_small_graphs() {
    for n in 1..=3 {
        for h in Graph::all_labeled(n) {
            for k in 1..=n {
                let inst = reduce_ds_to_mgtp(&h, k).unwrap();
                assert_eq!(inst.a.dim(), 3 * n);
                assert!(check_maximal_column_condition(&inst.a));
                let out = solve_mgtp(&inst.a, &inst.b, DEFAULT_BUDGET).unwrap();
                let oracle = solve_dominating_set(&h, k).unwrap();
                assert_eq!(out.is_found(), oracle.is_some());
                if let Some(set) = oracle {
                    let w = witness_mgtp_from_dominating_set(&h, k, &set).unwrap();
                    assert_eq!(w.apply_right(&inst.a).unwrap(), inst.b);
                }
            }
        }
    }
}

#[test]
fn nesting_factorizations_multiply_out() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6e657374);
    for n in [2usize, 3, 4] {
        for _ in 0..50 {
            let a = random_matrix(&mut rng, n);
            let (x, f) = nest_in_gossip(&a).unwrap();
            assert_eq!(x.dim(), n * (n + 1));
            assert_eq!(f.expanded.product(x.dim()).unwrap(), x);
            assert_eq!(f.conference_product(x.dim()).unwrap(), x);
            assert!(x.rect_all(0, n * n, n, n, |i, j, v| v == a.get(i, j)));
        }
    }
}

#[test]
fn nested_matrices_are_members_at_two() {
    for a in all_matrices(2) {
        let (x, _) = nest_in_gossip(&a).unwrap();
        let out = solve_gmp(&x, DEFAULT_BUDGET).unwrap();
        assert!(out.is_found());
        assert_eq!(out.witness.unwrap().product(6).unwrap(), x);
    }
}

#[test]
fn j_order_reduction_at_one() {
    let id = BoolMatrix::identity(1);
    let zero = BoolMatrix::zeros(1);
    for (a, b, yes) in [
        (&id, &id, true),
        (&zero, &zero, true),
        (&id, &zero, false),
        (&zero, &id, false),
    ] {
        let inst = reduce_gtp_to_gjp(a, b).unwrap();
        assert_eq!(inst.x.dim(), 20);
        let out = inst.solve(DEFAULT_BUDGET).unwrap();
        assert_eq!(out.is_found(), yes);
        if let Some(w) = out.witness {
            let g = extract_gjp_witness_block(&w.right, 1).unwrap();
            assert_eq!(a.mul(&g).unwrap(), *b);
        }
        assert_eq!(solve_gtp(a, b, DEFAULT_BUDGET).unwrap().is_found(), yes);
    }
}

/// Without lifting, the nested 1x1 instance for `A = [0]`, `B = [1]` is a
/// yes-instance although no `G` gives `A G = B`.
#[test]
fn unlifted_one_dimensional_nesting_is_unsound() {
    let pad = |v: bool| BoolMatrix::from_fn(2, |i, j| j == 1 || (i == 0 && v));
    let (x, _) = nest_in_gossip(&pad(false)).unwrap();
    let (y, _) = nest_in_gossip(&pad(true)).unwrap();
    let u = CallSequence::from(vec![CallPair::new(1, 3).unwrap()]);
    assert_eq!(u.apply_left(&x).unwrap(), y);
    assert!(
        !solve_gtp(&BoolMatrix::zeros(1), &BoolMatrix::identity(1), 10)
            .unwrap()
            .is_found()
    );
}

#[test]
fn canonical_j_order_witnesses_verify() {
    for a in all_matrices(2) {
        for b in all_matrices(2) {
            let Some(g) = solve_gtp(&a, &b, DEFAULT_BUDGET).unwrap().witness else {
                continue;
            };
            let inst = reduce_gtp_to_gjp(&a, &b).unwrap();
            let w = witness_gjp_from_gtp(2, &g).unwrap();
            assert!(verify_gjp_witness(&inst.y, &inst.x, &w));
            let block = extract_gjp_witness_block(&w.right, 2).unwrap();
            assert_eq!(a.mul(&block).unwrap(), b);

            let found = inst.solve(DEFAULT_BUDGET).unwrap().witness.unwrap();
            assert!(verify_gjp_witness(&inst.y, &inst.x, &found));
            let block = extract_gjp_witness_block(&found.right, 2).unwrap();
            assert_eq!(a.mul(&block).unwrap(), b);
        }
    }
}

#[test]
fn membership_layout_indices() {
    for n in 2..=4 {
        let l = BlockLayout::new(n);
        let mut seen = vec![false; l.dim() + 1];
        for i in 1..=n {
            for idx in [l.b(i), l.c(i), l.d(i), l.e(i)] {
                assert!(!seen[idx]);
                seen[idx] = true;
            }
            assert_eq!(l.family(l.b(i)), (Family::B, i));
            assert_eq!(l.family(l.e(i)), (Family::E, i));
        }
        for i in 1..=n * n {
            assert_eq!(l.family(l.a(i)), (Family::A, i));
            seen[l.a(i)] = true;
        }
        assert!(seen[1..].iter().all(|&s| s));
        let heights: usize = (1..=5).map(|r| l.row_block(r).1).sum();
        assert_eq!(heights, l.dim());
    }
}

fn mcc_matrices(n: usize) -> Vec<BoolMatrix> {
    all_matrices(n)
        .into_iter()
        .filter(check_maximal_column_condition)
        .collect()
}

#[test]
fn membership_reduction_forward_and_back_at_two() {
    let mut yes = 0;
    for a in mcc_matrices(2) {
        for b in all_matrices(2) {
            let inst = reduce_mgtp_to_gmp(&a, &b).unwrap();
            assert_eq!(inst.c.dim(), 12);
            let Some(g) = solve_gtp(&a, &b, DEFAULT_BUDGET).unwrap().witness else {
                continue;
            };
            yes += 1;
            let w = witness_gmp_from_mgtp(&a, &b, &g).unwrap();
            assert_eq!(w.product(12).unwrap(), inst.c);
            let back = extract_mgtp_witness(&a, &b, &w).unwrap();
            assert_eq!(back.apply_right(&a).unwrap(), b);
        }
    }
    assert!(yes > 0);
}

#[test]
fn membership_reduction_round_trip_at_three() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x676d70);
    let pool = mcc_matrices(3);
    for _ in 0..40 {
        let a = pool[rng.random_range(0..pool.len())].clone();
        let len = rng.random_range(0..5);
        let g: CallSequence = (0..len)
            .map(|_| {
                let i = rng.random_range(1..=3);
                let j = (i + rng.random_range(1..=2) - 1) % 3 + 1;
                CallPair::new(i, j).unwrap()
            })
            .collect();
        let b = g.apply_right(&a).unwrap();
        let w = witness_gmp_from_mgtp(&a, &b, &g).unwrap();
        assert_eq!(
            w.product(21).unwrap(),
            reduce_mgtp_to_gmp(&a, &b).unwrap().c
        );
        let back = extract_mgtp_witness(&a, &b, &w).unwrap();
        assert_eq!(back.apply_right(&a).unwrap(), b);
    }
}

#[test]
fn extraction_rejects_foreign_words() {
    let a = BoolMatrix::identity(2);
    let b = BoolMatrix::ones(2);
    let w = witness_gmp_from_mgtp(&a, &a, &CallSequence::new()).unwrap();
    assert!(matches!(
        extract_mgtp_witness(&a, &b, &w),
        Err(ReductionError::Precondition(_))
    ));
}

/// Rewrites a word without changing its product: swaps of adjacent calls on
/// disjoint pairs and duplication of single calls.
fn rewrite(word: &CallSequence, ops: &[(usize, bool)]) -> CallSequence {
    let mut calls: Vec<CallPair> = word.calls().to_vec();
    for &(pos, duplicate) in ops {
        if calls.is_empty() {
            break;
        }
        let t = pos % calls.len();
        if duplicate {
            calls.insert(t, calls[t]);
        } else if t + 1 < calls.len() {
            let (p, q) = (calls[t], calls[t + 1]);
            if !p.contains(q.i()) && !p.contains(q.j()) {
                calls.swap(t, t + 1);
            }
        }
    }
    calls.into()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn extraction_survives_rewritten_words(
        ai in 0usize..4,
        ops in proptest::collection::vec((0usize..200, any::<bool>()), 0..300)
    ) {
        let pool = mcc_matrices(2);
        let a = pool[ai % pool.len()].clone();
        let g = CallSequence::from(vec![CallPair::new(1, 2).unwrap()]);
        let b = g.apply_right(&a).unwrap();
        let w = rewrite(&witness_gmp_from_mgtp(&a, &b, &g).unwrap(), &ops);
        prop_assert_eq!(w.product(12).unwrap(), reduce_mgtp_to_gmp(&a, &b).unwrap().c);
        let back = extract_mgtp_witness(&a, &b, &w).unwrap();
        prop_assert_eq!(back.apply_right(&a).unwrap(), b);
    }

    #[test]
    fn stripping_preserves_products(
        n in 2usize..7,
        pairs in proptest::collection::vec((1usize..7, 1usize..7), 0..30)
    ) {
        let w: CallSequence = pairs
            .into_iter()
            .filter(|&(i, j)| i != j && i <= n && j <= n)
            .map(|(i, j)| CallPair::new(i, j).unwrap())
            .collect();
        let s = strip_redundant(n, &w).unwrap();
        prop_assert_eq!(s.product(n).unwrap(), w.product(n).unwrap());
        prop_assert_eq!(strip_redundant(n, &s).unwrap(), s.clone());
        prop_assert!(s.len() <= w.len());
    }
}
