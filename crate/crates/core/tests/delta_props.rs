//! Exhaustive and property-based checks of the arrow calculus: the full
//! identity suites, factorization against an independent search oracle,
//! arrow counting against enumeration, and contravariance of op-composition.

use deloop_core::delta::{
    arrow_count_suite, compose, compose_op, cosimplicial_identity_suite, count_arrows,
    enumerate_arrows, multiplication_identity_suite, normal_form, coface, codegeneracy,
    MonotoneMap, NormalForm, OpArrow,
};
use proptest::prelude::*;

#[test]
fn cosimplicial_identities_up_to_rank_ten() {
    let suite = cosimplicial_identity_suite(10);
    assert!(suite.len() > 500);
    for check in &suite {
        assert!(check.passed, "{}: {} vs {}", check.label, check.lhs, check.rhs);
    }
}

#[test]
fn multiplication_identities_all_pass() {
    for check in multiplication_identity_suite() {
        assert!(check.passed, "{}: {} vs {}", check.label, check.lhs, check.rhs);
    }
}

#[test]
fn multiplication_identities_as_word_comparisons() {
    use deloop_core::delta::{equal_composites, segal_arrow};
    let d = |n, i| OpArrow::face(n, i).unwrap();
    let s = |n, i| OpArrow::degeneracy(n, i).unwrap();
    let id = OpArrow::identity(1);
    let pairs: Vec<(Vec<OpArrow>, Vec<OpArrow>)> = vec![
        (vec![d(2, 1), s(2, 1)], vec![id.clone()]),
        (vec![d(2, 2), s(2, 1)], vec![id]),
        (vec![d(2, 0), s(2, 1)], vec![s(1, 0), d(1, 0)]),
        (vec![segal_arrow(1, 3).unwrap()], vec![d(2, 2), d(3, 3)]),
        (vec![segal_arrow(2, 3).unwrap()], vec![d(2, 0), d(3, 3)]),
        (vec![segal_arrow(1, 3).unwrap()], vec![d(2, 2), d(3, 2)]),
        (vec![d(2, 1), d(3, 3)], vec![d(2, 2), d(3, 1)]),
        (vec![d(2, 1), d(3, 0)], vec![d(2, 0), d(3, 2)]),
        (vec![d(2, 1), d(3, 1)], vec![d(2, 1), d(3, 2)]),
    ];
    assert_eq!(pairs.len(), 9);
    for (lhs, rhs) in pairs {
        assert!(equal_composites(&lhs, &rhs).unwrap(), "{lhs:?} vs {rhs:?}");
    }
}

#[test]
fn arrow_counts_match_enumeration_up_to_six() {
    for check in arrow_count_suite(6) {
        assert!(check.passed, "{}", check.label);
    }
    for m in 0..=6 {
        for n in 0..=6 {
            assert_eq!(enumerate_arrows(m, n).len() as u128, count_arrows(m, n));
        }
    }
}

/// Strictly decreasing `size`-subsets of `0..=bound`, largest first.
fn descending_subsets(bound: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(next_max: isize, size: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == size {
            out.push(current.clone());
            return;
        }
        let mut candidate = next_max;
        while candidate >= 0 {
            current.push(candidate as usize);
            rec(candidate - 1, size, current, out);
            current.pop();
            candidate -= 1;
        }
    }
    rec(bound as isize, size, &mut current, &mut out);
    out
}

/// Independent factorization oracle: search every canonically-shaped
/// coface/codegeneracy word and recompose it.
fn factorization_oracle(f: &MonotoneMap) -> Vec<NormalForm> {
    let m = f.source_rank();
    let n = f.target_rank();
    let mut matches = Vec::new();
    for r in 0..=m.min(n) {
        let coface_lists: Vec<Vec<(usize, usize)>> = descending_subsets(n, n - r)
            .into_iter()
            .map(|indices| {
                indices
                    .into_iter()
                    .enumerate()
                    .map(|(t, i)| (n - t, i))
                    .collect::<Vec<_>>()
            })
            .filter(|pairs| pairs.iter().all(|&(rank, i)| i <= rank))
            .collect();
        let codegen_lists: Vec<Vec<(usize, usize)>> = descending_subsets(m.saturating_sub(1), m - r)
            .into_iter()
            .map(|mut indices| {
                indices.reverse();
                indices
                    .into_iter()
                    .enumerate()
                    .map(|(t, j)| (r + 1 + t, j))
                    .collect::<Vec<_>>()
            })
            .filter(|pairs| pairs.iter().all(|&(rank, j)| j < rank))
            .collect();
        for cofaces in &coface_lists {
            for codegeneracies in &codegen_lists {
                let candidate = NormalForm {
                    source_rank: m,
                    target_rank: n,
                    cofaces: cofaces.clone(),
                    codegeneracies: codegeneracies.clone(),
                };
                if let Ok(recomposed) = candidate.recompose() {
                    if &recomposed == f {
                        matches.push(candidate);
                    }
                }
            }
        }
    }
    matches
}

#[test]
fn normal_form_is_the_unique_canonical_factorization() {
    for m in 0..=4 {
        for n in 0..=4 {
            for f in enumerate_arrows(m, n) {
                let matches = factorization_oracle(&f);
                assert_eq!(matches.len(), 1, "unique factorization of {f}");
                assert_eq!(matches[0], normal_form(&f), "oracle agrees for {f}");
            }
        }
    }
}

#[test]
fn normal_form_bijects_on_ranks_up_to_six() {
    for m in 0..=6 {
        for n in 0..=6 {
            let mut seen = std::collections::HashSet::new();
            for f in enumerate_arrows(m, n) {
                let nf = normal_form(&f);
                assert_eq!(nf.recompose().unwrap(), f);
                // canonical ordering constraints
                assert!(nf.cofaces.windows(2).all(|w| w[0].1 > w[1].1));
                assert!(nf.codegeneracies.windows(2).all(|w| w[0].1 < w[1].1));
                for (t, &(rank, index)) in nf.cofaces.iter().enumerate() {
                    assert_eq!(rank, n - t);
                    assert!(index <= rank);
                }
                for (t, &(rank, index)) in nf.codegeneracies.iter().enumerate() {
                    assert!(index < rank);
                    assert_eq!(rank, m - nf.codegeneracies.len() + 1 + t);
                }
                assert!(seen.insert(nf), "distinct arrows get distinct forms");
            }
            assert_eq!(seen.len() as u128, count_arrows(m, n));
        }
    }
}

#[test]
fn composition_is_contravariant_up_to_rank_five() {
    for a in 0..=5usize {
        for b in 0..=5usize {
            let inner: Vec<_> = enumerate_arrows(a, b);
            for c in 0..=5usize {
                for g in enumerate_arrows(b, c) {
                    let g_op = OpArrow::from_monotone(g.clone());
                    for f in &inner {
                        let composite = compose(&g, f).unwrap();
                        let lhs =
                            compose_op(&OpArrow::from_monotone(f.clone()), &g_op).unwrap();
                        assert_eq!(lhs.underlying(), &composite);
                    }
                }
            }
        }
    }
}

#[test]
fn specific_factorization_values() {
    // one collapsed pair: a single codegeneracy
    let nf = normal_form(&MonotoneMap::new(1, vec![0, 0, 1]).unwrap());
    assert!(nf.cofaces.is_empty());
    assert_eq!(nf.codegeneracies, vec![(2, 0)]);
    // collapse to a point landing at 1: two cofaces over one codegeneracy
    let nf = normal_form(&MonotoneMap::new(2, vec![1, 1]).unwrap());
    assert_eq!(nf.cofaces, vec![(2, 2), (1, 0)]);
    assert_eq!(nf.codegeneracies, vec![(1, 0)]);
}

#[test]
fn generator_constructors_agree_with_factorizations() {
    for n in 1..=5 {
        for i in 0..=n {
            let nf = normal_form(&coface(n, i).unwrap());
            assert_eq!(nf.cofaces, vec![(n, i)]);
            assert!(nf.codegeneracies.is_empty());
        }
        for i in 0..n {
            let nf = normal_form(&codegeneracy(n, i).unwrap());
            assert!(nf.cofaces.is_empty());
            assert_eq!(nf.codegeneracies, vec![(n, i)]);
        }
    }
}

prop_compose! {
    fn arbitrary_monotone()(target in 0usize..7, len in 1usize..8)
        (mut values in proptest::collection::vec(0usize..=target, len), target in Just(target))
        -> MonotoneMap
    {
        values.sort_unstable();
        MonotoneMap::new(target, values).expect("sorted in-range table")
    }
}

proptest! {
    #[test]
    fn factor_and_recompose_is_identity(f in arbitrary_monotone()) {
        let nf = normal_form(&f);
        prop_assert_eq!(nf.recompose().unwrap(), f);
    }

    #[test]
    fn op_round_trip_preserves_tables(f in arbitrary_monotone(), g in arbitrary_monotone()) {
        // compose when ranks line up, otherwise both sides must reject
        let direct = compose(&g, &f);
        let opped = compose_op(
            &OpArrow::from_monotone(f.clone()),
            &OpArrow::from_monotone(g.clone()),
        );
        match (direct, opped) {
            (Ok(c), Ok(o)) => prop_assert_eq!(o.underlying(), &c),
            (Err(_), Err(_)) => {}
            (l, r) => prop_assert!(false, "disagreeing composability: {:?} vs {:?}", l, r),
        }
    }
}
