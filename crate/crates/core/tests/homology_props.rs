//! Homology fixtures and oracles.
//!
//! The classifying-space fixtures come from the 2-periodic free resolution
//! of the integers over a finite cyclic group: tensoring it down gives the
//! complex Z <-0- Z <-n- Z <-0- Z <-n- ..., so the integral homology of
//! B(Z/n) is Z, Z/n, 0, Z/n, 0, ... The Smith normal form is checked
//! against a fraction-free Gaussian elimination oracle on dense matrices.

use std::sync::Arc;

use deloop_core::bar::bar;
use deloop_core::cat::{monoid_as_category, nerve, FiniteMonoid};
use deloop_core::homology::{
    homology, normalized_chains, smith_normal_form, ChainComplex, DegreeStatus, HomologyGroups,
    IntMatrix,
};
use deloop_core::sset::{diag, external_product};
use proptest::prelude::*;

/// Fraction-free (Bareiss) elimination: exact rank and determinant of a
/// small dense integer matrix, independent of the sparse elimination.
fn bareiss_rank_det(input: &[Vec<i64>]) -> (usize, i128) {
    let nrows = input.len();
    let ncols = input.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<i128>> = input
        .iter()
        .map(|row| row.iter().map(|&v| v as i128).collect())
        .collect();
    let mut prev = 1i128;
    let mut rank = 0usize;
    let mut sign = 1i128;
    for step in 0..nrows.min(ncols) {
        // find a pivot
        let pivot = (step..nrows).find(|&r| (step..ncols).any(|c| m[r][c] != 0));
        let Some(pr) = pivot else { break };
        let pc = (step..ncols).find(|&c| m[pr][c] != 0).unwrap();
        if pr != step {
            m.swap(pr, step);
            sign = -sign;
        }
        if pc != step {
            for row in m.iter_mut() {
                row.swap(pc, step);
            }
            sign = -sign;
        }
        for r in step + 1..nrows {
            for c in step + 1..ncols {
                m[r][c] = (m[r][c] * m[step][step] - m[r][step] * m[step][c]) / prev;
            }
            m[r][step] = 0;
        }
        prev = m[step][step];
        rank += 1;
    }
    let det = if nrows == ncols && rank == nrows {
        sign * prev
    } else {
        0
    };
    (rank, det)
}

#[test]
fn snf_agrees_with_bareiss_on_fixed_matrices() {
    let samples: Vec<Vec<Vec<i64>>> = vec![
        vec![vec![2, 4], vec![6, 8]],
        vec![vec![1, 0, -1], vec![0, 2, 2], vec![3, 3, 0]],
        vec![vec![0, 0], vec![0, 0]],
        vec![vec![5]],
        vec![vec![2, 3, 5], vec![7, 11, 13]],
    ];
    for rows in samples {
        let slices: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        let m = IntMatrix::from_dense(&slices);
        let snf = smith_normal_form(&m);
        let (rank, det) = bareiss_rank_det(&rows);
        assert_eq!(snf.rank, rank);
        if rows.len() == rows[0].len() {
            let product: i128 = snf
                .invariant_factors
                .iter()
                .map(|&d| d as i128)
                .product::<i128>()
                * if snf.rank == rows.len() { 1 } else { 0 };
            assert_eq!(product, det.abs());
        }
        assert!(snf
            .invariant_factors
            .windows(2)
            .all(|w| w[1] % w[0] == 0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn snf_matches_bareiss_on_random_matrices(
        rows in proptest::collection::vec(
            proptest::collection::vec(-9i64..=9, 4),
            1..=4,
        )
    ) {
        let slices: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        let m = IntMatrix::from_dense(&slices);
        let snf = smith_normal_form(&m);
        let (rank, det) = bareiss_rank_det(&rows);
        prop_assert_eq!(snf.rank, rank);
        prop_assert!(snf.invariant_factors.windows(2).all(|w| w[1] % w[0] == 0));
        if rows.len() == 4 && rank == 4 {
            let product: i128 = snf.invariant_factors.iter().map(|&d| d as i128).product();
            prop_assert_eq!(product, det.abs());
        }
    }
}

/// The homology shape `(betti, torsion)` per degree.
fn shape(h: &HomologyGroups, degrees: usize) -> Vec<(usize, Vec<u64>)> {
    (0..=degrees)
        .map(|k| {
            let (betti, torsion) = h.computed(k).expect("degree computed");
            (betti, torsion.to_vec())
        })
        .collect()
}

fn classifying_space_homology(m: &FiniteMonoid, degree: usize) -> HomologyGroups {
    let n = nerve(&monoid_as_category(m), degree + 1);
    homology(&normalized_chains(&n, degree + 1).unwrap())
}

#[test]
fn cyclic_two_classifying_space_to_degree_five() {
    let h = classifying_space_homology(&FiniteMonoid::cyclic(2), 5);
    assert_eq!(
        shape(&h, 5),
        vec![
            (1, vec![]),
            (0, vec![2]),
            (0, vec![]),
            (0, vec![2]),
            (0, vec![]),
            (0, vec![2]),
        ]
    );
}

#[test]
fn cyclic_three_classifying_space_to_degree_three() {
    let h = classifying_space_homology(&FiniteMonoid::cyclic(3), 3);
    assert_eq!(
        shape(&h, 3),
        vec![(1, vec![]), (0, vec![3]), (0, vec![]), (0, vec![3])]
    );
}

/// The tensored-down periodic resolution of a cyclic group: boundary maps
/// alternate between zero and multiplication by `n`.
fn periodic_cyclic_complex(n: i64, max_degree: usize) -> ChainComplex {
    let generators = vec![vec![0usize]; max_degree + 1];
    let boundaries = (1..=max_degree)
        .map(|k| {
            let mut m = IntMatrix::zero(1, 1);
            if k % 2 == 0 {
                m.set_col(0, vec![(0, n)]);
            }
            m
        })
        .collect();
    ChainComplex::from_parts(generators, boundaries).unwrap()
}

#[test]
fn nerve_homology_matches_the_periodic_resolution() {
    for n in [2usize, 3, 4, 6] {
        let via_nerve = classifying_space_homology(&FiniteMonoid::cyclic(n), 3);
        let via_resolution = homology(&periodic_cyclic_complex(n as i64, 4));
        assert_eq!(shape(&via_nerve, 3), shape(&via_resolution, 3), "Z/{n}");
    }
}

#[test]
fn degree_zero_is_always_the_integers() {
    // a single vertex forces one connected component
    let mut names: Vec<&str> = FiniteMonoid::builtin_commutative_names();
    names.push("leftzero2");
    for name in names {
        let m = FiniteMonoid::by_name(name).unwrap();
        let h = classifying_space_homology(&m, 1);
        assert_eq!(h.computed(0), Some((1, &[][..])), "{name}");
    }
}

#[test]
fn first_homology_is_the_abelianization() {
    for name in ["Z/2", "Z/3", "Z/4", "Z/6", "Z/2xZ/2", "trivial"] {
        let m = FiniteMonoid::by_name(name).unwrap();
        let h = classifying_space_homology(&m, 1);
        let (betti, torsion) = h.computed(1).unwrap();
        assert_eq!(betti, 0, "{name}");
        assert_eq!(
            torsion,
            m.abelian_invariant_factors().unwrap().as_slice(),
            "{name}"
        );
    }
}

#[test]
fn homology_is_independent_of_generator_order() {
    let n = nerve(&monoid_as_category(&FiniteMonoid::cyclic(3)), 4);
    let chains = normalized_chains(&n, 4).unwrap();
    // reverse the generators in every degree
    let counts: Vec<usize> = (0..=4).map(|k| chains.generator_count(k)).collect();
    let generators: Vec<Vec<usize>> = counts.iter().map(|&c| (0..c).collect()).collect();
    let boundaries = (1..=4)
        .map(|k| {
            let original = chains.boundary(k);
            let rows = counts[k - 1];
            let cols = counts[k];
            let mut permuted = IntMatrix::zero(rows, cols);
            for c in 0..cols {
                let entries = original
                    .col(cols - 1 - c)
                    .iter()
                    .map(|&(r, v)| (rows - 1 - r, v))
                    .collect();
                permuted.set_col(c, entries);
            }
            permuted
        })
        .collect();
    let permuted = ChainComplex::from_parts(generators, boundaries).unwrap();
    assert_eq!(shape(&homology(&chains), 3), shape(&homology(&permuted), 3));
}

#[test]
fn kunneth_diagonal_agrees_with_the_product_monoid() {
    let z2 = nerve(&monoid_as_category(&FiniteMonoid::cyclic(2)), 4);
    let z3 = nerve(&monoid_as_category(&FiniteMonoid::cyclic(3)), 4);
    let diagonal = diag(Arc::new(external_product(Arc::new(z2), Arc::new(z3))));
    let via_diagonal = homology(&normalized_chains(&diagonal, 4).unwrap());
    let via_product = classifying_space_homology(&FiniteMonoid::cyclic(6), 3);
    assert_eq!(shape(&via_diagonal, 3), shape(&via_product, 3));
    assert_eq!(
        shape(&via_diagonal, 3),
        vec![(1, vec![]), (0, vec![6]), (0, vec![]), (0, vec![6])]
    );
}

#[test]
fn double_bar_diagonal_shifts_the_group_into_degree_two() {
    for (name, n) in [("Z/2", 2u64), ("Z/3", 3u64)] {
        let m = FiniteMonoid::by_name(name).unwrap();
        let w = bar(&m, 2, &[3, 3]).unwrap();
        let d = diag(Arc::new(w));
        let h = homology(&normalized_chains(&d, 3).unwrap());
        assert_eq!(h.computed(0), Some((1, &[][..])), "{name}");
        assert_eq!(h.computed(1), Some((0, &[][..])), "{name}");
        assert_eq!(h.computed(2), Some((0, &[n][..])), "{name}");
    }
}

#[test]
fn chains_count_nondegenerate_strings() {
    let z2 = nerve(&monoid_as_category(&FiniteMonoid::cyclic(2)), 5);
    let chains = normalized_chains(&z2, 5).unwrap();
    for k in 0..=5 {
        assert_eq!(chains.generator_count(k), 1, "one nonunit string each");
    }
    let z3 = nerve(&monoid_as_category(&FiniteMonoid::cyclic(3)), 4);
    let chains = normalized_chains(&z3, 4).unwrap();
    for k in 0..=4u32 {
        assert_eq!(chains.generator_count(k as usize), 1 << k);
    }
}

#[test]
fn top_degree_is_reported_not_computed() {
    let z2 = nerve(&monoid_as_category(&FiniteMonoid::cyclic(2)), 2);
    let h = homology(&normalized_chains(&z2, 2).unwrap());
    assert!(matches!(
        h.degrees[2].status,
        DegreeStatus::NotComputed
    ));
    assert!(h.computed(2).is_none());
    assert!(h.computed(1).is_some());
}
