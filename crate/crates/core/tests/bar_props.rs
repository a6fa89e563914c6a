//! Bar-construction properties: agreement with the nerve in one
//! direction, Segal bijectivity of every pinned slice, recovery of the
//! monoid multiplication from level one in every direction, and the
//! interchange failure when the commutativity gate is bypassed.

use std::sync::Arc;

use deloop_core::bar::{bar, hspace_structure, is_grouplike, BarConstruction, BarError};
use deloop_core::cat::{monoid_as_category, nerve, FiniteMonoid};
use deloop_core::delta::{enumerate_arrows, OpArrow};
use deloop_core::sset::audit::{audit_multisimplicial, audit_simplicial_sampled};
use deloop_core::sset::{
    check_segal_multi, diag, partial_diag, slice_ones, MultiSimplicialSet, SimplicialSet,
};

fn commutative_builtins() -> Vec<(String, FiniteMonoid)> {
    FiniteMonoid::builtin_commutative_names()
        .into_iter()
        .map(|name| (name.to_string(), FiniteMonoid::by_name(name).unwrap()))
        .collect()
}

#[test]
fn one_fold_bar_is_the_nerve_of_the_delooping() {
    // including a noncommutative monoid: one direction needs no gate
    let mut monoids = commutative_builtins();
    monoids.push(("leftzero2".into(), FiniteMonoid::left_absorbing2()));
    for (name, m) in monoids {
        let w = bar(&m, 1, &[3]).unwrap();
        let d = diag(Arc::new(w));
        let n = nerve(&monoid_as_category(&m), 3);
        for k in 0..=3 {
            assert_eq!(d.level_size(k), n.level_size(k), "{name} level {k}");
        }
        // grid and string encodings coincide index by index
        for k in 0..=3usize {
            for l in 0..=3usize {
                for u in enumerate_arrows(l, k) {
                    let op = OpArrow::from_monotone(u);
                    for x in 0..d.level_size(k) {
                        assert_eq!(d.act(&op, x), n.act(&op, x), "{name} at level {k}");
                    }
                }
            }
        }
    }
}

#[test]
fn bar_passes_the_functoriality_audit() {
    for (name, m) in commutative_builtins() {
        let one = bar(&m, 1, &[4]).unwrap();
        audit_multisimplicial(&one, 256).unwrap_or_else(|e| panic!("{name} fold 1: {e}"));
        let two = bar(&m, 2, &[3, 3]).unwrap();
        audit_multisimplicial(&two, 64).unwrap_or_else(|e| panic!("{name} fold 2: {e}"));
    }
    // a deeper sample for the smallest group: rank-four arrows in every
    // direction. Three uniform ceilings of four would put 2^64 cells in
    // the top level, past the address space, so the three-direction sweep
    // raises one direction at a time.
    let z2 = FiniteMonoid::cyclic(2);
    for ceilings in [[4, 2, 2], [2, 4, 2], [2, 2, 4]] {
        let three = bar(&z2, 3, &ceilings).unwrap();
        audit_multisimplicial(&three, 8).unwrap();
    }
    let two_deep = bar(&z2, 2, &[4, 4]).unwrap();
    audit_multisimplicial(&two_deep, 32).unwrap();
    let diag2 = diag(Arc::new(bar(&z2, 2, &[4, 4]).unwrap()));
    audit_simplicial_sampled(&diag2, 64).unwrap();
}

#[test]
fn bypassed_gate_fails_interchange_with_a_witness() {
    let lz = FiniteMonoid::left_absorbing2();
    assert!(matches!(
        bar(&lz, 2, &[2, 2]),
        Err(BarError::NonCommutative { .. })
    ));
    let forced = BarConstruction::new_unchecked(&lz, 2, &[2, 2]);
    let failure = audit_multisimplicial(&forced, usize::MAX).unwrap_err();
    assert!(
        failure.law.contains("interchange"),
        "audit reports the violated law: {failure}"
    );
}

#[test]
fn segal_condition_holds_for_every_slice() {
    for (name, m) in commutative_builtins() {
        let w: Arc<dyn MultiSimplicialSet> = Arc::new(bar(&m, 2, &[3, 3]).unwrap());
        let report = check_segal_multi(w, 3, 2).unwrap();
        assert!(report.all_bijective(), "{name} has a Segal failure");
    }
    // one direction reduces to the plain check on the nerve-like object
    let z3: Arc<dyn MultiSimplicialSet> = Arc::new(bar(&FiniteMonoid::cyclic(3), 1, &[4]).unwrap());
    let report = check_segal_multi(z3, 4, 3).unwrap();
    assert!(report.all_bijective());
    assert_eq!(report.slices.len(), 4);

    // in one direction even a noncommutative monoid is Segal: the level-m
    // set is the m-th power and the edge projections re-tuple it
    let lz: Arc<dyn MultiSimplicialSet> =
        Arc::new(bar(&FiniteMonoid::left_absorbing2(), 1, &[4]).unwrap());
    assert!(check_segal_multi(lz, 4, 2).unwrap().all_bijective());
}

#[test]
fn multiplication_is_recovered_in_every_direction() {
    for (name, m) in commutative_builtins() {
        // one direction
        let w1 = bar(&m, 1, &[2]).unwrap();
        let h = hspace_structure(&diag(Arc::new(w1))).unwrap();
        assert_eq!(&h.table, m.table(), "{name} fold 1");
        assert_eq!(h.unit, m.unit(), "{name} fold 1 unit");

        // both slices of two directions agree with the table and with
        // each other
        let mut tables = Vec::new();
        for ones in 0..2usize {
            let w: Arc<dyn MultiSimplicialSet> = Arc::new(bar(&m, 2, &[2, 2]).unwrap());
            let slice = slice_ones(w, ones, 1).unwrap();
            let h = hspace_structure(&slice).unwrap();
            assert_eq!(&h.table, m.table(), "{name} slice {ones}");
            assert_eq!(h.unit, m.unit(), "{name} slice {ones} unit");
            tables.push(h.table);
        }
        assert_eq!(tables[0], tables[1], "{name} directions agree");

        // grouplike exactly when the monoid is a group
        let h = hspace_structure(&diag(Arc::new(bar(&m, 1, &[2]).unwrap()))).unwrap();
        assert_eq!(is_grouplike(&h), m.is_group(), "{name} grouplike");
    }
}

#[test]
fn grid_cardinalities() {
    let z2 = FiniteMonoid::cyclic(2);
    let w2 = bar(&z2, 2, &[3, 3]).unwrap();
    assert_eq!(w2.level_size(&[2, 2]), 16);
    let d = diag(Arc::new(bar(&z2, 2, &[2, 2]).unwrap()));
    assert_eq!(d.level_size(2), 16);

    // collapsing the last two of three directions leaves m-by-l-by-l grids
    let w3: Arc<dyn MultiSimplicialSet> = Arc::new(bar(&z2, 3, &[2, 2, 2]).unwrap());
    let p = partial_diag(w3, 2).unwrap();
    for m in 0..=2usize {
        for l in 0..=2usize {
            assert_eq!(p.level_size(&[m, l]), 1usize << (m * l * l));
        }
    }

    // pinned slices have power cardinalities in the free direction
    let w: Arc<dyn MultiSimplicialSet> = Arc::new(bar(&z2, 2, &[3, 1]).unwrap());
    let s = slice_ones(w.clone(), 0, 1).unwrap();
    for m in 0..=3 {
        assert_eq!(s.level_size(m), 1 << m);
    }
    let s = slice_ones(w, 1, 0).unwrap();
    for m in 0..=1usize {
        assert_eq!(s.level_size(m), 1 << m);
    }
}

#[test]
fn segal_violation_is_reported_for_multi_vertex_levels() {
    // an explicit multisimplicial set with two cells at the origin level:
    // the external square of the walking arrow nerve
    use deloop_core::sset::external_product;
    let two = nerve(&deloop_core::cat::two_category(), 2);
    let ext: Arc<dyn MultiSimplicialSet> = Arc::new(external_product(
        Arc::new(nerve(&deloop_core::cat::two_category(), 2)),
        Arc::new(two),
    ));
    let report = check_segal_multi(ext, 2, 1).unwrap();
    assert!(!report.all_bijective());
    let first = &report.slices[0];
    assert_eq!((first.ones, first.pinned), (0, 0));
    assert!(!first.report.levels[0].verdict.is_bijective());
}
