//! The n-fold reduced bar construction of a monoid, and the multiplication
//! extracted from a Segal simplicial set.
//!
//! A level `(k_1, ..., k_n)` simplex is a grid of monoid elements of shape
//! `k_1 x ... x k_n`, encoded as a base-`|M|` numeral with the
//! first cell most significant. In each direction an inner face multiplies
//! two adjacent hyperplane slices pointwise, the outer faces drop an end
//! slice, and a degeneracy inserts a slice of units. One direction is
//! well defined for every monoid; from two directions up the interchange
//! laws force commutativity, which the constructor enforces.

use std::sync::Arc;

use thiserror::Error;

use crate::cat::FiniteMonoid;
use crate::delta::{MonotoneMap, MultiArrow, OpArrow};
use crate::sset::{
    check_segal, segal_tuple, MultiSimplicialSet, SegalVerdict, SimplicialSet, SsetError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BarError {
    #[error(
        "{fold}-fold bar construction needs a commutative monoid, but \
         {a}*{b} = {ab} while {b}*{a} = {ba}"
    )]
    NonCommutative {
        fold: usize,
        a: String,
        b: String,
        ab: String,
        ba: String,
    },
    #[error("expected {fold} truncation ceilings, found {found}")]
    TruncationArity { fold: usize, found: usize },
    #[error("fold must be at least one")]
    ZeroFold,
}

/// The reduced bar construction as a lazily evaluated multisimplicial set.
#[derive(Clone, Debug)]
pub struct BarConstruction {
    monoid: FiniteMonoid,
    fold: usize,
    truncations: Vec<usize>,
}

/// Builds the `fold`-fold reduced bar construction, rejecting
/// noncommutative monoids for `fold >= 2` with a witnessing pair.
pub fn bar(
    monoid: &FiniteMonoid,
    fold: usize,
    truncations: &[usize],
) -> Result<BarConstruction, BarError> {
    if fold == 0 {
        return Err(BarError::ZeroFold);
    }
    if truncations.len() != fold {
        return Err(BarError::TruncationArity {
            fold,
            found: truncations.len(),
        });
    }
    if fold >= 2 {
        if let Some((a, b)) = monoid.noncommutative_witness() {
            return Err(BarError::NonCommutative {
                fold,
                a: monoid.element_name(a).to_string(),
                b: monoid.element_name(b).to_string(),
                ab: monoid.element_name(monoid.mul(a, b)).to_string(),
                ba: monoid.element_name(monoid.mul(b, a)).to_string(),
            });
        }
    }
    Ok(BarConstruction::new_unchecked(monoid, fold, truncations))
}

impl BarConstruction {
    /// Skips the commutativity gate; the functoriality audit then reports
    /// the violated interchange law. Exists for negative tests.
    #[doc(hidden)]
    pub fn new_unchecked(monoid: &FiniteMonoid, fold: usize, truncations: &[usize]) -> Self {
        assert!(fold >= 1 && truncations.len() == fold);
        Self {
            monoid: monoid.clone(),
            fold,
            truncations: truncations.to_vec(),
        }
    }

    pub fn monoid(&self) -> &FiniteMonoid {
        &self.monoid
    }

    pub fn fold(&self) -> usize {
        self.fold
    }

    fn cells(levels: &[usize]) -> usize {
        levels.iter().product()
    }

    /// Exact level cardinality as a wide integer, `None` on overflow.
    pub fn level_size_checked(&self, levels: &[usize]) -> Option<u128> {
        let cells: u128 = levels.iter().map(|&k| k as u128).product();
        if cells > u32::MAX as u128 {
            return None;
        }
        (self.monoid.size() as u128).checked_pow(cells as u32)
    }

    fn decode(&self, levels: &[usize], mut x: usize) -> Vec<usize> {
        let cells = Self::cells(levels);
        let m = self.monoid.size();
        let mut entries = vec![0usize; cells];
        for p in (0..cells).rev() {
            entries[p] = x % m;
            x /= m;
        }
        debug_assert_eq!(x, 0);
        entries
    }

    fn encode(&self, entries: &[usize]) -> usize {
        let m = self.monoid.size();
        entries.iter().fold(0usize, |acc, &e| acc * m + e)
    }

    /// Applies one direction's underlying monotone map to the grid: output
    /// slice `j` is the ordered product of the input slices in positions
    /// `u(j) .. u(j+1) - 1`, the empty product being the unit.
    fn apply_direction(
        &self,
        dims: &mut [usize],
        entries: Vec<usize>,
        dir: usize,
        u: &MonotoneMap,
    ) -> Vec<usize> {
        let old_k = dims[dir];
        let new_k = u.source_rank();
        debug_assert_eq!(u.target_rank(), old_k);

        let inner: usize = dims[dir + 1..].iter().product();
        let outer: usize = dims[..dir].iter().product();
        let mut out = vec![self.monoid.unit(); outer * new_k * inner];
        for o in 0..outer {
            for j in 0..new_k {
                let lo = u.apply(j);
                let hi = u.apply(j + 1);
                for i in 0..inner {
                    let mut acc = self.monoid.unit();
                    for s in lo..hi {
                        let src = (o * old_k + s) * inner + i;
                        acc = self.monoid.mul(acc, entries[src]);
                    }
                    out[(o * new_k + j) * inner + i] = acc;
                }
            }
        }
        dims[dir] = new_k;
        out
    }
}

impl MultiSimplicialSet for BarConstruction {
    fn arity(&self) -> usize {
        self.fold
    }

    fn truncations(&self) -> Vec<usize> {
        self.truncations.clone()
    }

    fn level_size(&self, levels: &[usize]) -> usize {
        assert_eq!(levels.len(), self.fold);
        for (dir, (&k, &ceiling)) in levels.iter().zip(&self.truncations).enumerate() {
            assert!(
                k <= ceiling,
                "level {k} above truncation {ceiling} in direction {dir}"
            );
        }
        self.level_size_checked(levels)
            .and_then(|s| usize::try_from(s).ok())
            .expect("bar level size overflows usize")
    }

    fn act(&self, f: &MultiArrow, x: usize) -> usize {
        assert_eq!(f.arity(), self.fold);
        let mut dims = f.sources();
        let mut entries = self.decode(&dims, x);
        for dir in 0..self.fold {
            let component = f.component(dir);
            if !component.is_identity() {
                entries = self.apply_direction(&mut dims, entries, dir, component.underlying());
            }
        }
        self.encode(&entries)
    }

    fn describe(&self, levels: &[usize], x: usize) -> String {
        let entries = self.decode(levels, x);
        let names: Vec<_> = entries
            .iter()
            .map(|&e| self.monoid.element_name(e).to_string())
            .collect();
        format!("grid{levels:?}[{}]", names.join(","))
    }
}

/// The multiplication table carried by the level-one simplices of a Segal
/// simplicial set with a single vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HSpaceStructure {
    pub element_names: Vec<String>,
    pub unit: usize,
    pub table: Vec<Vec<usize>>,
}

impl HSpaceStructure {
    pub fn size(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }
}

#[derive(Debug, Clone, Error)]
pub enum HSpaceError {
    #[error("Segal condition fails at m = {m}: {verdict:?}")]
    SegalViolation { m: usize, verdict: SegalVerdict },
    #[error("extracted multiplication is not associative at ({a}, {b}, {c})")]
    NotAssociative { a: String, b: String, c: String },
    #[error(transparent)]
    Sset(#[from] SsetError),
}

/// Extracts the multiplication on level one: invert the level-two Segal
/// bijection, then take the inner face; the unit is the degenerate edge on
/// the unique vertex.
pub fn hspace_structure(x: &dyn SimplicialSet) -> Result<HSpaceStructure, HSpaceError> {
    let report = check_segal(x, 2)?;
    if let Some(failure) = report.first_failure() {
        return Err(HSpaceError::SegalViolation {
            m: failure.m,
            verdict: failure.verdict.clone(),
        });
    }

    let n1 = x.level_size(1);
    let mut inverse = vec![usize::MAX; n1 * n1];
    for z in 0..x.level_size(2) {
        let tuple = segal_tuple(x, 2, z);
        inverse[tuple[0] * n1 + tuple[1]] = z;
    }

    let inner_face = OpArrow::face(2, 1).expect("face in range");
    let table: Vec<Vec<usize>> = (0..n1)
        .map(|a| {
            (0..n1)
                .map(|b| x.act(&inner_face, inverse[a * n1 + b]))
                .collect()
        })
        .collect();

    let unit = x.act(&OpArrow::degeneracy(1, 0).expect("degeneracy in range"), 0);

    for a in 0..n1 {
        for b in 0..n1 {
            for c in 0..n1 {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(HSpaceError::NotAssociative {
                        a: x.describe(1, a),
                        b: x.describe(1, b),
                        c: x.describe(1, c),
                    });
                }
            }
        }
    }

    Ok(HSpaceStructure {
        element_names: (0..n1).map(|e| x.describe(1, e)).collect(),
        unit,
        table,
    })
}

/// Whether every element of the extracted multiplication has a two-sided
/// inverse.
pub fn is_grouplike(h: &HSpaceStructure) -> bool {
    let n = h.size();
    (0..n).all(|a| (0..n).any(|b| h.table[a][b] == h.unit && h.table[b][a] == h.unit))
}

/// Convenience: the bar construction seen as a simplicial set when
/// `fold = 1`, or its diagonal otherwise.
pub fn bar_diagonal(b: BarConstruction) -> crate::sset::Diag {
    crate::sset::diag(Arc::new(b) as Arc<dyn MultiSimplicialSet>)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::{monoid_as_category, nerve};
    use crate::sset::{diag, slice_ones};

    #[test]
    fn one_fold_levels_are_powers() {
        let m = FiniteMonoid::cyclic(2);
        let w = bar(&m, 1, &[3]).unwrap();
        assert_eq!(w.level_size(&[0]), 1);
        assert_eq!(w.level_size(&[3]), 8);
    }

    #[test]
    fn two_fold_grid_sizes() {
        let m = FiniteMonoid::cyclic(2);
        let w = bar(&m, 2, &[2, 2]).unwrap();
        assert_eq!(w.level_size(&[2, 2]), 16);
        assert_eq!(w.level_size(&[1, 1]), 2);
        let d = diag(Arc::new(w));
        assert_eq!(d.level_size(2), 16);
    }

    #[test]
    fn face_multiplies_adjacent_rows() {
        let m = FiniteMonoid::cyclic(2);
        let w = bar(&m, 2, &[2, 2]).unwrap();
        // grid rows (r1, r2) with r1 = (1, 0), r2 = (1, 1)
        let entries = [1usize, 0, 1, 1];
        let x = entries.iter().fold(0, |acc, &e| acc * 2 + e);
        let inner = MultiArrow::new(vec![
            OpArrow::face(2, 1).unwrap(),
            OpArrow::identity(2),
        ])
        .unwrap();
        let y = w.act(&inner, x);
        // rows multiply pointwise: (1+1, 0+1) = (0, 1), encoded big-endian
        assert_eq!(w.decode(&[1, 2], y), vec![0, 1]);
    }

    #[test]
    fn noncommutative_gate_names_witness() {
        let lz = FiniteMonoid::left_absorbing2();
        let err = bar(&lz, 2, &[2, 2]).unwrap_err();
        match err {
            BarError::NonCommutative { a, b, ab, ba, .. } => {
                assert_eq!((a.as_str(), b.as_str()), ("a", "b"));
                assert_ne!(ab, ba);
            }
            other => panic!("unexpected error {other:?}"),
        }
        assert!(bar(&lz, 1, &[3]).is_ok());
    }

    #[test]
    fn hspace_of_cyclic_nerve_recovers_the_table() {
        let m = FiniteMonoid::cyclic(3);
        let n = nerve(&monoid_as_category(&m), 2);
        let h = hspace_structure(&n).unwrap();
        assert_eq!(h.unit, m.unit());
        assert_eq!(&h.table, m.table());
        assert!(is_grouplike(&h));
    }

    #[test]
    fn hspace_of_idempotent_is_not_grouplike() {
        let m = FiniteMonoid::idempotent2();
        let n = nerve(&monoid_as_category(&m), 2);
        let h = hspace_structure(&n).unwrap();
        assert_eq!(&h.table, m.table());
        assert!(!is_grouplike(&h));
    }

    #[test]
    fn hspace_unit_of_trivial_monoid() {
        let m = FiniteMonoid::trivial();
        let n = nerve(&monoid_as_category(&m), 2);
        let h = hspace_structure(&n).unwrap();
        assert_eq!(h.size(), 1);
        assert_eq!(h.unit, 0);
    }

    #[test]
    fn hspace_rejects_multiple_vertices() {
        let n = nerve(&crate::cat::two_category(), 2);
        let err = hspace_structure(&n).unwrap_err();
        assert!(matches!(err, HSpaceError::SegalViolation { m: 0, .. }));
    }

    #[test]
    fn slice_level_one_recovers_elements() {
        let m = FiniteMonoid::cyclic(4);
        let w: Arc<dyn MultiSimplicialSet> = Arc::new(bar(&m, 2, &[2, 1]).unwrap());
        let slice = slice_ones(w, 0, 1).unwrap();
        assert_eq!(slice.level_size(1), 4);
        let h = hspace_structure(&slice).unwrap();
        assert_eq!(&h.table, m.table());
    }

    #[test]
    fn degeneracy_inserts_units() {
        let m = FiniteMonoid::cyclic(2);
        let w = bar(&m, 1, &[2]).unwrap();
        // the one-cell grid [1] lifted by the degeneracy at 0 is (0, 1)
        let lift = MultiArrow::new(vec![OpArrow::degeneracy(2, 0).unwrap()]).unwrap();
        let lifted = w.act(&lift, 1);
        assert_eq!(w.decode(&[2], lifted), vec![0, 1]);
    }
}
