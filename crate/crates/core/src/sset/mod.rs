//! Truncated simplicial and multisimplicial sets as data.
//!
//! A provider exposes finite level sets as index ranges `0..level_size(k)`
//! together with the action of opposite-category arrows on indices. All
//! providers are immutable and side-effect free; actions may be computed
//! lazily from closed formulas. Operations whose arguments would exceed a
//! truncation ceiling are rejected at the boundary.

mod explicit;
mod ops;
mod segal;

pub mod audit;

pub use explicit::{ExplicitSSet, GeneratorTable};
pub use ops::{arity_one, diag, external_product, partial_diag, product, slice_ones};
pub use ops::{ArityOne, Diag, ExternalProduct, PartialDiag, ProductSSet, SliceOnes};
pub use segal::{
    check_segal, check_segal_multi, segal_tuple, MultiSegalReport, SegalLevelReport, SegalReport,
    SegalVerdict, SliceSegalReport,
};

use thiserror::Error;

use crate::delta::{self, MultiArrow, OpArrow};

/// Errors raised at the boundaries of simplicial-set operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SsetError {
    #[error("level {level} exceeds truncation {truncation}")]
    TruncationExceeded { level: usize, truncation: usize },
    #[error("direction {direction} out of range for arity {arity}")]
    DirectionOutOfRange { direction: usize, arity: usize },
    #[error("diagonal collapse width {width} out of range for arity {arity}")]
    CollapseOutOfRange { width: usize, arity: usize },
    #[error("level-set size overflowed while {context}")]
    SizeOverflow { context: String },
    #[error(transparent)]
    Delta(#[from] delta::DeltaError),
    #[error("invalid table: {0}")]
    InvalidTable(String),
}

/// A truncated simplicial set: finite level sets indexed `0..level_size(k)`
/// for `k <= truncation`, with the opposite-category action on indices.
///
/// `act` interprets `x` as a simplex at level `f.source()` and returns a
/// simplex at level `f.target()`; both levels must be within truncation.
pub trait SimplicialSet: Send + Sync {
    fn truncation(&self) -> usize;

    fn level_size(&self, level: usize) -> usize;

    fn act(&self, f: &OpArrow, x: usize) -> usize;

    fn describe(&self, level: usize, x: usize) -> String {
        format!("{level}#{x}")
    }
}

/// A truncated multisimplicial set with one truncation ceiling per
/// direction. `act` interprets `x` at multilevel `f.sources()`.
pub trait MultiSimplicialSet: Send + Sync {
    fn arity(&self) -> usize;

    fn truncations(&self) -> Vec<usize>;

    fn level_size(&self, levels: &[usize]) -> usize;

    fn act(&self, f: &MultiArrow, x: usize) -> usize;

    fn describe(&self, levels: &[usize], x: usize) -> String {
        format!("{levels:?}#{x}")
    }
}

/// Face and degeneracy helpers usable through `dyn` references.
pub fn face(x: &dyn SimplicialSet, k: usize, i: usize, simplex: usize) -> usize {
    x.act(&OpArrow::face(k, i).expect("face index"), simplex)
}

pub fn degeneracy(x: &dyn SimplicialSet, k: usize, i: usize, simplex: usize) -> usize {
    x.act(
        &OpArrow::degeneracy(k + 1, i).expect("degeneracy index"),
        simplex,
    )
}

/// Whether a level-`k` simplex lies in the image of some degeneracy.
pub fn is_degenerate(x: &dyn SimplicialSet, k: usize, simplex: usize) -> bool {
    if k == 0 {
        return false;
    }
    (0..k).any(|i| degeneracy(x, k - 1, i, face(x, k, i, simplex)) == simplex)
}

/// A degeneracy word as `(rank, index)` pairs in application order: the
/// word `[(l+1, j_1), ..., (k, j_h)]` raises a level-`l` simplex to level
/// `k` by applying each listed degeneracy in turn. Indices are strictly
/// increasing, matching the codegeneracy half of a normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegeneracyWord(pub Vec<(usize, usize)>);

impl DegeneracyWord {
    pub fn apply(&self, x: &dyn SimplicialSet, mut level: usize, mut simplex: usize) -> usize {
        for &(rank, index) in &self.0 {
            debug_assert_eq!(rank, level + 1);
            simplex = degeneracy(x, level, index, simplex);
            level += 1;
        }
        simplex
    }
}

/// The unique nondegenerate simplex under `simplex`, together with the
/// degeneracy word that reproduces it. The word is empty exactly when the
/// simplex is nondegenerate.
pub fn nondegenerate_core(
    x: &dyn SimplicialSet,
    k: usize,
    simplex: usize,
) -> (DegeneracyWord, usize, usize) {
    // strip until nondegenerate
    let mut level = k;
    let mut current = simplex;
    while level > 0 {
        let stripped = (0..level).find_map(|i| {
            let below = face(x, level, i, current);
            (degeneracy(x, level - 1, i, below) == current).then_some(below)
        });
        match stripped {
            Some(below) => {
                current = below;
                level -= 1;
            }
            None => break,
        }
    }
    if level == k {
        return (DegeneracyWord(Vec::new()), level, current);
    }
    // recover the canonical word: exactly one surjection [k] -> [level]
    // carries the core back to the original simplex
    let mut found = None;
    for epi in delta::enumerate_arrows(k, level) {
        let values = epi.values();
        if values.last() != Some(&level) || values[0] != 0 {
            continue;
        }
        if !(0..level).all(|v| values.contains(&v)) {
            continue;
        }
        let arrow = OpArrow::from_monotone(epi.clone());
        if x.act(&arrow, current) == simplex {
            assert!(
                found.is_none(),
                "degeneracy word is not unique at level {k} simplex {simplex}"
            );
            found = Some(epi);
        }
    }
    let epi = found.expect("stripped core must lift back to the simplex");
    let word = delta::normal_form(&epi).codegeneracies;
    (DegeneracyWord(word), level, current)
}

/// The simplicial set with a single simplex in every level.
pub fn terminal(truncation: usize) -> ExplicitSSet {
    let levels = vec![1usize; truncation + 1];
    let faces = (1..=truncation)
        .flat_map(|k| {
            (0..=k).map(move |i| GeneratorTable {
                rank: k,
                index: i,
                table: vec![0],
            })
        })
        .collect();
    let degeneracies = (1..=truncation)
        .flat_map(|k| {
            (0..k).map(move |i| GeneratorTable {
                rank: k,
                index: i,
                table: vec![0],
            })
        })
        .collect();
    ExplicitSSet::new(truncation, levels, faces, degeneracies)
        .expect("terminal tables are consistent")
}

