//! Constructions on simplicial and multisimplicial sets: levelwise and
//! external products, diagonals, partial diagonals, and pinned slices.
//!
//! Indices of composite simplices are mixed-radix encodings of the factor
//! indices, with the rightmost factor fastest; every provider here is a
//! thin reindexing layer over its inputs.

use std::sync::Arc;

use super::{MultiSimplicialSet, SimplicialSet, SsetError};
use crate::delta::{MultiArrow, OpArrow};

/// The levelwise product: level `k` is the Cartesian product of the
/// factor levels and arrows act diagonally.
pub struct ProductSSet {
    left: Arc<dyn SimplicialSet>,
    right: Arc<dyn SimplicialSet>,
    truncation: usize,
}

pub fn product(left: Arc<dyn SimplicialSet>, right: Arc<dyn SimplicialSet>) -> ProductSSet {
    let truncation = left.truncation().min(right.truncation());
    ProductSSet {
        left,
        right,
        truncation,
    }
}

impl ProductSSet {
    pub fn split(&self, level: usize, x: usize) -> (usize, usize) {
        let rs = self.right.level_size(level);
        (x / rs, x % rs)
    }

    pub fn join(&self, level: usize, a: usize, b: usize) -> usize {
        a * self.right.level_size(level) + b
    }
}

impl SimplicialSet for ProductSSet {
    fn truncation(&self) -> usize {
        self.truncation
    }

    fn level_size(&self, level: usize) -> usize {
        assert!(level <= self.truncation, "level above truncation");
        self.left
            .level_size(level)
            .checked_mul(self.right.level_size(level))
            .expect("product level size overflow")
    }

    fn act(&self, f: &OpArrow, x: usize) -> usize {
        let (a, b) = self.split(f.source(), x);
        self.join(f.target(), self.left.act(f, a), self.right.act(f, b))
    }

    fn describe(&self, level: usize, x: usize) -> String {
        let (a, b) = self.split(level, x);
        format!(
            "({},{})",
            self.left.describe(level, a),
            self.right.describe(level, b)
        )
    }
}

/// The external product of two simplicial sets: the arity-two
/// multisimplicial set with level `(k, l)` the product of level `k` of the
/// left factor and level `l` of the right.
pub struct ExternalProduct {
    left: Arc<dyn SimplicialSet>,
    right: Arc<dyn SimplicialSet>,
}

pub fn external_product(
    left: Arc<dyn SimplicialSet>,
    right: Arc<dyn SimplicialSet>,
) -> ExternalProduct {
    ExternalProduct { left, right }
}

impl MultiSimplicialSet for ExternalProduct {
    fn arity(&self) -> usize {
        2
    }

    fn truncations(&self) -> Vec<usize> {
        vec![self.left.truncation(), self.right.truncation()]
    }

    fn level_size(&self, levels: &[usize]) -> usize {
        assert_eq!(levels.len(), 2);
        self.left
            .level_size(levels[0])
            .checked_mul(self.right.level_size(levels[1]))
            .expect("external product level size overflow")
    }

    fn act(&self, f: &MultiArrow, x: usize) -> usize {
        assert_eq!(f.arity(), 2);
        let rs = self.right.level_size(f.component(1).source());
        let (a, b) = (x / rs, x % rs);
        let a = self.left.act(f.component(0), a);
        let b = self.right.act(f.component(1), b);
        a * self.right.level_size(f.component(1).target()) + b
    }

    fn describe(&self, levels: &[usize], x: usize) -> String {
        let rs = self.right.level_size(levels[1]);
        format!(
            "({},{})",
            self.left.describe(levels[0], x / rs),
            self.right.describe(levels[1], x % rs)
        )
    }
}

/// The diagonal of a multisimplicial set: level `k` is the inner level
/// `(k, ..., k)` and an arrow acts in every direction at once.
pub struct Diag {
    inner: Arc<dyn MultiSimplicialSet>,
    truncation: usize,
}

pub fn diag(inner: Arc<dyn MultiSimplicialSet>) -> Diag {
    let truncation = inner
        .truncations()
        .into_iter()
        .min()
        .expect("arity is at least one");
    Diag { inner, truncation }
}

impl Diag {
    pub fn inner(&self) -> &Arc<dyn MultiSimplicialSet> {
        &self.inner
    }
}

impl SimplicialSet for Diag {
    fn truncation(&self) -> usize {
        self.truncation
    }

    fn level_size(&self, level: usize) -> usize {
        assert!(level <= self.truncation, "level above truncation");
        self.inner.level_size(&vec![level; self.inner.arity()])
    }

    fn act(&self, f: &OpArrow, x: usize) -> usize {
        let multi =
            MultiArrow::diagonal(f, self.inner.arity()).expect("arity is at least one");
        self.inner.act(&multi, x)
    }

    fn describe(&self, level: usize, x: usize) -> String {
        self.inner.describe(&vec![level; self.inner.arity()], x)
    }
}

/// Collapses the last `collapsed` directions of a multisimplicial set to a
/// single diagonal direction, leaving the earlier directions untouched.
pub struct PartialDiag {
    inner: Arc<dyn MultiSimplicialSet>,
    collapsed: usize,
}

pub fn partial_diag(
    inner: Arc<dyn MultiSimplicialSet>,
    collapsed: usize,
) -> Result<PartialDiag, SsetError> {
    let arity = inner.arity();
    if collapsed == 0 || collapsed > arity {
        return Err(SsetError::CollapseOutOfRange {
            width: collapsed,
            arity,
        });
    }
    Ok(PartialDiag { inner, collapsed })
}

impl PartialDiag {
    fn expand_levels(&self, levels: &[usize]) -> Vec<usize> {
        let kept = levels.len() - 1;
        let mut full = Vec::with_capacity(self.inner.arity());
        full.extend_from_slice(&levels[..kept]);
        full.extend(std::iter::repeat_n(levels[kept], self.collapsed));
        full
    }
}

impl MultiSimplicialSet for PartialDiag {
    fn arity(&self) -> usize {
        self.inner.arity() - self.collapsed + 1
    }

    fn truncations(&self) -> Vec<usize> {
        let inner = self.inner.truncations();
        let kept = self.arity() - 1;
        let mut out = inner[..kept].to_vec();
        out.push(
            inner[kept..]
                .iter()
                .copied()
                .min()
                .expect("at least one collapsed direction"),
        );
        out
    }

    fn level_size(&self, levels: &[usize]) -> usize {
        assert_eq!(levels.len(), self.arity());
        self.inner.level_size(&self.expand_levels(levels))
    }

    fn act(&self, f: &MultiArrow, x: usize) -> usize {
        assert_eq!(f.arity(), self.arity());
        let kept = self.arity() - 1;
        let mut components = f.components()[..kept].to_vec();
        components.extend(std::iter::repeat_n(f.component(kept).clone(), self.collapsed));
        let full = MultiArrow::new(components).expect("nonempty components");
        self.inner.act(&full, x)
    }

    fn describe(&self, levels: &[usize], x: usize) -> String {
        self.inner.describe(&self.expand_levels(levels), x)
    }
}

/// The simplicial set seen along one direction of a multisimplicial set,
/// with the first `ones` directions pinned at level one and the trailing
/// directions pinned at `pinned`.
pub struct SliceOnes {
    inner: Arc<dyn MultiSimplicialSet>,
    ones: usize,
    pinned: usize,
    truncation: usize,
}

pub fn slice_ones(
    inner: Arc<dyn MultiSimplicialSet>,
    ones: usize,
    pinned: usize,
) -> Result<SliceOnes, SsetError> {
    let arity = inner.arity();
    if ones >= arity {
        return Err(SsetError::DirectionOutOfRange {
            direction: ones,
            arity,
        });
    }
    let truncations = inner.truncations();
    for &t in &truncations[..ones] {
        if t < 1 {
            return Err(SsetError::TruncationExceeded {
                level: 1,
                truncation: t,
            });
        }
    }
    for &t in &truncations[ones + 1..] {
        if t < pinned {
            return Err(SsetError::TruncationExceeded {
                level: pinned,
                truncation: t,
            });
        }
    }
    let truncation = truncations[ones];
    Ok(SliceOnes {
        inner,
        ones,
        pinned,
        truncation,
    })
}

impl SliceOnes {
    fn expand_levels(&self, level: usize) -> Vec<usize> {
        let arity = self.inner.arity();
        let mut full = vec![1; self.ones];
        full.push(level);
        full.extend(std::iter::repeat_n(self.pinned, arity - self.ones - 1));
        full
    }
}

impl SimplicialSet for SliceOnes {
    fn truncation(&self) -> usize {
        self.truncation
    }

    fn level_size(&self, level: usize) -> usize {
        assert!(level <= self.truncation, "level above truncation");
        self.inner.level_size(&self.expand_levels(level))
    }

    fn act(&self, f: &OpArrow, x: usize) -> usize {
        let arity = self.inner.arity();
        let mut components = vec![OpArrow::identity(1); self.ones];
        components.push(f.clone());
        components
            .extend(std::iter::repeat_n(OpArrow::identity(self.pinned), arity - self.ones - 1));
        let full = MultiArrow::new(components).expect("nonempty components");
        self.inner.act(&full, x)
    }

    fn describe(&self, level: usize, x: usize) -> String {
        self.inner.describe(&self.expand_levels(level), x)
    }
}

/// A simplicial set viewed as an arity-one multisimplicial set.
pub struct ArityOne {
    inner: Arc<dyn SimplicialSet>,
}

pub fn arity_one(inner: Arc<dyn SimplicialSet>) -> ArityOne {
    ArityOne { inner }
}

impl MultiSimplicialSet for ArityOne {
    fn arity(&self) -> usize {
        1
    }

    fn truncations(&self) -> Vec<usize> {
        vec![self.inner.truncation()]
    }

    fn level_size(&self, levels: &[usize]) -> usize {
        assert_eq!(levels.len(), 1);
        self.inner.level_size(levels[0])
    }

    fn act(&self, f: &MultiArrow, x: usize) -> usize {
        assert_eq!(f.arity(), 1);
        self.inner.act(f.component(0), x)
    }

    fn describe(&self, levels: &[usize], x: usize) -> String {
        self.inner.describe(levels[0], x)
    }
}
