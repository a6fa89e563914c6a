//! Sparse integer Smith normal form.
//!
//! Elimination works on a row-map/column-set workspace with physical
//! row/column swaps, picking pivots of minimal magnitude with a
//! minimal-fill tie break, and reducing by truncated quotients until the
//! pivot divides its row and column. Arithmetic runs in checked `i128`
//! first and is retried with arbitrary-precision integers if anything
//! overflows, so results are exact unconditionally.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, Signed, ToPrimitive};

use super::IntMatrix;

/// Integer entry usable by the elimination: exact ring ops with overflow
/// reporting. Implemented by `i128` (checked) and `BigInt` (never fails).
pub trait SnfEntry:
    Clone
    + Ord
    + Debug
    + Integer
    + Signed
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + CheckedDiv
    + ToPrimitive
    + From<i64>
{
}

impl<T> SnfEntry for T where
    T: Clone
        + Ord
        + Debug
        + Integer
        + Signed
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + CheckedDiv
        + ToPrimitive
        + From<i64>
{
}

/// Invariant factors (including any leading ones) and the rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithNormalForm {
    pub invariant_factors: Vec<u64>,
    pub rank: usize,
}

#[derive(Debug)]
struct Overflow;

struct Workspace<T> {
    nrows: usize,
    ncols: usize,
    rows: Vec<BTreeMap<usize, T>>,
    cols: Vec<BTreeSet<usize>>,
    // dense op mirrors, kept only when transforms are requested
    u: Option<Vec<Vec<T>>>,
    v: Option<Vec<Vec<T>>>,
}

impl<T: SnfEntry> Workspace<T> {
    fn build(matrix: &IntMatrix, track: bool) -> Self {
        let nrows = matrix.nrows();
        let ncols = matrix.ncols();
        let mut rows: Vec<BTreeMap<usize, T>> = vec![BTreeMap::new(); nrows];
        let mut cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ncols];
        for (c, col) in cols.iter_mut().enumerate() {
            for &(r, value) in matrix.col(c) {
                if value != 0 {
                    rows[r].insert(c, T::from(value));
                    col.insert(r);
                }
            }
        }
        let identity = |n: usize| {
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| if i == j { T::one() } else { T::zero() })
                        .collect()
                })
                .collect()
        };
        Workspace {
            nrows,
            ncols,
            rows,
            cols,
            u: track.then(|| identity(nrows)),
            v: track.then(|| identity(ncols)),
        }
    }

    fn get(&self, r: usize, c: usize) -> T {
        self.rows[r].get(&c).cloned().unwrap_or_else(T::zero)
    }

    fn set(&mut self, r: usize, c: usize, value: T) {
        if value.is_zero() {
            self.rows[r].remove(&c);
            self.cols[c].remove(&r);
        } else {
            self.rows[r].insert(c, value);
            self.cols[c].insert(r);
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let affected: BTreeSet<usize> = self.rows[a]
            .keys()
            .chain(self.rows[b].keys())
            .copied()
            .collect();
        self.rows.swap(a, b);
        for c in affected {
            let has_a = self.rows[a].contains_key(&c);
            let has_b = self.rows[b].contains_key(&c);
            if has_a {
                self.cols[c].insert(a);
            } else {
                self.cols[c].remove(&a);
            }
            if has_b {
                self.cols[c].insert(b);
            } else {
                self.cols[c].remove(&b);
            }
        }
        if let Some(u) = &mut self.u {
            u.swap(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let affected: BTreeSet<usize> = self.cols[a]
            .iter()
            .chain(self.cols[b].iter())
            .copied()
            .collect();
        for r in affected {
            let va = self.rows[r].remove(&a);
            let vb = self.rows[r].remove(&b);
            if let Some(vb) = vb {
                self.rows[r].insert(a, vb);
            }
            if let Some(va) = va {
                self.rows[r].insert(b, va);
            }
        }
        self.cols.swap(a, b);
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                row.swap(a, b);
            }
        }
    }

    /// `row_dst -= q * row_src`
    fn row_sub(&mut self, dst: usize, src: usize, q: &T) -> Result<(), Overflow> {
        let src_entries: Vec<(usize, T)> =
            self.rows[src].iter().map(|(&c, v)| (c, v.clone())).collect();
        for (c, v) in src_entries {
            let delta = q.checked_mul(&v).ok_or(Overflow)?;
            let updated = self.get(dst, c).checked_sub(&delta).ok_or(Overflow)?;
            self.set(dst, c, updated);
        }
        if let Some(u) = &mut self.u {
            let src_row = u[src].clone();
            for (entry, s) in u[dst].iter_mut().zip(&src_row) {
                let delta = q.checked_mul(s).ok_or(Overflow)?;
                *entry = entry.checked_sub(&delta).ok_or(Overflow)?;
            }
        }
        Ok(())
    }

    /// `col_dst -= q * col_src`
    fn col_sub(&mut self, dst: usize, src: usize, q: &T) -> Result<(), Overflow> {
        let src_rows: Vec<usize> = self.cols[src].iter().copied().collect();
        for r in src_rows {
            let v = self.get(r, src);
            let delta = q.checked_mul(&v).ok_or(Overflow)?;
            let updated = self.get(r, dst).checked_sub(&delta).ok_or(Overflow)?;
            self.set(r, dst, updated);
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                let delta = q.checked_mul(&row[src]).ok_or(Overflow)?;
                row[dst] = row[dst].checked_sub(&delta).ok_or(Overflow)?;
            }
        }
        Ok(())
    }

    /// Minimal-magnitude pivot in the active region, tie-broken by least
    /// fill, with an early exit on unit pivots of negligible fill.
    fn find_pivot(&self, step: usize) -> Option<(usize, usize)> {
        let mut best: Option<(T, usize, (usize, usize))> = None;
        for r in step..self.nrows {
            for (&c, value) in self.rows[r].range(step..) {
                let magnitude = value.abs();
                let fill = (self.rows[r].len() - 1) * (self.cols[c].len() - 1);
                let better = match &best {
                    None => true,
                    Some((m, f, _)) => magnitude < *m || (magnitude == *m && fill < *f),
                };
                if better {
                    let unit = magnitude.is_one();
                    best = Some((magnitude, fill, (r, c)));
                    if unit && fill <= 2 {
                        return Some((r, c));
                    }
                }
            }
        }
        best.map(|(_, _, at)| at)
    }

    /// Reduces at `(step, step)` until the pivot is alone in its row and
    /// column; the pivot magnitude strictly decreases across iterations.
    fn clean_pivot(&mut self, step: usize) -> Result<(), Overflow> {
        loop {
            // column phase
            loop {
                let others: Vec<usize> = self.cols[step]
                    .iter()
                    .copied()
                    .filter(|&r| r != step)
                    .collect();
                if others.is_empty() {
                    break;
                }
                let smallest = others
                    .iter()
                    .copied()
                    .min_by_key(|&r| self.get(r, step).abs())
                    .expect("nonempty");
                let pivot = self.get(step, step);
                if pivot.is_zero() || self.get(smallest, step).abs() < pivot.abs() {
                    self.swap_rows(smallest, step);
                }
                let pivot = self.get(step, step);
                for r in self.cols[step]
                    .iter()
                    .copied()
                    .filter(|&r| r != step)
                    .collect::<Vec<_>>()
                {
                    let q = self
                        .get(r, step)
                        .checked_div(&pivot)
                        .ok_or(Overflow)?;
                    if !q.is_zero() {
                        self.row_sub(r, step, &q)?;
                    }
                }
            }
            // row phase; column stays clean because every other entry of
            // the pivot column is zero by now
            loop {
                let others: Vec<usize> = self.rows[step]
                    .keys()
                    .copied()
                    .filter(|&c| c != step)
                    .collect();
                if others.is_empty() {
                    break;
                }
                let smallest = others
                    .iter()
                    .copied()
                    .min_by_key(|&c| self.get(step, c).abs())
                    .expect("nonempty");
                let pivot = self.get(step, step);
                if pivot.is_zero() || self.get(step, smallest).abs() < pivot.abs() {
                    self.swap_cols(smallest, step);
                }
                let pivot = self.get(step, step);
                for c in self.rows[step]
                    .keys()
                    .copied()
                    .filter(|&c| c != step)
                    .collect::<Vec<_>>()
                {
                    let q = self
                        .get(step, c)
                        .checked_div(&pivot)
                        .ok_or(Overflow)?;
                    if !q.is_zero() {
                        self.col_sub(c, step, &q)?;
                    }
                }
            }
            // a column swap in the row phase can reintroduce entries below
            // the pivot; repeat until both are clean
            if self.cols[step].iter().all(|&r| r == step) {
                return Ok(());
            }
        }
    }

    fn run(&mut self) -> Result<usize, Overflow> {
        let steps = self.nrows.min(self.ncols);
        let mut rank = 0;
        for step in 0..steps {
            let Some((r, c)) = self.find_pivot(step) else { break };
            self.swap_rows(r, step);
            self.swap_cols(c, step);
            self.clean_pivot(step)?;
            rank += 1;
        }
        // enforce the divisibility chain along the diagonal
        loop {
            let mut changed = false;
            for i in 0..rank {
                for j in i + 1..rank {
                    let di = self.get(i, i);
                    let dj = self.get(j, j);
                    if !dj.is_multiple_of(&di) {
                        // fold column j into column i and re-reduce
                        let minus_one = T::zero().checked_sub(&T::one()).ok_or(Overflow)?;
                        self.col_sub(i, j, &minus_one)?;
                        self.clean_pivot(i)?;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        Ok(rank)
    }

    fn diagonal(&self, rank: usize) -> Vec<T> {
        (0..rank).map(|i| self.get(i, i).abs()).collect()
    }
}

fn snf_generic<T: SnfEntry>(
    matrix: &IntMatrix,
    track: bool,
) -> Result<(SmithNormalForm, Workspace<T>), Overflow> {
    let mut ws = Workspace::<T>::build(matrix, track);
    let rank = ws.run()?;
    let diagonal = ws.diagonal(rank);
    debug_assert!(diagonal
        .windows(2)
        .all(|w| w[1].is_multiple_of(&w[0])));
    let invariant_factors = diagonal
        .iter()
        .map(|d| d.to_u64().expect("invariant factor fits in u64"))
        .collect();
    Ok((
        SmithNormalForm {
            invariant_factors,
            rank,
        },
        ws,
    ))
}

/// The Smith normal form of an integer matrix: invariant factors
/// `d_1 | d_2 | ... | d_r` and the rank `r`.
pub fn smith_normal_form(matrix: &IntMatrix) -> SmithNormalForm {
    match snf_generic::<i128>(matrix, false) {
        Ok((snf, _)) => snf,
        // retry with arbitrary precision
        Err(Overflow) => {
            let (snf, _) = snf_generic::<BigInt>(matrix, true)
                .unwrap_or_else(|_| unreachable!("big integer ops do not overflow"));
            snf
        }
    }
}

/// A dense square transform matrix recorded during elimination.
pub type Transform = Vec<Vec<i128>>;

/// Smith normal form with the unimodular transforms recorded, for
/// recomposition checks on small matrices. `None` if `i128` overflows.
pub fn smith_normal_form_tracked(
    matrix: &IntMatrix,
) -> Option<(SmithNormalForm, Transform, Transform)> {
    let (snf, ws) = snf_generic::<i128>(matrix, true).ok()?;
    Some((snf, ws.u.unwrap(), ws.v.unwrap()))
}
