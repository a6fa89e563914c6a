//! Exact arrow calculus for the simplicial category and its opposite.
//!
//! Objects are the nonempty finite ordinals `[0], [1], [2], ...`,
//! represented by their rank. An arrow `[m] -> [n]` is a monotone map
//! stored as its full value table, so equality of arrows — and hence of
//! arbitrary composites — is table comparison. Coface/codegeneracy words
//! are derived views obtained through [`normal_form`].

use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Errors from arrow construction and composition.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeltaError {
    #[error("{what} index {index} out of range at rank {rank}")]
    IndexOutOfRange {
        what: &'static str,
        rank: usize,
        index: usize,
    },
    #[error("rank mismatch composing {outer} after {inner}")]
    RankMismatch { outer: String, inner: String },
    #[error("value table must be nondecreasing: {0:?}")]
    NotMonotone(Vec<usize>),
    #[error("value {value} exceeds target rank {target_rank}")]
    ValueOutOfRange { value: usize, target_rank: usize },
    #[error("value table is empty: objects are nonempty ordinals")]
    EmptyTable,
    #[error("empty composition word")]
    EmptyWord,
    #[error("word endpoints differ: {0} vs {1}")]
    EndpointMismatch(String, String),
    #[error("a multi-arrow needs at least one component")]
    EmptyMultiArrow,
}

/// A monotone map `[m] -> [n]`: the value table has length `m + 1`, is
/// nondecreasing, and every value is at most `n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonotoneMap {
    target_rank: usize,
    values: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(target_rank: usize, values: Vec<usize>) -> Result<Self, DeltaError> {
        if values.is_empty() {
            return Err(DeltaError::EmptyTable);
        }
        if let Some(w) = values.windows(2).find(|w| w[0] > w[1]) {
            let _ = w;
            return Err(DeltaError::NotMonotone(values));
        }
        let last = *values.last().unwrap();
        if last > target_rank {
            return Err(DeltaError::ValueOutOfRange {
                value: last,
                target_rank,
            });
        }
        Ok(Self {
            target_rank,
            values,
        })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            target_rank: n,
            values: (0..=n).collect(),
        }
    }

    /// The `m` of `[m] -> [n]`.
    pub fn source_rank(&self) -> usize {
        self.values.len() - 1
    }

    /// The `n` of `[m] -> [n]`.
    pub fn target_rank(&self) -> usize {
        self.target_rank
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }

    pub fn is_identity(&self) -> bool {
        self.source_rank() == self.target_rank
            && self.values.iter().enumerate().all(|(i, &v)| i == v)
    }
}

impl fmt::Display for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}]->[{}] ({})",
            self.source_rank(),
            self.target_rank,
            self.values
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

impl fmt::Debug for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The `i`-th coface `[n-1] -> [n]`: the injection whose image omits `i`.
pub fn coface(n: usize, i: usize) -> Result<MonotoneMap, DeltaError> {
    if n == 0 || i > n {
        return Err(DeltaError::IndexOutOfRange {
            what: "coface",
            rank: n,
            index: i,
        });
    }
    let values = (0..n).map(|j| if j < i { j } else { j + 1 }).collect();
    Ok(MonotoneMap {
        target_rank: n,
        values,
    })
}

/// The `i`-th codegeneracy `[n] -> [n-1]`: the surjection hitting `i` twice.
pub fn codegeneracy(n: usize, i: usize) -> Result<MonotoneMap, DeltaError> {
    if n == 0 || i > n - 1 {
        return Err(DeltaError::IndexOutOfRange {
            what: "codegeneracy",
            rank: n,
            index: i,
        });
    }
    let values = (0..=n).map(|j| if j <= i { j } else { j - 1 }).collect();
    Ok(MonotoneMap {
        target_rank: n - 1,
        values,
    })
}

/// Composition `g ∘ f` by value-table lookup.
pub fn compose(g: &MonotoneMap, f: &MonotoneMap) -> Result<MonotoneMap, DeltaError> {
    if f.target_rank() != g.source_rank() {
        return Err(DeltaError::RankMismatch {
            outer: g.to_string(),
            inner: f.to_string(),
        });
    }
    let values = f.values.iter().map(|&v| g.values[v]).collect();
    Ok(MonotoneMap {
        target_rank: g.target_rank,
        values,
    })
}

/// An arrow of the opposite category, wrapping the monotone map it
/// reverses: an op-arrow `[n] -> [m]` carries a monotone map `[m] -> [n]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OpArrow {
    underlying: MonotoneMap,
}

impl OpArrow {
    pub fn from_monotone(underlying: MonotoneMap) -> Self {
        Self { underlying }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            underlying: MonotoneMap::identity(n),
        }
    }

    /// The `i`-th face `[n] -> [n-1]`, reversing the `i`-th coface.
    pub fn face(n: usize, i: usize) -> Result<Self, DeltaError> {
        coface(n, i).map(Self::from_monotone)
    }

    /// The `i`-th degeneracy `[n-1] -> [n]`, reversing the `i`-th
    /// codegeneracy.
    pub fn degeneracy(n: usize, i: usize) -> Result<Self, DeltaError> {
        codegeneracy(n, i).map(Self::from_monotone)
    }

    pub fn source(&self) -> usize {
        self.underlying.target_rank()
    }

    pub fn target(&self) -> usize {
        self.underlying.source_rank()
    }

    pub fn underlying(&self) -> &MonotoneMap {
        &self.underlying
    }

    pub fn is_identity(&self) -> bool {
        self.underlying.is_identity()
    }
}

impl fmt::Display for OpArrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "op({})", self.underlying)
    }
}

impl fmt::Debug for OpArrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Composition in the opposite category: `(g ∘ f)` reverses
/// `f.underlying ∘ g.underlying`.
pub fn compose_op(g: &OpArrow, f: &OpArrow) -> Result<OpArrow, DeltaError> {
    if f.target() != g.source() {
        return Err(DeltaError::RankMismatch {
            outer: g.to_string(),
            inner: f.to_string(),
        });
    }
    Ok(OpArrow {
        underlying: compose(&f.underlying, &g.underlying)?,
    })
}

/// The `j`-th edge projection `[m] -> [1]` of the opposite category,
/// `1 <= j <= m`: its underlying monotone map sends `0, 1` to `j-1, j`.
pub fn segal_arrow(j: usize, m: usize) -> Result<OpArrow, DeltaError> {
    if m == 0 || j == 0 || j > m {
        return Err(DeltaError::IndexOutOfRange {
            what: "edge projection",
            rank: m,
            index: j,
        });
    }
    Ok(OpArrow {
        underlying: MonotoneMap::new(m, vec![j - 1, j])?,
    })
}

/// Evaluates a nonempty word of op-arrows, written outermost first:
/// `[g, h]` denotes `g ∘ h`.
pub fn evaluate_word(word: &[OpArrow]) -> Result<OpArrow, DeltaError> {
    let (last, rest) = word.split_last().ok_or(DeltaError::EmptyWord)?;
    let mut acc = last.clone();
    for arrow in rest.iter().rev() {
        acc = compose_op(arrow, &acc)?;
    }
    Ok(acc)
}

/// Decides whether two composition words denote the same arrow of the
/// opposite category. Both words must share source and target.
pub fn equal_composites(word1: &[OpArrow], word2: &[OpArrow]) -> Result<bool, DeltaError> {
    let lhs = evaluate_word(word1)?;
    let rhs = evaluate_word(word2)?;
    if lhs.source() != rhs.source() || lhs.target() != rhs.target() {
        return Err(DeltaError::EndpointMismatch(
            format!("[{}]->[{}]", lhs.source(), lhs.target()),
            format!("[{}]->[{}]", rhs.source(), rhs.target()),
        ));
    }
    Ok(lhs == rhs)
}

/// The unique coface/codegeneracy factorization of a monotone map.
///
/// `cofaces` lists `(rank, index)` pairs outermost first with strictly
/// decreasing indices; `codegeneracies` lists `(rank, index)` pairs
/// outermost first with strictly increasing indices. Composing all listed
/// cofaces after all listed codegeneracies reproduces the original map.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalForm {
    pub source_rank: usize,
    pub target_rank: usize,
    pub cofaces: Vec<(usize, usize)>,
    pub codegeneracies: Vec<(usize, usize)>,
}

impl NormalForm {
    pub fn recompose(&self) -> Result<MonotoneMap, DeltaError> {
        let mut acc = MonotoneMap::identity(self.source_rank);
        for &(rank, index) in self.codegeneracies.iter().rev() {
            acc = compose(&codegeneracy(rank, index)?, &acc)?;
        }
        for &(rank, index) in self.cofaces.iter().rev() {
            acc = compose(&coface(rank, index)?, &acc)?;
        }
        Ok(acc)
    }

    pub fn is_identity(&self) -> bool {
        self.cofaces.is_empty() && self.codegeneracies.is_empty()
    }
}

/// Factors a monotone map as cofaces after codegeneracies.
///
/// The cofaces insert the gaps of the image from the largest down; the
/// codegeneracies collapse the repeated positions from the smallest up.
pub fn normal_form(f: &MonotoneMap) -> NormalForm {
    let m = f.source_rank();
    let n = f.target_rank();
    let values = f.values();

    let mut image = values.to_vec();
    image.dedup();
    let r = image.len() - 1;

    let mut cofaces = Vec::with_capacity(n - r);
    let mut rank = n;
    for t in (0..=n).rev() {
        if image.binary_search(&t).is_err() {
            cofaces.push((rank, t));
            rank -= 1;
        }
    }

    let mut codegeneracies = Vec::with_capacity(m - r);
    let mut rank = r + 1;
    for j in 0..m {
        if values[j] == values[j + 1] {
            codegeneracies.push((rank, j));
            rank += 1;
        }
    }

    NormalForm {
        source_rank: m,
        target_rank: n,
        cofaces,
        codegeneracies,
    }
}

/// A tuple of op-arrows, one per simplicial direction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiArrow {
    components: Vec<OpArrow>,
}

impl MultiArrow {
    pub fn new(components: Vec<OpArrow>) -> Result<Self, DeltaError> {
        if components.is_empty() {
            return Err(DeltaError::EmptyMultiArrow);
        }
        Ok(Self { components })
    }

    /// The same op-arrow in every direction.
    pub fn diagonal(f: &OpArrow, arity: usize) -> Result<Self, DeltaError> {
        Self::new(vec![f.clone(); arity])
    }

    pub fn identity(levels: &[usize]) -> Result<Self, DeltaError> {
        Self::new(levels.iter().map(|&k| OpArrow::identity(k)).collect())
    }

    pub fn arity(&self) -> usize {
        self.components.len()
    }

    pub fn component(&self, direction: usize) -> &OpArrow {
        &self.components[direction]
    }

    pub fn components(&self) -> &[OpArrow] {
        &self.components
    }

    pub fn sources(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.source()).collect()
    }

    pub fn targets(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.target()).collect()
    }
}

impl fmt::Debug for MultiArrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.components).finish()
    }
}

/// Componentwise composition of multi-arrows.
pub fn compose_multi(g: &MultiArrow, f: &MultiArrow) -> Result<MultiArrow, DeltaError> {
    if g.arity() != f.arity() {
        return Err(DeltaError::RankMismatch {
            outer: format!("{g:?}"),
            inner: format!("{f:?}"),
        });
    }
    let components = g
        .components
        .iter()
        .zip(&f.components)
        .map(|(gc, fc)| compose_op(gc, fc))
        .collect::<Result<_, _>>()?;
    MultiArrow::new(components)
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc = acc
            .checked_mul((n - k + i) as u128)
            .expect("binomial overflow")
            / i as u128;
    }
    acc
}

/// The number of monotone maps `[m] -> [n]`, which is
/// `binomial(n + m + 1, m + 1)`.
pub fn count_arrows(m: usize, n: usize) -> u128 {
    binomial(n + m + 1, m + 1)
}

/// All monotone maps `[m] -> [n]` in lexicographic value-table order.
pub fn enumerate_arrows(m: usize, n: usize) -> Vec<MonotoneMap> {
    let mut out = Vec::new();
    let mut values = vec![0usize; m + 1];
    loop {
        out.push(MonotoneMap {
            target_rank: n,
            values: values.clone(),
        });
        // advance to the next nondecreasing table
        let mut pos = m + 1;
        while pos > 0 {
            pos -= 1;
            if values[pos] < n {
                let v = values[pos] + 1;
                for entry in values.iter_mut().skip(pos) {
                    *entry = v;
                }
                break;
            }
            if pos == 0 {
                return out;
            }
        }
    }
}

/// One evaluated identity between two composition words; both sides are
/// rendered as value tables so failures are self-describing.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub label: String,
    pub lhs: String,
    pub rhs: String,
    pub passed: bool,
}

impl IdentityCheck {
    fn of_maps(label: String, lhs: &MonotoneMap, rhs: &MonotoneMap) -> Self {
        IdentityCheck {
            label,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            passed: lhs == rhs,
        }
    }

    fn of_words(label: String, lhs: &[OpArrow], rhs: &[OpArrow]) -> Self {
        let l = evaluate_word(lhs).expect("composable word");
        let r = evaluate_word(rhs).expect("composable word");
        IdentityCheck {
            label,
            lhs: l.to_string(),
            rhs: r.to_string(),
            passed: l == r,
        }
    }
}

/// Checks every coface/codegeneracy relation whose composite ranks stay
/// at or below `max_rank`.
pub fn cosimplicial_identity_suite(max_rank: usize) -> Vec<IdentityCheck> {
    let mut out = Vec::new();
    // coface-coface: d_j d_i = d_i d_{j-1} for i < j
    for n in 1..max_rank {
        for j in 0..=n + 1 {
            for i in 0..j.min(n + 1) {
                let lhs = compose(&coface(n + 1, j).unwrap(), &coface(n, i).unwrap()).unwrap();
                let rhs = compose(&coface(n + 1, i).unwrap(), &coface(n, j - 1).unwrap()).unwrap();
                out.push(IdentityCheck::of_maps(
                    format!("d{}_{} d{}_{} = d{}_{} d{}_{}", n + 1, j, n, i, n + 1, i, n, j - 1),
                    &lhs,
                    &rhs,
                ));
            }
        }
    }
    // codegeneracy-codegeneracy: s_j s_i = s_i s_{j+1} for i <= j
    for n in 1..max_rank {
        for j in 0..n {
            for i in 0..=j {
                let lhs =
                    compose(&codegeneracy(n, j).unwrap(), &codegeneracy(n + 1, i).unwrap())
                        .unwrap();
                let rhs =
                    compose(&codegeneracy(n, i).unwrap(), &codegeneracy(n + 1, j + 1).unwrap())
                        .unwrap();
                out.push(IdentityCheck::of_maps(
                    format!("s{}_{} s{}_{} = s{}_{} s{}_{}", n, j, n + 1, i, n, i, n + 1, j + 1),
                    &lhs,
                    &rhs,
                ));
            }
        }
    }
    // mixed: s_j d_i with the identity, lower and upper shift cases
    for n in 1..=max_rank.saturating_sub(1) {
        for j in 0..=n {
            for i in 0..=n + 1 {
                let composite =
                    compose(&codegeneracy(n + 1, j).unwrap(), &coface(n + 1, i).unwrap()).unwrap();
                let (rhs, label) = if i == j || i == j + 1 {
                    (
                        MonotoneMap::identity(n),
                        format!("s{}_{} d{}_{} = id", n + 1, j, n + 1, i),
                    )
                } else if i < j {
                    (
                        compose(&coface(n, i).unwrap(), &codegeneracy(n, j - 1).unwrap()).unwrap(),
                        format!("s{}_{} d{}_{} = d{}_{} s{}_{}", n + 1, j, n + 1, i, n, i, n, j - 1),
                    )
                } else {
                    (
                        compose(&coface(n, i - 1).unwrap(), &codegeneracy(n, j).unwrap()).unwrap(),
                        format!("s{}_{} d{}_{} = d{}_{} s{}_{}", n + 1, j, n + 1, i, n, i - 1, n, j),
                    )
                };
                out.push(IdentityCheck::of_maps(label, &composite, &rhs));
            }
        }
    }
    out
}

/// The face/degeneracy identities behind unitality and associativity of
/// the multiplication extracted from a Segal simplicial set, checked as
/// equalities of opposite-category composites.
pub fn multiplication_identity_suite() -> Vec<IdentityCheck> {
    let d = |n, i| OpArrow::face(n, i).unwrap();
    let s = |n, i| OpArrow::degeneracy(n, i).unwrap();
    let edge = |j, m| segal_arrow(j, m).unwrap();
    vec![
        IdentityCheck::of_words(
            "d2_1 s2_1 = id".into(),
            &[d(2, 1), s(2, 1)],
            &[OpArrow::identity(1)],
        ),
        IdentityCheck::of_words(
            "d2_2 s2_1 = id".into(),
            &[d(2, 2), s(2, 1)],
            &[OpArrow::identity(1)],
        ),
        IdentityCheck::of_words(
            "d2_0 s2_1 = s1_0 d1_0".into(),
            &[d(2, 0), s(2, 1)],
            &[s(1, 0), d(1, 0)],
        ),
        IdentityCheck::of_words(
            "edge_1 = d2_2 d3_3".into(),
            &[edge(1, 3)],
            &[d(2, 2), d(3, 3)],
        ),
        IdentityCheck::of_words(
            "edge_2 = d2_0 d3_3".into(),
            &[edge(2, 3)],
            &[d(2, 0), d(3, 3)],
        ),
        IdentityCheck::of_words(
            "edge_1 = d2_2 d3_2".into(),
            &[edge(1, 3)],
            &[d(2, 2), d(3, 2)],
        ),
        IdentityCheck::of_words(
            "d2_1 d3_3 = d2_2 d3_1".into(),
            &[d(2, 1), d(3, 3)],
            &[d(2, 2), d(3, 1)],
        ),
        IdentityCheck::of_words(
            "d2_1 d3_0 = d2_0 d3_2".into(),
            &[d(2, 1), d(3, 0)],
            &[d(2, 0), d(3, 2)],
        ),
        IdentityCheck::of_words(
            "d2_1 d3_1 = d2_1 d3_2".into(),
            &[d(2, 1), d(3, 1)],
            &[d(2, 1), d(3, 2)],
        ),
    ]
}

/// Compares the closed arrow-count formula against full enumeration for
/// all source/target ranks up to `max_rank`.
pub fn arrow_count_suite(max_rank: usize) -> Vec<IdentityCheck> {
    let mut out = Vec::new();
    for m in 0..=max_rank {
        for n in 0..=max_rank {
            let counted = count_arrows(m, n);
            let enumerated = enumerate_arrows(m, n).len() as u128;
            out.push(IdentityCheck {
                label: format!("|hom([{m}],[{n}])| = C({},{})", n + m + 1, m + 1),
                lhs: counted.to_string(),
                rhs: enumerated.to_string(),
                passed: counted == enumerated,
            });
        }
    }
    out
}
