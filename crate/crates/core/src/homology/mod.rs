//! Normalized integer chains of a truncated simplicial set and homology
//! through the Smith normal form.
//!
//! Generators in degree `k` are the nondegenerate level-`k` simplices; the
//! boundary of a generator is the alternating sum of its faces with
//! degenerate faces dropped. Homology in degree `k` needs the boundary out
//! of degree `k + 1`, so the top degree of a complex is reported as not
//! computed rather than silently truncated to zero.

mod snf;

pub use snf::{smith_normal_form, smith_normal_form_tracked, SmithNormalForm};

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::sset::{face, is_degenerate, SimplicialSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("degree {degree} exceeds truncation {truncation}")]
    TruncationExceeded { degree: usize, truncation: usize },
    #[error(
        "boundary condition violated in degree {degree}: composite entry \
         ({row}, {col}) is {value}"
    )]
    BoundaryCondition {
        degree: usize,
        row: usize,
        col: usize,
        value: i64,
    },
    #[error("boundary matrix shape mismatch at degree {degree}")]
    Shape { degree: usize },
}

/// A sparse integer matrix in column-major form.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntMatrix {
    nrows: usize,
    cols: Vec<Vec<(usize, i64)>>,
}

impl IntMatrix {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        Self {
            nrows,
            cols: vec![Vec::new(); ncols],
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn col(&self, c: usize) -> &[(usize, i64)] {
        &self.cols[c]
    }

    /// Sets the entries of one column from `(row, value)` pairs; rows must
    /// be distinct.
    pub fn set_col(&mut self, c: usize, mut entries: Vec<(usize, i64)>) {
        entries.retain(|&(_, v)| v != 0);
        entries.sort_unstable_by_key(|&(r, _)| r);
        debug_assert!(entries.iter().all(|&(r, _)| r < self.nrows));
        debug_assert!(entries.windows(2).all(|w| w[0].0 != w[1].0));
        self.cols[c] = entries;
    }

    pub fn from_dense(rows: &[&[i64]]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zero(nrows, ncols);
        for c in 0..ncols {
            let entries = rows
                .iter()
                .enumerate()
                .filter_map(|(r, row)| (row[c] != 0).then_some((r, row[c])))
                .collect();
            m.set_col(c, entries);
        }
        m
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0i64; self.ncols()]; self.nrows];
        for (c, col) in self.cols.iter().enumerate() {
            for &(r, v) in col {
                out[r][c] = v;
            }
        }
        out
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }
}

/// A chain complex of free abelian groups with exact integer boundaries.
/// `generators[k]` records which ambient simplex each degree-`k` generator
/// came from; synthetic complexes just use consecutive numbers.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    max_degree: usize,
    generators: Vec<Vec<usize>>,
    boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    /// Builds a complex from generator lists and boundary matrices
    /// (`boundaries[k-1]` maps degree `k` to degree `k - 1`), checking the
    /// shapes and that consecutive boundaries compose to zero.
    pub fn from_parts(
        generators: Vec<Vec<usize>>,
        boundaries: Vec<IntMatrix>,
    ) -> Result<Self, HomologyError> {
        assert!(!generators.is_empty(), "degree zero is always present");
        let max_degree = generators.len() - 1;
        if boundaries.len() != max_degree {
            return Err(HomologyError::Shape {
                degree: boundaries.len(),
            });
        }
        for k in 1..=max_degree {
            let b = &boundaries[k - 1];
            if b.nrows() != generators[k - 1].len() || b.ncols() != generators[k].len() {
                return Err(HomologyError::Shape { degree: k });
            }
        }
        let complex = Self {
            max_degree,
            generators,
            boundaries,
        };
        complex.check_boundary_condition()?;
        Ok(complex)
    }

    fn check_boundary_condition(&self) -> Result<(), HomologyError> {
        for k in 2..=self.max_degree {
            let outer = &self.boundaries[k - 2];
            let inner = &self.boundaries[k - 1];
            for c in 0..inner.ncols() {
                let mut accumulated: Vec<i64> = vec![0; outer.nrows()];
                for &(mid, v) in inner.col(c) {
                    for &(r, w) in outer.col(mid) {
                        accumulated[r] += v * w;
                    }
                }
                if let Some(row) = accumulated.iter().position(|&v| v != 0) {
                    return Err(HomologyError::BoundaryCondition {
                        degree: k,
                        row,
                        col: c,
                        value: accumulated[row],
                    });
                }
            }
        }
        Ok(())
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn generator_count(&self, degree: usize) -> usize {
        self.generators[degree].len()
    }

    /// Ambient simplex indices of the degree-`k` generators.
    pub fn generators(&self, degree: usize) -> &[usize] {
        &self.generators[degree]
    }

    /// The boundary out of degree `k`, for `1 <= k <= max_degree`.
    pub fn boundary(&self, k: usize) -> &IntMatrix {
        &self.boundaries[k - 1]
    }
}

/// The normalized chain complex of a simplicial set up to `max_degree`.
pub fn normalized_chains(
    x: &dyn SimplicialSet,
    max_degree: usize,
) -> Result<ChainComplex, HomologyError> {
    if max_degree > x.truncation() {
        return Err(HomologyError::TruncationExceeded {
            degree: max_degree,
            truncation: x.truncation(),
        });
    }
    let mut generators: Vec<Vec<usize>> = Vec::with_capacity(max_degree + 1);
    for k in 0..=max_degree {
        generators.push(
            (0..x.level_size(k))
                .filter(|&s| !is_degenerate(x, k, s))
                .collect(),
        );
    }
    let mut boundaries = Vec::with_capacity(max_degree);
    for k in 1..=max_degree {
        let rows = &generators[k - 1];
        let mut matrix = IntMatrix::zero(rows.len(), generators[k].len());
        for (col, &simplex) in generators[k].iter().enumerate() {
            let mut entries: Vec<(usize, i64)> = Vec::with_capacity(k + 1);
            for i in 0..=k {
                let f = face(x, k, i, simplex);
                if let Ok(row) = rows.binary_search(&f) {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    match entries.iter_mut().find(|(r, _)| *r == row) {
                        Some((_, v)) => *v += sign,
                        None => entries.push((row, sign)),
                    }
                }
            }
            matrix.set_col(col, entries);
        }
        boundaries.push(matrix);
    }
    let complex = ChainComplex {
        max_degree,
        generators,
        boundaries,
    };
    complex
        .check_boundary_condition()
        .expect("normalized boundaries compose to zero");
    Ok(complex)
}

/// Homology of one degree: free rank and torsion coefficients, each
/// greater than one and dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DegreeStatus {
    Computed { betti: usize, torsion: Vec<u64> },
    NotComputed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeHomology {
    pub degree: usize,
    pub status: DegreeStatus,
}

impl fmt::Display for DegreeHomology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.status {
            DegreeStatus::NotComputed => write!(f, "H_{} not computed", self.degree),
            DegreeStatus::Computed { betti, torsion } => {
                let mut parts = Vec::new();
                match betti {
                    0 => {}
                    1 => parts.push("Z".to_string()),
                    b => parts.push(format!("Z^{b}")),
                }
                for t in torsion {
                    parts.push(format!("Z/{t}"));
                }
                if parts.is_empty() {
                    parts.push("0".to_string());
                }
                write!(f, "H_{} = {}", self.degree, parts.join(" + "))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroups {
    pub degrees: Vec<DegreeHomology>,
}

impl HomologyGroups {
    /// Betti number and torsion of a computed degree.
    pub fn computed(&self, degree: usize) -> Option<(usize, &[u64])> {
        self.degrees.iter().find(|d| d.degree == degree).and_then(
            |d| match &d.status {
                DegreeStatus::Computed { betti, torsion } => Some((*betti, torsion.as_slice())),
                DegreeStatus::NotComputed => None,
            },
        )
    }

    pub fn is_trivial(&self, degree: usize) -> Option<bool> {
        self.computed(degree)
            .map(|(betti, torsion)| betti == 0 && torsion.is_empty())
    }

    /// Stable serialization: one object per degree with the fields
    /// `degree`, `betti`, `torsion`, `status` in that order.
    pub fn to_json_value(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct DegreeJson<'a> {
            degree: usize,
            betti: Option<usize>,
            torsion: Option<&'a [u64]>,
            status: &'static str,
        }
        let rows: Vec<DegreeJson> = self
            .degrees
            .iter()
            .map(|d| match &d.status {
                DegreeStatus::Computed { betti, torsion } => DegreeJson {
                    degree: d.degree,
                    betti: Some(*betti),
                    torsion: Some(torsion),
                    status: "computed",
                },
                DegreeStatus::NotComputed => DegreeJson {
                    degree: d.degree,
                    betti: None,
                    torsion: None,
                    status: "not_computed",
                },
            })
            .collect();
        serde_json::to_value(rows).expect("report serializes")
    }
}

/// Homology of every degree of the complex. Degrees strictly below
/// `max_degree` are computed exactly; the top degree is reported as not
/// computed because its incoming boundary is missing.
pub fn homology(complex: &ChainComplex) -> HomologyGroups {
    let top = complex.max_degree();
    let forms: Vec<SmithNormalForm> = (1..=top)
        .map(|k| smith_normal_form(complex.boundary(k)))
        .collect();
    let rank_out = |k: usize| if k == 0 { 0 } else { forms[k - 1].rank };

    let mut degrees = Vec::with_capacity(top + 1);
    for (k, incoming) in forms.iter().enumerate() {
        let betti = complex.generator_count(k) - rank_out(k) - incoming.rank;
        let torsion = incoming
            .invariant_factors
            .iter()
            .copied()
            .filter(|&d| d > 1)
            .collect();
        degrees.push(DegreeHomology {
            degree: k,
            status: DegreeStatus::Computed { betti, torsion },
        });
    }
    degrees.push(DegreeHomology {
        degree: top,
        status: DegreeStatus::NotComputed,
    });
    HomologyGroups { degrees }
}
