//! Exact Segal-condition checks.
//!
//! For a simplicial set the level-`m` Segal map sends a simplex to the
//! tuple of its edge projections; the condition asks each such map to be a
//! bijection, with the level-zero case demanding a single vertex. For a
//! multisimplicial set the condition quantifies over every pinned slice:
//! the first `l` directions at level one and the trailing directions at a
//! fixed level `k`.

use std::sync::Arc;

use serde::Serialize;

use super::{slice_ones, MultiSimplicialSet, SimplicialSet, SsetError};
use crate::delta::segal_arrow;

/// Outcome for one Segal map, with witnesses rendered by the provider.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SegalVerdict {
    Bijective,
    NotInjective {
        first: String,
        second: String,
        tuple: Vec<String>,
    },
    NotSurjective {
        missing: Vec<String>,
    },
}

impl SegalVerdict {
    pub fn is_bijective(&self) -> bool {
        matches!(self, SegalVerdict::Bijective)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SegalLevelReport {
    pub m: usize,
    pub verdict: SegalVerdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct SegalReport {
    pub levels: Vec<SegalLevelReport>,
}

impl SegalReport {
    pub fn all_bijective(&self) -> bool {
        self.levels.iter().all(|l| l.verdict.is_bijective())
    }

    pub fn first_failure(&self) -> Option<&SegalLevelReport> {
        self.levels.iter().find(|l| !l.verdict.is_bijective())
    }
}

/// One slice of a multisimplicial check: `ones` leading directions pinned
/// at level one, trailing directions pinned at `pinned`.
#[derive(Clone, Debug, Serialize)]
pub struct SliceSegalReport {
    pub ones: usize,
    pub pinned: usize,
    pub report: SegalReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct MultiSegalReport {
    pub slices: Vec<SliceSegalReport>,
}

impl MultiSegalReport {
    pub fn all_bijective(&self) -> bool {
        self.slices.iter().all(|s| s.report.all_bijective())
    }
}

/// The image of one simplex under the level-`m` Segal map: its `m` edge
/// projections, empty for `m = 0`.
pub fn segal_tuple(x: &dyn SimplicialSet, m: usize, simplex: usize) -> Vec<usize> {
    (1..=m)
        .map(|j| x.act(&segal_arrow(j, m).expect("edge in range"), simplex))
        .collect()
}

/// Checks bijectivity of the Segal maps for every level up to `m_max`.
pub fn check_segal(x: &dyn SimplicialSet, m_max: usize) -> Result<SegalReport, SsetError> {
    if m_max > x.truncation() {
        return Err(SsetError::TruncationExceeded {
            level: m_max,
            truncation: x.truncation(),
        });
    }
    let mut levels = Vec::with_capacity(m_max + 1);
    for m in 0..=m_max {
        levels.push(SegalLevelReport {
            m,
            verdict: check_level(x, m)?,
        });
    }
    Ok(SegalReport { levels })
}

fn check_level(x: &dyn SimplicialSet, m: usize) -> Result<SegalVerdict, SsetError> {
    if m == 0 {
        // the target is the one-point set of empty tuples
        return Ok(match x.level_size(0) {
            1 => SegalVerdict::Bijective,
            0 => SegalVerdict::NotSurjective { missing: vec![] },
            _ => SegalVerdict::NotInjective {
                first: x.describe(0, 0),
                second: x.describe(0, 1),
                tuple: vec![],
            },
        });
    }

    let n1 = x.level_size(1) as u128;
    let nm = x.level_size(m);
    let total = n1
        .checked_pow(m as u32)
        .filter(|&t| t <= 1 << 28)
        .ok_or_else(|| SsetError::SizeOverflow {
            context: format!("enumerating {n1}^{m} edge tuples"),
        })? as usize;

    let arrows: Vec<_> = (1..=m)
        .map(|j| segal_arrow(j, m).expect("edge in range"))
        .collect();
    let encode = |simplex: usize| -> usize {
        arrows
            .iter()
            .fold(0usize, |acc, a| acc * n1 as usize + x.act(a, simplex))
    };

    let mut seen = vec![0u64; total.div_ceil(64)];
    for simplex in 0..nm {
        let code = encode(simplex);
        let (word, bit) = (code / 64, code % 64);
        if seen[word] >> bit & 1 == 1 {
            let first = (0..simplex)
                .find(|&other| encode(other) == code)
                .expect("collision has an earlier witness");
            let tuple = segal_tuple(x, m, simplex)
                .into_iter()
                .map(|e| x.describe(1, e))
                .collect();
            return Ok(SegalVerdict::NotInjective {
                first: x.describe(m, first),
                second: x.describe(m, simplex),
                tuple,
            });
        }
        seen[word] |= 1 << bit;
    }

    if nm == total {
        return Ok(SegalVerdict::Bijective);
    }
    let missing_code = (0..total)
        .find(|&code| seen[code / 64] >> (code % 64) & 1 == 0)
        .expect("strictly fewer simplices than tuples");
    let mut missing = Vec::with_capacity(m);
    let mut rest = missing_code;
    for _ in 0..m {
        missing.push(rest % n1 as usize);
        rest /= n1 as usize;
    }
    missing.reverse();
    Ok(SegalVerdict::NotSurjective {
        missing: missing.into_iter().map(|e| x.describe(1, e)).collect(),
    })
}

/// Runs [`check_segal`] on every pinned slice of a multisimplicial set:
/// leading ones `0..arity`, trailing pin `0..=k_max`.
pub fn check_segal_multi(
    x: Arc<dyn MultiSimplicialSet>,
    m_max: usize,
    k_max: usize,
) -> Result<MultiSegalReport, SsetError> {
    let mut slices = Vec::new();
    for ones in 0..x.arity() {
        for pinned in 0..=k_max {
            let slice = slice_ones(x.clone(), ones, pinned)?;
            let report = check_segal(&slice, m_max)?;
            slices.push(SliceSegalReport {
                ones,
                pinned,
                report,
            });
        }
    }
    Ok(MultiSegalReport { slices })
}
