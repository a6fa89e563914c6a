//! Simplicial sets given by explicit face/degeneracy tables, with a
//! canonical JSON text format.
//!
//! The format lists the truncation, the level cardinalities, and one table
//! per generator keyed by kind, rank and index:
//!
//! ```json
//! {
//!   "truncation": 1,
//!   "levels": [1, 2],
//!   "faces": [
//!     { "rank": 1, "index": 0, "table": [0, 0] },
//!     { "rank": 1, "index": 1, "table": [0, 0] }
//!   ],
//!   "degeneracies": [
//!     { "rank": 1, "index": 0, "table": [0] }
//!   ]
//! }
//! ```
//!
//! A face of rank `k` and index `i` maps level `k` to level `k - 1`; a
//! degeneracy of rank `k` and index `i` maps level `k - 1` to level `k`.
//! Saving always emits generators sorted by rank then index, so loading a
//! saved document and saving it again is byte-stable.

use serde::{Deserialize, Serialize};

use super::{audit, SimplicialSet, SsetError};
use crate::delta::{normal_form, OpArrow};

/// One generator action as a dense lookup table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorTable {
    pub rank: usize,
    pub index: usize,
    pub table: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct Document {
    truncation: usize,
    levels: Vec<usize>,
    faces: Vec<GeneratorTable>,
    degeneracies: Vec<GeneratorTable>,
}

/// A simplicial set stored as explicit generator tables. Arbitrary arrows
/// act through the coface/codegeneracy factorization of their underlying
/// monotone map.
#[derive(Clone, Debug)]
pub struct ExplicitSSet {
    truncation: usize,
    levels: Vec<usize>,
    // faces[k][i][x] for 1 <= k <= truncation, 0 <= i <= k
    faces: Vec<Vec<Vec<usize>>>,
    // degeneracies[k][i][x] for 1 <= k <= truncation, 0 <= i <= k - 1,
    // with x at level k - 1
    degeneracies: Vec<Vec<Vec<usize>>>,
}

impl ExplicitSSet {
    pub fn new(
        truncation: usize,
        levels: Vec<usize>,
        faces: Vec<GeneratorTable>,
        degeneracies: Vec<GeneratorTable>,
    ) -> Result<Self, SsetError> {
        if levels.len() != truncation + 1 {
            return Err(SsetError::InvalidTable(format!(
                "expected {} level cardinalities, found {}",
                truncation + 1,
                levels.len()
            )));
        }
        let mut face_tables: Vec<Vec<Vec<usize>>> = (0..=truncation)
            .map(|k| vec![Vec::new(); if k == 0 { 0 } else { k + 1 }])
            .collect();
        let mut degen_tables: Vec<Vec<Vec<usize>>> = (0..=truncation)
            .map(|k| vec![Vec::new(); k])
            .collect();

        for entry in faces {
            let GeneratorTable { rank, index, table } = entry;
            if rank == 0 || rank > truncation || index > rank {
                return Err(SsetError::InvalidTable(format!(
                    "face rank {rank} index {index} out of range"
                )));
            }
            check_table("face", rank, index, &table, levels[rank], levels[rank - 1])?;
            if !face_tables[rank][index].is_empty() {
                return Err(SsetError::InvalidTable(format!(
                    "duplicate face table at rank {rank} index {index}"
                )));
            }
            face_tables[rank][index] = table;
        }
        for entry in degeneracies {
            let GeneratorTable { rank, index, table } = entry;
            if rank == 0 || rank > truncation || index >= rank {
                return Err(SsetError::InvalidTable(format!(
                    "degeneracy rank {rank} index {index} out of range"
                )));
            }
            check_table(
                "degeneracy",
                rank,
                index,
                &table,
                levels[rank - 1],
                levels[rank],
            )?;
            if !degen_tables[rank][index].is_empty() {
                return Err(SsetError::InvalidTable(format!(
                    "duplicate degeneracy table at rank {rank} index {index}"
                )));
            }
            degen_tables[rank][index] = table;
        }
        for k in 1..=truncation {
            for (i, table) in face_tables[k].iter().enumerate() {
                if table.is_empty() && levels[k] > 0 {
                    return Err(SsetError::InvalidTable(format!(
                        "missing face table at rank {k} index {i}"
                    )));
                }
            }
            for (i, table) in degen_tables[k].iter().enumerate() {
                if table.is_empty() && levels[k - 1] > 0 {
                    return Err(SsetError::InvalidTable(format!(
                        "missing degeneracy table at rank {k} index {i}"
                    )));
                }
            }
        }

        let sset = Self {
            truncation,
            levels,
            faces: face_tables,
            degeneracies: degen_tables,
        };
        audit::audit_simplicial(&sset)
            .map_err(|failure| SsetError::InvalidTable(failure.to_string()))?;
        Ok(sset)
    }

    pub fn from_json_str(text: &str) -> Result<Self, SsetError> {
        let doc: Document = serde_json::from_str(text)
            .map_err(|e| SsetError::InvalidTable(format!("json parse error: {e}")))?;
        Self::new(doc.truncation, doc.levels, doc.faces, doc.degeneracies)
    }

    /// Canonical serialization: generators sorted by rank, then index.
    pub fn to_json_string(&self) -> String {
        let mut faces = Vec::new();
        let mut degeneracies = Vec::new();
        for k in 1..=self.truncation {
            for i in 0..=k {
                faces.push(GeneratorTable {
                    rank: k,
                    index: i,
                    table: self.faces[k][i].clone(),
                });
            }
            for i in 0..k {
                degeneracies.push(GeneratorTable {
                    rank: k,
                    index: i,
                    table: self.degeneracies[k][i].clone(),
                });
            }
        }
        let doc = Document {
            truncation: self.truncation,
            levels: self.levels.clone(),
            faces,
            degeneracies,
        };
        serde_json::to_string_pretty(&doc).expect("document serializes")
    }
}

fn check_table(
    kind: &str,
    rank: usize,
    index: usize,
    table: &[usize],
    domain: usize,
    codomain: usize,
) -> Result<(), SsetError> {
    if table.len() != domain {
        return Err(SsetError::InvalidTable(format!(
            "{kind} rank {rank} index {index}: table length {} but level has {domain} simplices",
            table.len()
        )));
    }
    if let Some(&bad) = table.iter().find(|&&v| v >= codomain) {
        return Err(SsetError::InvalidTable(format!(
            "{kind} rank {rank} index {index}: image {bad} outside target level of size {codomain}"
        )));
    }
    Ok(())
}

impl SimplicialSet for ExplicitSSet {
    fn truncation(&self) -> usize {
        self.truncation
    }

    fn level_size(&self, level: usize) -> usize {
        assert!(level <= self.truncation, "level above truncation");
        self.levels[level]
    }

    fn act(&self, f: &OpArrow, x: usize) -> usize {
        let source = f.source();
        let target = f.target();
        assert!(
            source <= self.truncation && target <= self.truncation,
            "arrow endpoints above truncation"
        );
        let nf = normal_form(f.underlying());
        let mut current = x;
        // underlying cofaces act first (as faces), outermost first
        for &(rank, index) in &nf.cofaces {
            current = self.faces[rank][index][current];
        }
        for &(rank, index) in &nf.codegeneracies {
            current = self.degeneracies[rank][index][current];
        }
        current
    }
}

#[cfg(test)]
mod tests {
    use super::super::{face, is_degenerate};
    use super::*;

    /// Two vertices and three edges: two degenerate loops plus one arc.
    fn interval_like() -> ExplicitSSet {
        let faces = vec![
            GeneratorTable {
                rank: 1,
                index: 0,
                table: vec![0, 1, 1],
            },
            GeneratorTable {
                rank: 1,
                index: 1,
                table: vec![0, 1, 0],
            },
        ];
        let degeneracies = vec![GeneratorTable {
            rank: 1,
            index: 0,
            table: vec![0, 1],
        }];
        ExplicitSSet::new(1, vec![2, 3], faces, degeneracies).unwrap()
    }

    #[test]
    fn loads_and_acts() {
        let x = interval_like();
        assert_eq!(x.level_size(0), 2);
        assert_eq!(x.level_size(1), 3);
        assert_eq!(face(&x, 1, 0, 2), 1);
        assert_eq!(face(&x, 1, 1, 2), 0);
        assert!(is_degenerate(&x, 1, 0));
        assert!(is_degenerate(&x, 1, 1));
        assert!(!is_degenerate(&x, 1, 2));
    }

    #[test]
    fn identity_acts_trivially() {
        let x = interval_like();
        let id = OpArrow::identity(1);
        for s in 0..3 {
            assert_eq!(x.act(&id, s), s);
        }
    }

    #[test]
    fn roundtrip_is_byte_stable() {
        let x = interval_like();
        let once = x.to_json_string();
        let reloaded = ExplicitSSet::from_json_str(&once).unwrap();
        assert_eq!(reloaded.to_json_string(), once);
    }

    #[test]
    fn rejects_skewed_tables() {
        let faces = vec![
            GeneratorTable {
                rank: 1,
                index: 0,
                table: vec![0, 1, 1],
            },
            GeneratorTable {
                rank: 1,
                index: 1,
                table: vec![0, 1],
            },
        ];
        let degeneracies = vec![GeneratorTable {
            rank: 1,
            index: 0,
            table: vec![0, 1],
        }];
        let err = ExplicitSSet::new(1, vec![2, 3], faces, degeneracies).unwrap_err();
        assert!(matches!(err, SsetError::InvalidTable(_)));
    }

    #[test]
    fn rejects_broken_identities() {
        // s0 followed by d0 must be the identity on vertices; point d0 of
        // the degenerate loop at the wrong vertex
        let faces = vec![
            GeneratorTable {
                rank: 1,
                index: 0,
                table: vec![1, 1, 1],
            },
            GeneratorTable {
                rank: 1,
                index: 1,
                table: vec![0, 1, 0],
            },
        ];
        let degeneracies = vec![GeneratorTable {
            rank: 1,
            index: 0,
            table: vec![0, 1],
        }];
        let err = ExplicitSSet::new(1, vec![2, 3], faces, degeneracies).unwrap_err();
        let msg = err.to_string();
        assert!(
            msg.contains("cancellation d0 s0"),
            "audit names the violated law: {msg}"
        );
    }
}
