//! The nerve of a finite category as a simplicial set.
//!
//! A level-`k` simplex is a string `(f_1, ..., f_k)` of arrows with
//! `source(f_t) = target(f_{t+1})`, read as a chain
//! `x_k -> x_{k-1} -> ... -> x_0`; level zero is the object set. An
//! op-arrow with underlying monotone map `u` acts by re-tiling: the `j`-th
//! output entry is the composite of the input entries between positions
//! `u(j-1)` and `u(j)`, an identity when the range is empty. Inner faces
//! therefore compose adjacent entries, outer faces drop an end, and
//! degeneracies insert identities.

use std::collections::HashMap;

use super::{CatError, FiniteCategory, Functor};
use crate::delta::OpArrow;
use crate::sset::SimplicialSet;

#[derive(Clone, Debug)]
pub struct Nerve {
    category: FiniteCategory,
    truncation: usize,
    // strings[k] for k >= 1, in lexicographic order by arrow index
    strings: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

/// The nerve truncated at `truncation`.
pub fn nerve(category: &FiniteCategory, truncation: usize) -> Nerve {
    nerve_bounded(category, truncation, usize::MAX).expect("unbounded nerve")
}

/// The nerve truncated at `truncation`, refusing any level with more than
/// `limit` simplices.
pub fn nerve_bounded(
    category: &FiniteCategory,
    truncation: usize,
    limit: usize,
) -> Result<Nerve, CatError> {
    let mut strings: Vec<Vec<Vec<usize>>> = vec![Vec::new(); truncation + 1];
    let mut index: Vec<HashMap<Vec<usize>, usize>> = vec![HashMap::new(); truncation + 1];
    if category.object_count() > limit {
        return Err(CatError::NerveTooLarge { level: 0, limit });
    }
    for k in 1..=truncation {
        let mut level = Vec::new();
        if k == 1 {
            for f in 0..category.arrow_count() {
                level.push(vec![f]);
            }
        } else {
            for shorter in &strings[k - 1] {
                let last = *shorter.last().expect("nonempty string");
                for f in 0..category.arrow_count() {
                    if category.target(f) == category.source(last) {
                        let mut extended = shorter.clone();
                        extended.push(f);
                        level.push(extended);
                    }
                }
            }
        }
        if level.len() > limit {
            return Err(CatError::NerveTooLarge { level: k, limit });
        }
        for (i, s) in level.iter().enumerate() {
            index[k].insert(s.clone(), i);
        }
        strings[k] = level;
    }
    Ok(Nerve {
        category: category.clone(),
        truncation,
        strings,
        index,
    })
}

impl Nerve {
    pub fn category(&self) -> &FiniteCategory {
        &self.category
    }

    /// The arrow string of a level-`k` simplex, `k >= 1`.
    pub fn string_at(&self, k: usize, simplex: usize) -> &[usize] {
        &self.strings[k][simplex]
    }

    pub fn index_of_string(&self, k: usize, string: &[usize]) -> Option<usize> {
        if k == 0 {
            return None;
        }
        self.index[k].get(string).copied()
    }

    /// The object at position `t` of a simplex: `t = k` is the source end
    /// of the chain, `t = 0` the target end.
    fn vertex(&self, k: usize, simplex: usize, t: usize) -> usize {
        if k == 0 {
            return simplex;
        }
        let string = &self.strings[k][simplex];
        if t == 0 {
            self.category.target(string[0])
        } else {
            self.category.source(string[t - 1])
        }
    }
}

impl SimplicialSet for Nerve {
    fn truncation(&self) -> usize {
        self.truncation
    }

    fn level_size(&self, level: usize) -> usize {
        assert!(level <= self.truncation, "level above truncation");
        if level == 0 {
            self.category.object_count()
        } else {
            self.strings[level].len()
        }
    }

    fn act(&self, f: &OpArrow, x: usize) -> usize {
        let u = f.underlying();
        let k = f.source();
        let l = f.target();
        assert!(
            k <= self.truncation && l <= self.truncation,
            "arrow endpoints above truncation"
        );
        if l == 0 {
            return self.vertex(k, x, u.apply(0));
        }
        let mut string = Vec::with_capacity(l);
        for j in 1..=l {
            let lo = u.apply(j - 1);
            let hi = u.apply(j);
            let mut acc = self.category.identity(self.vertex(k, x, lo));
            for t in lo + 1..=hi {
                let entry = self.strings[k][x][t - 1];
                acc = self
                    .category
                    .compose(acc, entry)
                    .expect("consecutive entries compose");
            }
            string.push(acc);
        }
        self.index[l][&string]
    }

    fn describe(&self, level: usize, x: usize) -> String {
        if level == 0 {
            return self.category.object_name(x).to_string();
        }
        let names: Vec<_> = self.strings[level][x]
            .iter()
            .map(|&a| self.category.arrow_name(a).to_string())
            .collect();
        format!("({})", names.join(","))
    }
}

/// The simplicial map induced by a functor: entrywise application to
/// arrow strings, object map at level zero.
pub fn nerve_map(f: &Functor, dom: &Nerve, cod: &Nerve, level: usize, simplex: usize) -> usize {
    if level == 0 {
        return f.apply_object(simplex);
    }
    let mapped: Vec<usize> = dom
        .string_at(level, simplex)
        .iter()
        .map(|&a| f.apply_arrow(a))
        .collect();
    cod.index_of_string(level, &mapped)
        .expect("functors preserve composability")
}

#[cfg(test)]
mod tests {
    use super::super::{monoid_as_category, poset3, two_category, FiniteCategory, FiniteMonoid};
    use super::*;
    use crate::sset::{face, is_degenerate};

    #[test]
    fn terminal_nerve_is_a_point_per_level() {
        let n = nerve(&FiniteCategory::terminal(), 4);
        for k in 0..=4 {
            assert_eq!(n.level_size(k), 1);
        }
    }

    #[test]
    fn monoid_nerve_levels_are_powers() {
        let n = nerve(&monoid_as_category(&FiniteMonoid::cyclic(2)), 3);
        assert_eq!(n.level_size(0), 1);
        assert_eq!(n.level_size(3), 8);
        let n3 = nerve(&monoid_as_category(&FiniteMonoid::cyclic(3)), 2);
        assert_eq!(n3.level_size(2), 9);
    }

    #[test]
    fn walking_arrow_level_one() {
        let n = nerve(&two_category(), 2);
        assert_eq!(n.level_size(1), 3);
        assert_eq!(n.level_size(0), 2);
    }

    #[test]
    fn faces_compose_adjacent_entries() {
        let m = FiniteMonoid::cyclic(3);
        let n = nerve(&monoid_as_category(&m), 2);
        // the string (1, 2) of residues multiplies to 0 under the inner face
        let s = n.index_of_string(2, &[1, 2]).unwrap();
        let inner = face(&n, 2, 1, s);
        assert_eq!(n.string_at(1, inner), &[m.mul(1, 2)]);
        // outer faces drop an end
        assert_eq!(n.string_at(1, face(&n, 2, 0, s)), &[2]);
        assert_eq!(n.string_at(1, face(&n, 2, 2, s)), &[1]);
    }

    #[test]
    fn nerve_degeneracy_detection() {
        let m = FiniteMonoid::cyclic(2);
        let n = nerve(&monoid_as_category(&m), 3);
        // a string is degenerate exactly when it contains the unit
        for x in 0..n.level_size(2) {
            let has_unit = n.string_at(2, x).contains(&0);
            assert_eq!(is_degenerate(&n, 2, x), has_unit);
        }
    }

    #[test]
    fn nerve_map_commutes_with_inclusion() {
        let two = two_category();
        let p3 = poset3();
        let f = Functor::new(&two, &p3, vec![0, 1], vec![0, 1, 3]).unwrap();
        let dom = nerve(&two, 2);
        let cod = nerve(&p3, 2);
        for x in 0..dom.level_size(1) {
            let arrow = dom.string_at(1, x)[0];
            let mapped = nerve_map(&f, &dom, &cod, 1, x);
            assert_eq!(cod.string_at(1, mapped), &[f.apply_arrow(arrow)]);
        }
    }
}
