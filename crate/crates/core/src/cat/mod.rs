//! Finite categories and monoids presented by composition tables, with
//! functors, natural transformations, and the correspondence between
//! natural transformations and functors out of the cylinder `C x 2`.
//!
//! Everything is validated exhaustively at construction; validation errors
//! name the violated law and a witnessing tuple.

mod nerve;

pub use nerve::{nerve, nerve_bounded, nerve_map, Nerve};

use std::collections::BTreeMap;

use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown name {0:?}")]
    UnknownName(String),
    #[error("table shape: {0}")]
    Shape(String),
    #[error("identity of {object} must be an endo-arrow at it, got {arrow}")]
    BadIdentity { object: String, arrow: String },
    #[error("composite defined for non-composable pair ({g}, {f})")]
    NotComposablePair { g: String, f: String },
    #[error("missing composite for composable pair ({g}, {f})")]
    MissingComposite { g: String, f: String },
    #[error("composite of ({g}, {f}) is {gf}, whose endpoints do not match")]
    CompositeEndpoints { g: String, f: String, gf: String },
    #[error("identity law fails at ({id}, {f}): composite is {got}")]
    IdentityLaw { id: String, f: String, got: String },
    #[error("associativity fails at ({h}, {g}, {f}): (h g) f = {lhs} but h (g f) = {rhs}")]
    Associativity {
        h: String,
        g: String,
        f: String,
        lhs: String,
        rhs: String,
    },
    #[error("unit law fails at {element}: products with the unit give {got}")]
    UnitLaw { element: String, got: String },
    #[error("commutativity flag mismatch witnessed by ({a}, {b})")]
    CommutativityFlag { a: String, b: String },
    #[error("functor does not preserve {what} at {witness}: got {got}, expected {expected}")]
    FunctorLaw {
        what: &'static str,
        witness: String,
        got: String,
        expected: String,
    },
    #[error("naturality fails at arrow {arrow}: {lhs} vs {rhs}")]
    Naturality {
        arrow: String,
        lhs: String,
        rhs: String,
    },
    #[error("nerve level {level} exceeds the size limit {limit}")]
    NerveTooLarge { level: usize, limit: usize },
}

/// A finite category: objects, arrows with sources and targets, an
/// identity per object, and a composition table on composable pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCategory {
    objects: Vec<String>,
    arrow_names: Vec<String>,
    src: Vec<usize>,
    tgt: Vec<usize>,
    identities: Vec<usize>,
    comp: Vec<Vec<Option<usize>>>,
}

impl FiniteCategory {
    /// Builds and validates a category. `arrows` lists `(name, src, tgt)`;
    /// `composites` lists `(g, f, g_after_f)` by arrow index for every
    /// composable pair.
    pub fn new(
        objects: Vec<String>,
        arrows: Vec<(String, usize, usize)>,
        identities: Vec<usize>,
        composites: Vec<(usize, usize, usize)>,
    ) -> Result<Self, CatError> {
        let n_obj = objects.len();
        let n_arr = arrows.len();
        if identities.len() != n_obj {
            return Err(CatError::Shape(format!(
                "{} identities for {} objects",
                identities.len(),
                n_obj
            )));
        }
        let mut arrow_names = Vec::with_capacity(n_arr);
        let mut src = Vec::with_capacity(n_arr);
        let mut tgt = Vec::with_capacity(n_arr);
        for (name, s, t) in arrows {
            if s >= n_obj || t >= n_obj {
                return Err(CatError::Shape(format!(
                    "arrow {name} has endpoint outside the object set"
                )));
            }
            arrow_names.push(name);
            src.push(s);
            tgt.push(t);
        }
        let mut comp = vec![vec![None; n_arr]; n_arr];
        for (g, f, gf) in composites {
            if g >= n_arr || f >= n_arr || gf >= n_arr {
                return Err(CatError::Shape(format!(
                    "composite entry ({g}, {f}, {gf}) outside the arrow set"
                )));
            }
            comp[g][f] = Some(gf);
        }
        let cat = Self {
            objects,
            arrow_names,
            src,
            tgt,
            identities,
            comp,
        };
        cat.validate()?;
        Ok(cat)
    }

    fn validate(&self) -> Result<(), CatError> {
        for (x, &id) in self.identities.iter().enumerate() {
            if id >= self.arrow_count() || self.src[id] != x || self.tgt[id] != x {
                return Err(CatError::BadIdentity {
                    object: self.objects[x].clone(),
                    arrow: self
                        .arrow_names
                        .get(id)
                        .cloned()
                        .unwrap_or_else(|| format!("#{id}")),
                });
            }
        }
        for g in 0..self.arrow_count() {
            for f in 0..self.arrow_count() {
                let composable = self.tgt[f] == self.src[g];
                match self.comp[g][f] {
                    Some(gf) if !composable => {
                        let _ = gf;
                        return Err(CatError::NotComposablePair {
                            g: self.arrow_names[g].clone(),
                            f: self.arrow_names[f].clone(),
                        });
                    }
                    None if composable => {
                        return Err(CatError::MissingComposite {
                            g: self.arrow_names[g].clone(),
                            f: self.arrow_names[f].clone(),
                        });
                    }
                    Some(gf) if self.src[gf] != self.src[f] || self.tgt[gf] != self.tgt[g] => {
                        return Err(CatError::CompositeEndpoints {
                            g: self.arrow_names[g].clone(),
                            f: self.arrow_names[f].clone(),
                            gf: self.arrow_names[gf].clone(),
                        });
                    }
                    _ => {}
                }
            }
        }
        for f in 0..self.arrow_count() {
            let left = self.comp[self.identities[self.tgt[f]]][f];
            let right = self.comp[f][self.identities[self.src[f]]];
            if left != Some(f) || right != Some(f) {
                let got = left.or(right).map_or("undefined".to_string(), |a| {
                    self.arrow_names[a].clone()
                });
                return Err(CatError::IdentityLaw {
                    id: self.arrow_names[self.identities[self.src[f]]].clone(),
                    f: self.arrow_names[f].clone(),
                    got,
                });
            }
        }
        for h in 0..self.arrow_count() {
            for g in 0..self.arrow_count() {
                let Some(hg) = self.comp[h][g] else { continue };
                for f in 0..self.arrow_count() {
                    let Some(gf) = self.comp[g][f] else { continue };
                    let lhs = self.comp[hg][f].expect("endpoints validated");
                    let rhs = self.comp[h][gf].expect("endpoints validated");
                    if lhs != rhs {
                        return Err(CatError::Associativity {
                            h: self.arrow_names[h].clone(),
                            g: self.arrow_names[g].clone(),
                            f: self.arrow_names[f].clone(),
                            lhs: self.arrow_names[lhs].clone(),
                            rhs: self.arrow_names[rhs].clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrow_names.len()
    }

    pub fn object_name(&self, x: usize) -> &str {
        &self.objects[x]
    }

    pub fn arrow_name(&self, a: usize) -> &str {
        &self.arrow_names[a]
    }

    pub fn source(&self, a: usize) -> usize {
        self.src[a]
    }

    pub fn target(&self, a: usize) -> usize {
        self.tgt[a]
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identities[x]
    }

    pub fn is_identity_arrow(&self, a: usize) -> bool {
        self.identities[self.src[a]] == a
    }

    /// `g` after `f`, when `target(f) = source(g)`.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.comp[g][f]
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrow_names.iter().position(|a| a == name)
    }

    /// The category with one object and one arrow.
    pub fn terminal() -> Self {
        Self::new(
            vec!["*".into()],
            vec![("id".into(), 0, 0)],
            vec![0],
            vec![(0, 0, 0)],
        )
        .expect("terminal category is valid")
    }

    /// Built-in categories by name: "2", "poset3", "terminal", or any
    /// built-in monoid name delooped to a one-object category.
    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "2" => Some(two_category()),
            "poset3" => Some(poset3()),
            "terminal" => Some(Self::terminal()),
            _ => FiniteMonoid::by_name(name).map(|m| monoid_as_category(&m)),
        }
    }

    pub fn from_json_str(text: &str) -> Result<Self, CatError> {
        let doc: CategoryDoc =
            serde_json::from_str(text).map_err(|e| CatError::Parse(e.to_string()))?;
        doc.build()
    }
}

#[derive(Deserialize)]
struct CategoryArrowDoc {
    name: String,
    src: String,
    tgt: String,
}

#[derive(Deserialize)]
struct CategoryDoc {
    objects: Vec<String>,
    arrows: Vec<CategoryArrowDoc>,
    identities: BTreeMap<String, String>,
    composition: Vec<[String; 3]>,
}

impl CategoryDoc {
    fn build(self) -> Result<FiniteCategory, CatError> {
        let find_obj = |name: &str| {
            self.objects
                .iter()
                .position(|o| o == name)
                .ok_or_else(|| CatError::UnknownName(name.to_string()))
        };
        let find_arr = |name: &str| {
            self.arrows
                .iter()
                .position(|a| a.name == name)
                .ok_or_else(|| CatError::UnknownName(name.to_string()))
        };
        let arrows = self
            .arrows
            .iter()
            .map(|a| Ok((a.name.clone(), find_obj(&a.src)?, find_obj(&a.tgt)?)))
            .collect::<Result<Vec<_>, CatError>>()?;
        let mut identities = vec![usize::MAX; self.objects.len()];
        for (obj, arr) in &self.identities {
            identities[find_obj(obj)?] = find_arr(arr)?;
        }
        if let Some(missing) = identities.iter().position(|&i| i == usize::MAX) {
            return Err(CatError::Parse(format!(
                "no identity listed for object {:?}",
                self.objects[missing]
            )));
        }
        let composites = self
            .composition
            .iter()
            .map(|[g, f, gf]| Ok((find_arr(g)?, find_arr(f)?, find_arr(gf)?)))
            .collect::<Result<Vec<_>, CatError>>()?;
        FiniteCategory::new(self.objects, arrows, identities, composites)
    }
}

/// The category with objects 0, 1 and a single non-identity arrow
/// `h: 0 -> 1`.
pub fn two_category() -> FiniteCategory {
    FiniteCategory::new(
        vec!["0".into(), "1".into()],
        vec![
            ("id_0".into(), 0, 0),
            ("id_1".into(), 1, 1),
            ("h".into(), 0, 1),
        ],
        vec![0, 1],
        vec![(0, 0, 0), (1, 1, 1), (2, 0, 2), (1, 2, 2)],
    )
    .expect("walking arrow category is valid")
}

/// The chain poset 0 <= 1 <= 2 as a category.
pub fn poset3() -> FiniteCategory {
    // arrows: identities then 0->1, 1->2, 0->2
    FiniteCategory::new(
        vec!["0".into(), "1".into(), "2".into()],
        vec![
            ("id_0".into(), 0, 0),
            ("id_1".into(), 1, 1),
            ("id_2".into(), 2, 2),
            ("a01".into(), 0, 1),
            ("a12".into(), 1, 2),
            ("a02".into(), 0, 2),
        ],
        vec![0, 1, 2],
        vec![
            (0, 0, 0),
            (1, 1, 1),
            (2, 2, 2),
            (3, 0, 3),
            (1, 3, 3),
            (4, 1, 4),
            (2, 4, 4),
            (5, 0, 5),
            (2, 5, 5),
            (4, 3, 5),
        ],
    )
    .expect("three-chain poset is valid")
}

/// The binary product in the category of small categories. Object
/// `(x, y)` has index `x * |D_obj| + y`; arrow `(f, g)` has index
/// `f * |D_arr| + g`.
pub fn product_category(c: &FiniteCategory, d: &FiniteCategory) -> FiniteCategory {
    let mut objects = Vec::with_capacity(c.object_count() * d.object_count());
    for x in 0..c.object_count() {
        for y in 0..d.object_count() {
            objects.push(format!("({},{})", c.object_name(x), d.object_name(y)));
        }
    }
    let mut arrows = Vec::with_capacity(c.arrow_count() * d.arrow_count());
    for f in 0..c.arrow_count() {
        for g in 0..d.arrow_count() {
            arrows.push((
                format!("({},{})", c.arrow_name(f), d.arrow_name(g)),
                c.source(f) * d.object_count() + d.source(g),
                c.target(f) * d.object_count() + d.target(g),
            ));
        }
    }
    let identities = (0..c.object_count())
        .flat_map(|x| {
            (0..d.object_count())
                .map(move |y| (x, y))
        })
        .map(|(x, y)| c.identity(x) * d.arrow_count() + d.identity(y))
        .collect();
    let mut composites = Vec::new();
    for g1 in 0..c.arrow_count() {
        for g2 in 0..d.arrow_count() {
            for f1 in 0..c.arrow_count() {
                for f2 in 0..d.arrow_count() {
                    if let (Some(h1), Some(h2)) = (c.compose(g1, f1), d.compose(g2, f2)) {
                        composites.push((
                            g1 * d.arrow_count() + g2,
                            f1 * d.arrow_count() + f2,
                            h1 * d.arrow_count() + h2,
                        ));
                    }
                }
            }
        }
    }
    FiniteCategory::new(objects, arrows, identities, composites)
        .expect("product of valid categories is valid")
}

/// Index bookkeeping for [`product_category`], parameterized by the right
/// factor.
pub fn product_arrow_index(d: &FiniteCategory, f: usize, g: usize) -> usize {
    f * d.arrow_count() + g
}

pub fn product_arrow_split(d: &FiniteCategory, fg: usize) -> (usize, usize) {
    (fg / d.arrow_count(), fg % d.arrow_count())
}

pub fn product_object_index(d: &FiniteCategory, x: usize, y: usize) -> usize {
    x * d.object_count() + y
}

pub fn product_object_split(d: &FiniteCategory, xy: usize) -> (usize, usize) {
    (xy / d.object_count(), xy % d.object_count())
}

/// A finite monoid given by its multiplication table. The commutativity
/// flag is computed from the table at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMonoid {
    elements: Vec<String>,
    unit: usize,
    table: Vec<Vec<usize>>,
    commutative: bool,
}

impl FiniteMonoid {
    pub fn new(
        elements: Vec<String>,
        unit: usize,
        table: Vec<Vec<usize>>,
    ) -> Result<Self, CatError> {
        let n = elements.len();
        if unit >= n {
            return Err(CatError::Shape(format!("unit index {unit} out of range")));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(CatError::Shape(format!("table is not {n} x {n}")));
        }
        if let Some(&bad) = table.iter().flatten().find(|&&v| v >= n) {
            return Err(CatError::Shape(format!("table entry {bad} out of range")));
        }
        for a in 0..n {
            if table[unit][a] != a || table[a][unit] != a {
                return Err(CatError::UnitLaw {
                    element: elements[a].clone(),
                    got: elements[table[unit][a]].clone(),
                });
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let lhs = table[table[a][b]][c];
                    let rhs = table[a][table[b][c]];
                    if lhs != rhs {
                        return Err(CatError::Associativity {
                            h: elements[a].clone(),
                            g: elements[b].clone(),
                            f: elements[c].clone(),
                            lhs: elements[lhs].clone(),
                            rhs: elements[rhs].clone(),
                        });
                    }
                }
            }
        }
        let commutative = (0..n).all(|a| (0..n).all(|b| table[a][b] == table[b][a]));
        Ok(Self {
            elements,
            unit,
            table,
            commutative,
        })
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn table(&self) -> &Vec<Vec<usize>> {
        &self.table
    }

    pub fn element_name(&self, a: usize) -> &str {
        &self.elements[a]
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    /// A witnessing pair `(a, b)` with `ab != ba`, if any.
    pub fn noncommutative_witness(&self) -> Option<(usize, usize)> {
        let n = self.size();
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b)))
            .find(|&(a, b)| self.table[a][b] != self.table[b][a])
    }

    /// Whether every element has a two-sided inverse.
    pub fn is_group(&self) -> bool {
        let n = self.size();
        (0..n).all(|a| {
            (0..n).any(|b| self.table[a][b] == self.unit && self.table[b][a] == self.unit)
        })
    }

    /// The cyclic monoid of order `n` in additive notation.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic groups are nonempty");
        let elements = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        Self::new(elements, 0, table).expect("cyclic tables are valid")
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// The two-element monoid `{1, a}` with `a a = a`.
    pub fn idempotent2() -> Self {
        Self::new(
            vec!["1".into(), "a".into()],
            0,
            vec![vec![0, 1], vec![1, 1]],
        )
        .expect("idempotent tables are valid")
    }

    /// The noncommutative three-element monoid `{1, a, b}` where any two of
    /// `a, b` multiply to the left factor.
    pub fn left_absorbing2() -> Self {
        Self::new(
            vec!["1".into(), "a".into(), "b".into()],
            0,
            vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 2, 2]],
        )
        .expect("left-absorbing tables are valid")
    }

    pub fn direct_product(a: &Self, b: &Self) -> Self {
        let mut elements = Vec::with_capacity(a.size() * b.size());
        for x in 0..a.size() {
            for y in 0..b.size() {
                elements.push(format!("({},{})", a.element_name(x), b.element_name(y)));
            }
        }
        let n = b.size();
        let table = (0..a.size() * b.size())
            .map(|p| {
                (0..a.size() * b.size())
                    .map(|q| a.mul(p / n, q / n) * n + b.mul(p % n, q % n))
                    .collect()
            })
            .collect();
        Self::new(elements, a.unit * n + b.unit, table)
            .expect("product of valid monoids is valid")
    }

    /// Built-in monoids: "Z/n" for n >= 1, "Z/2xZ/2", "idempotent2",
    /// "leftzero2" (the noncommutative left-absorbing example), "trivial".
    pub fn by_name(name: &str) -> Option<Self> {
        if let Some(n) = name
            .strip_prefix("Z/")
            .and_then(|rest| rest.parse::<usize>().ok())
            .filter(|&n| (1..=512).contains(&n))
        {
            return Some(Self::cyclic(n));
        }
        match name {
            "Z/2xZ/2" => Some(Self::direct_product(&Self::cyclic(2), &Self::cyclic(2))),
            "idempotent2" => Some(Self::idempotent2()),
            "leftzero2" => Some(Self::left_absorbing2()),
            "trivial" => Some(Self::trivial()),
            _ => None,
        }
    }

    /// Names of the built-in commutative monoids, for sweep tests.
    pub fn builtin_commutative_names() -> Vec<&'static str> {
        vec!["trivial", "Z/2", "Z/3", "Z/4", "Z/6", "Z/2xZ/2", "idempotent2"]
    }

    /// The invariant-factor decomposition `d_1 | d_2 | ... | d_r` of a
    /// finite abelian group, or `None` when the monoid is not one.
    pub fn abelian_invariant_factors(&self) -> Option<Vec<u64>> {
        if !self.is_group() || !self.commutative {
            return None;
        }
        let n = self.size();
        if n == 1 {
            return Some(vec![]);
        }
        // the number of solutions of x^m = 1 determines the factors
        let count_roots = |m: usize| -> usize {
            (0..n)
                .filter(|&a| {
                    let mut acc = self.unit;
                    for _ in 0..m {
                        acc = self.mul(acc, a);
                    }
                    acc == self.unit
                })
                .count()
        };
        let mut chains = Vec::new();
        divisor_chains(n as u64, 2, &mut Vec::new(), &mut chains);
        chains.into_iter().find(|chain| {
            (1..=n).all(|m| {
                let predicted: u64 = chain.iter().map(|&d| gcd(d, m as u64)).product();
                predicted as usize == count_roots(m)
            })
        })
    }

    pub fn from_json_str(text: &str) -> Result<Self, CatError> {
        let doc: MonoidDoc =
            serde_json::from_str(text).map_err(|e| CatError::Parse(e.to_string()))?;
        doc.build()
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// All chains d_1 | d_2 | ... with product `n` and every d_i >= `min`.
fn divisor_chains(n: u64, min: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if n == 1 {
        out.push(prefix.clone());
        return;
    }
    for d in min..=n {
        if n.is_multiple_of(d) {
            prefix.push(d);
            // later factors must be multiples of d
            divisor_chains_multiple(n / d, d, prefix, out);
            prefix.pop();
        }
    }
}

fn divisor_chains_multiple(n: u64, of: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if n == 1 {
        out.push(prefix.clone());
        return;
    }
    let mut d = of;
    while d <= n {
        if n.is_multiple_of(d) && d.is_multiple_of(of) {
            prefix.push(d);
            divisor_chains_multiple(n / d, d, prefix, out);
            prefix.pop();
        }
        d += of;
    }
}

#[derive(Deserialize)]
struct MonoidDoc {
    elements: Vec<String>,
    unit: String,
    table: Vec<Vec<String>>,
    #[serde(default)]
    commutative: Option<bool>,
}

impl MonoidDoc {
    fn build(self) -> Result<FiniteMonoid, CatError> {
        let find = |name: &str| {
            self.elements
                .iter()
                .position(|e| e == name)
                .ok_or_else(|| CatError::UnknownName(name.to_string()))
        };
        let unit = find(&self.unit)?;
        let table = self
            .table
            .iter()
            .map(|row| row.iter().map(|cell| find(cell)).collect())
            .collect::<Result<Vec<Vec<_>>, _>>()?;
        let monoid = FiniteMonoid::new(self.elements, unit, table)?;
        if let Some(flag) = self.commutative {
            if flag != monoid.is_commutative() {
                let (a, b) = monoid.noncommutative_witness().unwrap_or((0, 0));
                return Err(CatError::CommutativityFlag {
                    a: monoid.element_name(a).to_string(),
                    b: monoid.element_name(b).to_string(),
                });
            }
        }
        Ok(monoid)
    }
}

/// The one-object category whose arrows are the monoid elements and whose
/// composition is the multiplication.
pub fn monoid_as_category(m: &FiniteMonoid) -> FiniteCategory {
    let arrows = (0..m.size())
        .map(|a| (m.element_name(a).to_string(), 0, 0))
        .collect();
    let composites = (0..m.size())
        .flat_map(|g| (0..m.size()).map(move |f| (g, f)))
        .map(|(g, f)| (g, f, m.mul(g, f)))
        .collect();
    FiniteCategory::new(vec!["*".into()], arrows, vec![m.unit()], composites)
        .expect("delooping of a valid monoid is valid")
}

/// A functor between validated finite categories, stored as its object and
/// arrow maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functor {
    object_map: Vec<usize>,
    arrow_map: Vec<usize>,
}

impl Functor {
    pub fn new(
        src: &FiniteCategory,
        dst: &FiniteCategory,
        object_map: Vec<usize>,
        arrow_map: Vec<usize>,
    ) -> Result<Self, CatError> {
        if object_map.len() != src.object_count() || arrow_map.len() != src.arrow_count() {
            return Err(CatError::Shape("functor map lengths".into()));
        }
        for a in 0..src.arrow_count() {
            let fa = arrow_map[a];
            if fa >= dst.arrow_count()
                || dst.source(fa) != object_map[src.source(a)]
                || dst.target(fa) != object_map[src.target(a)]
            {
                return Err(CatError::FunctorLaw {
                    what: "endpoints",
                    witness: src.arrow_name(a).to_string(),
                    got: dst
                        .arrow_names
                        .get(fa)
                        .cloned()
                        .unwrap_or_else(|| format!("#{fa}")),
                    expected: format!(
                        "an arrow {} -> {}",
                        dst.object_name(object_map[src.source(a)]),
                        dst.object_name(object_map[src.target(a)])
                    ),
                });
            }
        }
        for x in 0..src.object_count() {
            if arrow_map[src.identity(x)] != dst.identity(object_map[x]) {
                return Err(CatError::FunctorLaw {
                    what: "identities",
                    witness: src.object_name(x).to_string(),
                    got: dst.arrow_name(arrow_map[src.identity(x)]).to_string(),
                    expected: dst.arrow_name(dst.identity(object_map[x])).to_string(),
                });
            }
        }
        for g in 0..src.arrow_count() {
            for f in 0..src.arrow_count() {
                if let Some(gf) = src.compose(g, f) {
                    let image = dst
                        .compose(arrow_map[g], arrow_map[f])
                        .expect("endpoints preserved");
                    if image != arrow_map[gf] {
                        return Err(CatError::FunctorLaw {
                            what: "composition",
                            witness: format!(
                                "({}, {})",
                                src.arrow_name(g),
                                src.arrow_name(f)
                            ),
                            got: dst.arrow_name(image).to_string(),
                            expected: dst.arrow_name(arrow_map[gf]).to_string(),
                        });
                    }
                }
            }
        }
        Ok(Self {
            object_map,
            arrow_map,
        })
    }

    pub fn identity(c: &FiniteCategory) -> Self {
        Self {
            object_map: (0..c.object_count()).collect(),
            arrow_map: (0..c.arrow_count()).collect(),
        }
    }

    pub fn apply_object(&self, x: usize) -> usize {
        self.object_map[x]
    }

    pub fn apply_arrow(&self, a: usize) -> usize {
        self.arrow_map[a]
    }

    pub fn object_map(&self) -> &[usize] {
        &self.object_map
    }

    pub fn arrow_map(&self) -> &[usize] {
        &self.arrow_map
    }
}

/// `outer` after `inner` on maps; callers keep track of the categories.
pub fn compose_functors(outer: &Functor, inner: &Functor) -> Functor {
    Functor {
        object_map: inner
            .object_map
            .iter()
            .map(|&x| outer.object_map[x])
            .collect(),
        arrow_map: inner
            .arrow_map
            .iter()
            .map(|&a| outer.arrow_map[a])
            .collect(),
    }
}

/// Every functor `src -> dst`, by backtracking over arrow images with
/// incremental composition checks.
pub fn enumerate_functors(src: &FiniteCategory, dst: &FiniteCategory) -> Vec<Functor> {
    let mut out = Vec::new();
    let mut object_map = vec![0usize; src.object_count()];
    enumerate_object_maps(src, dst, 0, &mut object_map, &mut out);
    out
}

fn enumerate_object_maps(
    src: &FiniteCategory,
    dst: &FiniteCategory,
    at: usize,
    object_map: &mut Vec<usize>,
    out: &mut Vec<Functor>,
) {
    if at == src.object_count() {
        let mut arrow_map = vec![usize::MAX; src.arrow_count()];
        for x in 0..src.object_count() {
            arrow_map[src.identity(x)] = dst.identity(object_map[x]);
        }
        enumerate_arrow_maps(src, dst, 0, object_map, &mut arrow_map, out);
        return;
    }
    for y in 0..dst.object_count() {
        object_map[at] = y;
        enumerate_object_maps(src, dst, at + 1, object_map, out);
    }
}

fn enumerate_arrow_maps(
    src: &FiniteCategory,
    dst: &FiniteCategory,
    at: usize,
    object_map: &[usize],
    arrow_map: &mut Vec<usize>,
    out: &mut Vec<Functor>,
) {
    if at == src.arrow_count() {
        if let Ok(functor) = Functor::new(src, dst, object_map.to_vec(), arrow_map.clone()) {
            out.push(functor);
        }
        return;
    }
    if arrow_map[at] != usize::MAX {
        enumerate_arrow_maps(src, dst, at + 1, object_map, arrow_map, out);
        return;
    }
    for candidate in 0..dst.arrow_count() {
        if dst.source(candidate) != object_map[src.source(at)]
            || dst.target(candidate) != object_map[src.target(at)]
        {
            continue;
        }
        arrow_map[at] = candidate;
        if partial_composition_ok(src, dst, at, arrow_map) {
            enumerate_arrow_maps(src, dst, at + 1, object_map, arrow_map, out);
        }
        arrow_map[at] = usize::MAX;
    }
}

fn partial_composition_ok(
    src: &FiniteCategory,
    dst: &FiniteCategory,
    newest: usize,
    arrow_map: &[usize],
) -> bool {
    for other in 0..src.arrow_count() {
        if arrow_map[other] == usize::MAX {
            continue;
        }
        for (g, f) in [(newest, other), (other, newest)] {
            if let Some(gf) = src.compose(g, f) {
                if arrow_map[gf] == usize::MAX {
                    continue;
                }
                let image = dst.compose(arrow_map[g], arrow_map[f]);
                if image != Some(arrow_map[gf]) {
                    return false;
                }
            }
        }
    }
    true
}

/// A natural transformation as one component arrow per source object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaturalTransformation {
    components: Vec<usize>,
}

impl NaturalTransformation {
    pub fn new(
        src: &FiniteCategory,
        dst: &FiniteCategory,
        f: &Functor,
        g: &Functor,
        components: Vec<usize>,
    ) -> Result<Self, CatError> {
        if components.len() != src.object_count() {
            return Err(CatError::Shape("one component per object".into()));
        }
        for (x, &c) in components.iter().enumerate() {
            if c >= dst.arrow_count()
                || dst.source(c) != f.apply_object(x)
                || dst.target(c) != g.apply_object(x)
            {
                return Err(CatError::FunctorLaw {
                    what: "component endpoints",
                    witness: src.object_name(x).to_string(),
                    got: dst
                        .arrow_names
                        .get(c)
                        .cloned()
                        .unwrap_or_else(|| format!("#{c}")),
                    expected: format!(
                        "an arrow {} -> {}",
                        dst.object_name(f.apply_object(x)),
                        dst.object_name(g.apply_object(x))
                    ),
                });
            }
        }
        for a in 0..src.arrow_count() {
            let lhs = dst
                .compose(components[src.target(a)], f.apply_arrow(a))
                .expect("component endpoints checked");
            let rhs = dst
                .compose(g.apply_arrow(a), components[src.source(a)])
                .expect("component endpoints checked");
            if lhs != rhs {
                return Err(CatError::Naturality {
                    arrow: src.arrow_name(a).to_string(),
                    lhs: dst.arrow_name(lhs).to_string(),
                    rhs: dst.arrow_name(rhs).to_string(),
                });
            }
        }
        Ok(Self { components })
    }

    pub fn identity(c: &FiniteCategory, dst: &FiniteCategory, f: &Functor) -> Self {
        Self {
            components: (0..c.object_count())
                .map(|x| dst.identity(f.apply_object(x)))
                .collect(),
        }
    }

    pub fn component(&self, x: usize) -> usize {
        self.components[x]
    }

    pub fn components(&self) -> &[usize] {
        &self.components
    }
}

/// Every natural transformation between two parallel functors.
pub fn enumerate_naturals(
    src: &FiniteCategory,
    dst: &FiniteCategory,
    f: &Functor,
    g: &Functor,
) -> Vec<NaturalTransformation> {
    let mut out = Vec::new();
    let candidates: Vec<Vec<usize>> = (0..src.object_count())
        .map(|x| {
            (0..dst.arrow_count())
                .filter(|&c| {
                    dst.source(c) == f.apply_object(x) && dst.target(c) == g.apply_object(x)
                })
                .collect()
        })
        .collect();
    let mut chosen = vec![0usize; src.object_count()];
    fill_naturals(src, dst, f, g, &candidates, 0, &mut chosen, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn fill_naturals(
    src: &FiniteCategory,
    dst: &FiniteCategory,
    f: &Functor,
    g: &Functor,
    candidates: &[Vec<usize>],
    at: usize,
    chosen: &mut Vec<usize>,
    out: &mut Vec<NaturalTransformation>,
) {
    if at == src.object_count() {
        if let Ok(nat) = NaturalTransformation::new(src, dst, f, g, chosen.clone()) {
            out.push(nat);
        }
        return;
    }
    for &c in &candidates[at] {
        chosen[at] = c;
        fill_naturals(src, dst, f, g, candidates, at + 1, chosen, out);
    }
}

/// The endpoint inclusion `C -> C x 2` at end `0` or `1`, where the
/// cylinder is `product_category(c, two_category())`.
pub fn endpoint_inclusion(
    c: &FiniteCategory,
    cylinder: &FiniteCategory,
    end: usize,
) -> Functor {
    assert!(end < 2, "two endpoints");
    let two = two_category();
    let object_map = (0..c.object_count())
        .map(|x| product_object_index(&two, x, end))
        .collect();
    let arrow_map = (0..c.arrow_count())
        .map(|a| product_arrow_index(&two, a, end))
        .collect();
    Functor::new(c, cylinder, object_map, arrow_map).expect("endpoint inclusion is a functor")
}

/// Packages a natural transformation `alpha: f => g` as a functor
/// `C x 2 -> D` agreeing with `f` and `g` on the two ends and sending
/// `(a, h)` to `g(a)` after the component at the source of `a`.
pub fn nat_to_functor(
    c: &FiniteCategory,
    d: &FiniteCategory,
    f: &Functor,
    g: &Functor,
    alpha: &NaturalTransformation,
) -> Functor {
    let two = two_category();
    let cylinder = product_category(c, &two);
    let object_map = (0..cylinder.object_count())
        .map(|xy| {
            let (x, end) = product_object_split(&two, xy);
            match end {
                0 => f.apply_object(x),
                _ => g.apply_object(x),
            }
        })
        .collect();
    let arrow_map = (0..cylinder.arrow_count())
        .map(|fg| {
            let (a, u) = product_arrow_split(&two, fg);
            match u {
                0 => f.apply_arrow(a),
                1 => g.apply_arrow(a),
                _ => d
                    .compose(g.apply_arrow(a), alpha.component(c.source(a)))
                    .expect("component endpoints match"),
            }
        })
        .collect();
    Functor::new(&cylinder, d, object_map, arrow_map)
        .expect("a natural transformation induces a cylinder functor")
}

/// Recovers the two end functors and the transformation `alpha_x = A(1_x, h)`
/// from a cylinder functor `A: C x 2 -> D`.
pub fn functor_to_nat(
    c: &FiniteCategory,
    d: &FiniteCategory,
    a: &Functor,
) -> Result<(Functor, Functor, NaturalTransformation), CatError> {
    let two = two_category();
    let cylinder = product_category(c, &two);
    let end = |end: usize| {
        let inclusion = endpoint_inclusion(c, &cylinder, end);
        let composed = compose_functors(a, &inclusion);
        Functor::new(c, d, composed.object_map.clone(), composed.arrow_map.clone())
    };
    let f = end(0)?;
    let g = end(1)?;
    let components = (0..c.object_count())
        .map(|x| a.apply_arrow(product_arrow_index(&two, c.identity(x), 2)))
        .collect();
    let alpha = NaturalTransformation::new(c, d, &f, &g, components)?;
    Ok((f, g, alpha))
}
