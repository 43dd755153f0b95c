//! Finite group actions on finite sets standing in for clopen partitions of
//! a Cantor system, and Rokhlin towers for free actions.
//!
//! A tower is a base N whose translates g·N are pairwise disjoint and
//! cover the set. The greedy recursion N₁ = K₁,
//! N_{k+1} = N_k ∪ (K_{k+1} \ G·N_k) builds one from any cover by sets
//! with disjoint translates.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupTable {
    pub order: usize,
    /// table[g][h] = g·h. Element 0 must be the identity.
    pub table: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GSetDoc {
    elements: Vec<String>,
    group: GroupTable,
    /// action[g][x] = index of g·x
    action: Vec<Vec<usize>>,
}

/// A finite G-set with validated group and action axioms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GSetDoc", into = "GSetDoc")]
pub struct FiniteGSet {
    elements: Vec<String>,
    group: GroupTable,
    action: Vec<Vec<usize>>,
}

impl TryFrom<GSetDoc> for FiniteGSet {
    type Error = Error;

    fn try_from(doc: GSetDoc) -> Result<Self> {
        FiniteGSet::new(doc.elements, doc.group, doc.action)
    }
}

impl From<FiniteGSet> for GSetDoc {
    fn from(gs: FiniteGSet) -> Self {
        GSetDoc { elements: gs.elements, group: gs.group, action: gs.action }
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidGSet(msg.into())
}

impl FiniteGSet {
    pub fn new(elements: Vec<String>, group: GroupTable, action: Vec<Vec<usize>>) -> Result<Self> {
        let k = group.order;
        let n = elements.len();
        if n == 0 {
            return Err(invalid("no elements"));
        }
        if k == 0 {
            return Err(invalid("group order 0"));
        }
        if elements.iter().collect::<BTreeSet<_>>().len() != n {
            return Err(invalid("duplicate element names"));
        }
        let t = &group.table;
        if t.len() != k || t.iter().any(|row| row.len() != k || row.iter().any(|&x| x >= k)) {
            return Err(invalid(format!("group table must be {k}×{k} with entries < {k}")));
        }
        if (0..k).any(|g| t[0][g] != g || t[g][0] != g) {
            return Err(invalid("element 0 is not the identity"));
        }
        for g in 0..k {
            if !(0..k).any(|h| t[g][h] == 0) {
                return Err(invalid(format!("group element {g} has no inverse")));
            }
            for h in 0..k {
                for l in 0..k {
                    if t[t[g][h]][l] != t[g][t[h][l]] {
                        return Err(invalid(format!("table not associative at ({g},{h},{l})")));
                    }
                }
            }
        }
        if action.len() != k || action.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(invalid(format!("action must be {k}×{n} with entries < {n}")));
        }
        if (0..n).any(|x| action[0][x] != x) {
            return Err(invalid("identity does not act trivially"));
        }
        for g in 0..k {
            for h in 0..k {
                for x in 0..n {
                    if action[t[g][h]][x] != action[g][action[h][x]] {
                        return Err(invalid(format!("(gh)·x ≠ g·(h·x) at g={g}, h={h}, x={x}")));
                    }
                }
            }
        }
        Ok(FiniteGSet { elements, group, action })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn group_order(&self) -> usize {
        self.group.order
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn act(&self, g: usize, x: usize) -> usize {
        self.action[g][x]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    pub fn translate(&self, g: usize, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        set.iter().map(|&x| self.act(g, x)).collect()
    }

    /// G·S
    pub fn saturate(&self, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        (0..self.group.order).flat_map(|g| self.translate(g, set)).collect()
    }

    /// Whether the translates g·S are pairwise disjoint.
    pub fn has_disjoint_translates(&self, set: &BTreeSet<usize>) -> bool {
        self.saturate(set).len() == self.group.order * set.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FixedPoint {
    pub group_element: usize,
    pub point: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Freeness {
    pub free: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<FixedPoint>,
}

pub fn is_free(gs: &FiniteGSet) -> Freeness {
    let witness = (1..gs.group_order())
        .flat_map(|g| (0..gs.len()).map(move |x| (g, x)))
        .find(|&(g, x)| gs.act(g, x) == x)
        .map(|(group_element, point)| FixedPoint { group_element, point });
    Freeness { free: witness.is_none(), witness }
}

fn require_free(gs: &FiniteGSet) -> Result<()> {
    match is_free(gs).witness {
        Some(w) => Err(Error::NotFree { group: w.group_element, point: w.point }),
        None => Ok(()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Tower {
    pub base: BTreeSet<usize>,
    /// translates[g] = g·base
    pub translates: Vec<BTreeSet<usize>>,
}

impl Tower {
    pub fn from_base(gs: &FiniteGSet, base: BTreeSet<usize>) -> Tower {
        let translates = (0..gs.group_order()).map(|g| gs.translate(g, &base)).collect();
        Tower { base, translates }
    }

    /// Translates with element names, keyed by group element.
    pub fn named(&self, gs: &FiniteGSet) -> BTreeMap<usize, Vec<String>> {
        self.translates
            .iter()
            .enumerate()
            .map(|(g, t)| (g, t.iter().map(|&x| gs.elements()[x].clone()).collect()))
            .collect()
    }
}

pub fn default_cover(gs: &FiniteGSet) -> Result<Vec<BTreeSet<usize>>> {
    require_free(gs)?;
    Ok((0..gs.len()).map(|x| BTreeSet::from([x])).collect())
}

pub fn greedy_tower(gs: &FiniteGSet, cover: &[BTreeSet<usize>]) -> Result<Tower> {
    require_free(gs)?;
    for (index, k) in cover.iter().enumerate() {
        if k.iter().any(|&x| x >= gs.len()) {
            return Err(Error::InvalidCover(format!("set {index} names a missing element")));
        }
        if !gs.has_disjoint_translates(k) {
            return Err(Error::CollidingCover { index });
        }
    }
    let mut base = BTreeSet::new();
    let mut covered = BTreeSet::new();
    for k in cover {
        base.extend(k.difference(&covered).copied().collect::<Vec<_>>());
        covered = gs.saturate(&base);
    }
    if covered.len() != gs.len() {
        return Err(Error::CoverInsufficient);
    }
    Ok(Tower::from_base(gs, base))
}

/// Exact partition check: translates pairwise disjoint and covering.
pub fn verify_tower(gs: &FiniteGSet, tower: &Tower) -> bool {
    if tower.translates.len() != gs.group_order() {
        return false;
    }
    let mut seen = BTreeSet::new();
    for (g, t) in tower.translates.iter().enumerate() {
        if *t != gs.translate(g, &tower.base) {
            return false;
        }
        for &x in t {
            if x >= gs.len() || !seen.insert(x) {
                return false;
            }
        }
    }
    seen.len() == gs.len()
}

/// Parse a cover document: a list of lists of element names.
pub fn parse_cover(gs: &FiniteGSet, text: &str) -> Result<Vec<BTreeSet<usize>>> {
    let names: Vec<Vec<String>> = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    names
        .iter()
        .map(|set| {
            set.iter()
                .map(|n| gs.index_of(n).ok_or_else(|| Error::InvalidCover(format!("unknown element {n:?}"))))
                .collect()
        })
        .collect()
}

/// Cyclic group ℤ/k as a table.
pub fn cyclic_group(k: usize) -> GroupTable {
    GroupTable { order: k, table: (0..k).map(|g| (0..k).map(|h| (g + h) % k).collect()).collect() }
}

/// ℤ/2 × ℤ/2 with elements encoded as bit pairs.
pub fn klein_four_group() -> GroupTable {
    GroupTable { order: 4, table: (0..4).map(|g| (0..4).map(|h| g ^ h).collect()).collect() }
}
