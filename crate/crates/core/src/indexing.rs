//! Indexing categories: finite posets in which every pair of objects has a
//! minimal common ancestor.
//!
//! Objects are addressed by dense indices ([`ObjectId`]) and carry opaque
//! string names. Ancestry is the reflexive-transitive relation "i is an
//! ancestor of j", i.e. there is a morphism `i -> j`. Full shapes `Λn` (the
//! nonempty subsets of `{1..n}` ordered by reverse inclusion) are recognised
//! and keep their subset masks so that coordinate permutations can act on
//! them.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type ObjectId = usize;

/// Upper bound on the number of objects of a category.
pub const MAX_OBJECTS: usize = 255;
/// Upper bound on `n` for the full shape `Λn`.
pub const MAX_LAMBDA: usize = 8;

#[derive(Clone, Debug)]
pub struct IndexingCategory {
    names: Vec<String>,
    index: HashMap<String, ObjectId>,
    ancestry: Vec<bool>,
    mca: Vec<ObjectId>,
    initial: ObjectId,
    subsets: Option<Vec<u32>>,
}

impl PartialEq for IndexingCategory {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.ancestry == other.ancestry
    }
}

impl Eq for IndexingCategory {}

/// A pair of morphisms `left <- apex -> right`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fan {
    pub apex: ObjectId,
    pub left: ObjectId,
    pub right: ObjectId,
}

/// JSON form: `{ "objects": [..], "arrows": [[from, to], ..] }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryJson {
    pub objects: Vec<String>,
    pub arrows: Vec<(String, String)>,
}

fn index_names(names: &[String]) -> Result<HashMap<String, ObjectId>> {
    let mut index = HashMap::with_capacity(names.len());
    for (i, name) in names.iter().enumerate() {
        if index.insert(name.clone(), i).is_some() {
            return Err(Error::DuplicateObject(name.clone()));
        }
    }
    Ok(index)
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::NoInitialObject);
    }
    if n > MAX_OBJECTS {
        return Err(Error::SizeLimit {
            what: "object count",
            got: n as u128,
            limit: MAX_OBJECTS as u128,
        });
    }
    Ok(())
}

/// Canonical name of a subset of `{1..n}`: its digits in increasing order.
pub fn subset_name(mask: u32) -> String {
    (0..32)
        .filter(|b| mask & (1 << b) != 0)
        .map(|b| char::from_digit(b + 1, 10).expect("element index below 9"))
        .collect()
}

/// Nonempty subsets of `{1..n}` as masks, ordered by size and then
/// lexicographically, which is the printed coordinate order.
pub fn lambda_masks(n: usize) -> Vec<u32> {
    let mut masks: Vec<u32> = (1..(1u32 << n)).collect();
    masks.sort_by_key(|&m| {
        let elems: Vec<u32> = (0..n as u32).filter(|b| m & (1 << b) != 0).collect();
        (m.count_ones(), elems)
    });
    masks
}

impl IndexingCategory {
    /// Validates an explicit ancestry relation (`ancestry[i][j]` = i is an
    /// ancestor of j). The diagonal is taken as reflexive.
    pub fn validate(objects: Vec<String>, ancestry: &[Vec<bool>]) -> Result<Self> {
        let n = objects.len();
        check_size(n)?;
        let index = index_names(&objects)?;
        if ancestry.len() != n || ancestry.iter().any(|row| row.len() != n) {
            return Err(Error::Parse(format!("ancestry must be a {n}x{n} matrix")));
        }
        let mut rel = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                rel[i * n + j] = i == j || ancestry[i][j];
            }
        }
        for i in 0..n {
            for k in 0..n {
                if i == k || !rel[i * n + k] {
                    continue;
                }
                for j in 0..n {
                    if rel[k * n + j] && !rel[i * n + j] {
                        return Err(Error::NotAPoset {
                            axiom: "transitivity",
                            pair: (objects[i].clone(), objects[j].clone()),
                        });
                    }
                }
            }
        }
        Self::finish(objects, index, rel)
    }

    /// Builds a category from a generating set of arrows; the transitive
    /// closure is taken before validation.
    pub fn from_arrows(objects: Vec<String>, arrows: &[(String, String)]) -> Result<Self> {
        let n = objects.len();
        check_size(n)?;
        let index = index_names(&objects)?;
        let mut rel = vec![false; n * n];
        for i in 0..n {
            rel[i * n + i] = true;
        }
        for (from, to) in arrows {
            let a = *index.get(from).ok_or_else(|| Error::UnknownObject(from.clone()))?;
            let b = *index.get(to).ok_or_else(|| Error::UnknownObject(to.clone()))?;
            rel[a * n + b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if rel[i * n + k] {
                    for j in 0..n {
                        if rel[k * n + j] {
                            rel[i * n + j] = true;
                        }
                    }
                }
            }
        }
        Self::finish(objects, index, rel)
    }

    pub fn from_json(json: &CategoryJson) -> Result<Self> {
        Self::from_arrows(json.objects.clone(), &json.arrows)
    }

    pub fn to_json(&self) -> CategoryJson {
        CategoryJson {
            objects: self.names.clone(),
            arrows: self
                .covering_arrows()
                .into_iter()
                .map(|(a, b)| (self.names[a].clone(), self.names[b].clone()))
                .collect(),
        }
    }

    fn finish(names: Vec<String>, index: HashMap<String, ObjectId>, rel: Vec<bool>) -> Result<Self> {
        let n = names.len();
        for i in 0..n {
            for j in (i + 1)..n {
                if rel[i * n + j] && rel[j * n + i] {
                    return Err(Error::NotAPoset {
                        axiom: "antisymmetry",
                        pair: (names[i].clone(), names[j].clone()),
                    });
                }
            }
        }
        let ancestor_count: Vec<usize> = (0..n)
            .map(|j| (0..n).filter(|&k| rel[k * n + j]).count())
            .collect();
        let mut mca = vec![0; n * n];
        for i in 0..n {
            for j in i..n {
                let common: Vec<ObjectId> =
                    (0..n).filter(|&k| rel[k * n + i] && rel[k * n + j]).collect();
                let candidate = common.iter().copied().max_by_key(|&k| ancestor_count[k]);
                let found = candidate.filter(|&m| common.iter().all(|&c| rel[c * n + m]));
                match found {
                    Some(m) => {
                        mca[i * n + j] = m;
                        mca[j * n + i] = m;
                    }
                    None => {
                        return Err(Error::NoMinimalCommonAncestor(
                            names[i].clone(),
                            names[j].clone(),
                        ))
                    }
                }
            }
        }
        let initial = (0..n)
            .find(|&i| (0..n).all(|j| rel[i * n + j]))
            .ok_or(Error::NoInitialObject)?;
        let mut cat = IndexingCategory {
            names,
            index,
            ancestry: rel,
            mca,
            initial,
            subsets: None,
        };
        cat.subsets = cat.detect_lambda();
        Ok(cat)
    }

    fn detect_lambda(&self) -> Option<Vec<u32>> {
        let len = self.len() + 1;
        if !len.is_power_of_two() {
            return None;
        }
        let n = len.trailing_zeros() as usize;
        if n == 0 || n > MAX_LAMBDA {
            return None;
        }
        let masks = lambda_masks(n);
        if masks.iter().zip(&self.names).any(|(&m, name)| subset_name(m) != *name) {
            return None;
        }
        for (i, &a) in masks.iter().enumerate() {
            for (j, &b) in masks.iter().enumerate() {
                if self.is_ancestor(i, j) != (a & b == b) {
                    return None;
                }
            }
        }
        Some(masks)
    }

    /// The full shape `Λn`.
    pub fn lambda_n(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_LAMBDA {
            return Err(Error::SizeLimit {
                what: "lambda rank",
                got: n as u128,
                limit: MAX_LAMBDA as u128,
            });
        }
        let masks = lambda_masks(n);
        let names: Vec<String> = masks.iter().map(|&m| subset_name(m)).collect();
        let index = index_names(&names)?;
        let len = masks.len();
        let mut rel = vec![false; len * len];
        let mut mca = vec![0; len * len];
        let mut position = vec![0usize; 1 << n];
        for (i, &m) in masks.iter().enumerate() {
            position[m as usize] = i;
        }
        for (i, &a) in masks.iter().enumerate() {
            for (j, &b) in masks.iter().enumerate() {
                rel[i * len + j] = a & b == b;
                mca[i * len + j] = position[(a | b) as usize];
            }
        }
        Ok(IndexingCategory {
            names,
            index,
            ancestry: rel,
            mca,
            initial: len - 1,
            subsets: Some(masks),
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjectId> {
        0..self.len()
    }

    pub fn name(&self, obj: ObjectId) -> &str {
        &self.names[obj]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn id(&self, name: &str) -> Result<ObjectId> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownObject(name.to_string()))
    }

    pub fn initial(&self) -> ObjectId {
        self.initial
    }

    /// True when there is a morphism `i -> j` (reflexive).
    pub fn is_ancestor(&self, i: ObjectId, j: ObjectId) -> bool {
        self.ancestry[i * self.len() + j]
    }

    pub fn comparable(&self, i: ObjectId, j: ObjectId) -> bool {
        self.is_ancestor(i, j) || self.is_ancestor(j, i)
    }

    pub fn minimal_common_ancestor(&self, i: ObjectId, j: ObjectId) -> ObjectId {
        self.mca[i * self.len() + j]
    }

    pub fn minimal_fan(&self, left: ObjectId, right: ObjectId) -> Fan {
        Fan {
            apex: self.minimal_common_ancestor(left, right),
            left,
            right,
        }
    }

    pub fn descendants(&self, i: ObjectId) -> Vec<ObjectId> {
        self.objects().filter(|&j| self.is_ancestor(i, j)).collect()
    }

    /// The full subcategory on `i` and its descendants.
    pub fn ideal(&self, i: ObjectId) -> IndexingCategory {
        if i == self.initial {
            return self.clone();
        }
        let keep = self.descendants(i);
        let names: Vec<String> = keep.iter().map(|&k| self.names[k].clone()).collect();
        let matrix: Vec<Vec<bool>> = keep
            .iter()
            .map(|&a| keep.iter().map(|&b| self.is_ancestor(a, b)).collect())
            .collect();
        // a down-set of an indexing category is again one: the common
        // ancestors inside the ideal keep their minimum
        IndexingCategory::validate(names, &matrix).expect("ideal of a valid category")
    }

    /// Objects that are not an ancestor of any other object.
    pub fn terminal_objects(&self) -> Vec<ObjectId> {
        self.objects()
            .filter(|&i| self.objects().all(|j| j == i || !self.is_ancestor(i, j)))
            .collect()
    }

    pub fn is_terminal(&self, i: ObjectId) -> bool {
        self.objects().all(|j| j == i || !self.is_ancestor(i, j))
    }

    /// Covering relations (the Hasse diagram) as `(from, to)` pairs.
    pub fn covering_arrows(&self) -> Vec<(ObjectId, ObjectId)> {
        let mut arrows = Vec::new();
        for i in self.objects() {
            for j in self.objects() {
                if i == j || !self.is_ancestor(i, j) {
                    continue;
                }
                let covered = self
                    .objects()
                    .any(|k| k != i && k != j && self.is_ancestor(i, k) && self.is_ancestor(k, j));
                if !covered {
                    arrows.push((i, j));
                }
            }
        }
        arrows
    }

    /// `Some(n)` when this is the canonical full shape `Λn`.
    pub fn lambda_rank(&self) -> Option<usize> {
        self.subsets
            .as_ref()
            .map(|m| (m.len() + 1).trailing_zeros() as usize)
    }

    /// Subset mask of an object of a full shape.
    pub fn subset(&self, obj: ObjectId) -> Option<u32> {
        self.subsets.as_ref().map(|m| m[obj])
    }

    pub fn object_of_subset(&self, mask: u32) -> Option<ObjectId> {
        self.subsets.as_ref()?.iter().position(|&m| m == mask)
    }

    /// Identifies `merged` with `keep` (an arrow `keep -> merged` or the
    /// reverse) and revalidates. Returns the new category and the map from
    /// old to new object ids.
    pub fn collapse(&self, keep: ObjectId, merged: ObjectId) -> Result<(Self, Vec<ObjectId>)> {
        let remap: Vec<ObjectId> = self
            .objects()
            .map(|k| match k {
                k if k == merged => keep - usize::from(merged < keep),
                k => k - usize::from(k > merged),
            })
            .collect();
        let names: Vec<String> = self
            .objects()
            .filter(|&k| k != merged)
            .map(|k| self.names[k].clone())
            .collect();
        let mut arrows = Vec::new();
        for i in self.objects() {
            for j in self.objects() {
                if i != j && self.is_ancestor(i, j) && remap[i] != remap[j] {
                    arrows.push((names[remap[i]].clone(), names[remap[j]].clone()));
                }
            }
        }
        let cat = IndexingCategory::from_arrows(names, &arrows)?;
        Ok((cat, remap))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strings(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    fn arrows(xs: &[(&str, &str)]) -> Vec<(String, String)> {
        xs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
    }

    fn chain() -> IndexingCategory {
        IndexingCategory::from_arrows(strings(&["a", "b", "c"]), &arrows(&[("a", "b"), ("b", "c")]))
            .unwrap()
    }

    #[test]
    fn chain_is_valid() {
        let c = chain();
        assert_eq!(c.initial(), 0);
        assert!(c.is_ancestor(0, 2));
        assert_eq!(c.minimal_common_ancestor(1, 2), 1);
        assert_eq!(c.terminal_objects(), vec![2]);
    }

    #[test]
    fn counterexample_has_no_mca() {
        let objs = strings(&["m", "k", "l", "i", "j"]);
        let arr = arrows(&[
            ("m", "k"),
            ("m", "l"),
            ("k", "i"),
            ("k", "j"),
            ("l", "i"),
            ("l", "j"),
        ]);
        match IndexingCategory::from_arrows(objs, &arr) {
            Err(Error::NoMinimalCommonAncestor(a, b)) => assert_eq!((a.as_str(), b.as_str()), ("i", "j")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn cycle_is_not_a_poset() {
        let r = IndexingCategory::from_arrows(strings(&["a", "b"]), &arrows(&[("a", "b"), ("b", "a")]));
        assert!(matches!(r, Err(Error::NotAPoset { axiom: "antisymmetry", .. })));
    }

    #[test]
    fn intransitive_relation_rejected() {
        let m = vec![
            vec![true, true, false],
            vec![false, true, true],
            vec![false, false, true],
        ];
        let r = IndexingCategory::validate(strings(&["a", "b", "c"]), &m);
        match r {
            Err(Error::NotAPoset { axiom, pair }) => {
                assert_eq!(axiom, "transitivity");
                assert_eq!(pair, ("a".to_string(), "c".to_string()));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn no_initial_object_for_two_roots() {
        // two incomparable objects: their common ancestor set is empty
        let r = IndexingCategory::from_arrows(strings(&["a", "b"]), &[]);
        assert!(matches!(r, Err(Error::NoMinimalCommonAncestor(_, _))));
        let r = IndexingCategory::from_arrows(vec![], &[]);
        assert!(matches!(r, Err(Error::NoInitialObject)));
    }

    #[test]
    fn lambda_shapes() {
        let l1 = IndexingCategory::lambda_n(1).unwrap();
        assert_eq!(l1.len(), 1);
        let l2 = IndexingCategory::lambda_n(2).unwrap();
        assert_eq!(l2.names(), &strings(&["1", "2", "12"])[..]);
        assert_eq!(l2.minimal_fan(0, 1), Fan { apex: 2, left: 0, right: 1 });
        let l4 = IndexingCategory::lambda_n(4).unwrap();
        assert_eq!(l4.len(), 15);
        assert_eq!(
            l4.names(),
            &strings(&[
                "1", "2", "3", "4", "12", "13", "14", "23", "24", "34", "123", "124", "134", "234",
                "1234"
            ])[..]
        );
        assert!(IndexingCategory::lambda_n(9).is_err());
        assert!(IndexingCategory::lambda_n(0).is_err());
    }

    #[test]
    fn lambda_mca_and_fans() {
        let l4 = IndexingCategory::lambda_n(4).unwrap();
        let id = |s: &str| l4.id(s).unwrap();
        assert_eq!(l4.minimal_common_ancestor(id("1"), id("2")), id("12"));
        assert_eq!(l4.minimal_common_ancestor(id("13"), id("3")), id("13"));
        assert_eq!(l4.minimal_fan(id("12"), id("23")).apex, id("123"));
        assert_eq!(l4.minimal_fan(id("2"), id("2")).apex, id("2"));
    }

    #[test]
    fn lambda_from_json_is_recognised() {
        let l3 = IndexingCategory::lambda_n(3).unwrap();
        let rebuilt = IndexingCategory::from_json(&l3.to_json()).unwrap();
        assert_eq!(rebuilt, l3);
        assert_eq!(rebuilt.lambda_rank(), Some(3));
        assert_eq!(rebuilt.subset(rebuilt.id("13").unwrap()), Some(0b101));
    }

    #[test]
    fn reverse_inclusion_matrix_validates() {
        let masks = lambda_masks(4);
        let names: Vec<String> = masks.iter().map(|&m| subset_name(m)).collect();
        let matrix: Vec<Vec<bool>> = masks
            .iter()
            .map(|&a| masks.iter().map(|&b| a & b == b).collect())
            .collect();
        let cat = IndexingCategory::validate(names, &matrix).unwrap();
        assert_eq!(cat, IndexingCategory::lambda_n(4).unwrap());
    }

    #[test]
    fn ideals() {
        let l4 = IndexingCategory::lambda_n(4).unwrap();
        let i = l4.ideal(l4.id("234").unwrap());
        assert_eq!(i.len(), 7);
        assert_eq!(i.name(i.initial()), "234");
        assert_eq!(l4.ideal(l4.id("1").unwrap()).len(), 1);
        let l2 = IndexingCategory::lambda_n(2).unwrap();
        assert_eq!(l2.ideal(l2.initial()), l2);
    }

    #[test]
    fn terminals() {
        let l4 = IndexingCategory::lambda_n(4).unwrap();
        let t: Vec<&str> = l4.terminal_objects().iter().map(|&o| l4.name(o)).collect();
        assert_eq!(t, vec!["1", "2", "3", "4"]);
        let single = IndexingCategory::from_arrows(strings(&["x"]), &[]).unwrap();
        assert_eq!(single.terminal_objects(), vec![0]);
    }

    #[test]
    fn collapse_two_fan_leg() {
        let l2 = IndexingCategory::lambda_n(2).unwrap();
        let (cat, remap) = l2.collapse(2, 0).unwrap();
        assert_eq!(cat.len(), 2);
        assert_eq!(remap, vec![1, 0, 1]);
        assert_eq!(cat.name(cat.initial()), "12");
    }
}
