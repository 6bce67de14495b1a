//! Subsets of index sets and primitive collections of a fan.
//!
//! Index sets are sorted, duplicate-free `Vec<usize>`; families of them are
//! `BTreeSet`s so iteration order is deterministic. These functions do not
//! care whether indices are 0- or 1-based.

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::error::{Error, Result};

pub type IndexSet = Vec<usize>;

fn normalized(s: &[usize]) -> IndexSet {
    let mut v = s.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.by_ref().any(|y| y == x))
}

/// All subsets with exactly one element removed. The empty set has none.
pub fn subsets_minus1(s: &[usize]) -> BTreeSet<IndexSet> {
    let s = normalized(s);
    (0..s.len())
        .map(|skip| {
            let mut t = s.clone();
            t.remove(skip);
            t
        })
        .collect()
}

/// `k`-element subsets of `s`, or the full powerset (including `∅` and `s`)
/// when `k == 0`.
pub fn set_of_all_subsets(s: &[usize], k: usize) -> Result<BTreeSet<IndexSet>> {
    let s = normalized(s);
    if k > s.len() {
        return Err(Error::Argument(format!(
            "cannot choose {k} elements from a set of {}",
            s.len()
        )));
    }
    if k == 0 {
        return Ok(s.iter().copied().powerset().collect());
    }
    Ok(s.iter().copied().combinations(k).collect())
}

/// Sets of generators that lie in no cone while every proper subset does.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PrimitiveCollections {
    collections: Vec<IndexSet>,
}

impl PrimitiveCollections {
    pub fn new(collections: impl IntoIterator<Item = IndexSet>) -> Self {
        let set: BTreeSet<IndexSet> = collections.into_iter().map(|c| normalized(&c)).collect();
        PrimitiveCollections {
            collections: set.into_iter().collect(),
        }
    }

    pub fn collections(&self) -> &[IndexSet] {
        &self.collections
    }

    pub fn len(&self) -> usize {
        self.collections.len()
    }

    pub fn is_empty(&self) -> bool {
        self.collections.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, IndexSet> {
        self.collections.iter()
    }

    pub fn as_set(&self) -> BTreeSet<IndexSet> {
        self.collections.iter().cloned().collect()
    }
}

/// Primitive collections of the fan with the given maximal cones.
///
/// A primitive collection minus one element sits inside an `n`-element cone,
/// so only candidates of size at most `n + 1` are enumerated.
pub fn prim_coll(cone_list: &[Vec<usize>]) -> Result<PrimitiveCollections> {
    let Some(first) = cone_list.first() else {
        return Ok(PrimitiveCollections::default());
    };
    let n = first.len();
    if cone_list.iter().any(|c| c.len() != n) {
        return Err(Error::Argument("all cones must have the same dimension".into()));
    }
    let cones: Vec<IndexSet> = cone_list.iter().map(|c| normalized(c)).collect();
    let union: IndexSet = normalized(&cones.concat());
    let in_some_cone = |s: &[usize]| cones.iter().any(|c| is_subset(s, c));

    let mut out = Vec::new();
    for size in 1..=(n + 1).min(union.len()) {
        for cand in union.iter().copied().combinations(size) {
            if in_some_cone(&cand) {
                continue;
            }
            if subsets_minus1(&cand).iter().all(|s| in_some_cone(s)) {
                out.push(cand);
            }
        }
    }
    Ok(PrimitiveCollections::new(out))
}

/// Copies of `cone` with position `i` replaced by `l`, for each `i` in order.
pub fn permut(cone: &[usize], l: usize) -> Vec<Vec<usize>> {
    (0..cone.len())
        .map(|i| {
            let mut t = cone.to_vec();
            t[i] = l;
            t
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(sets: &[&[usize]]) -> BTreeSet<IndexSet> {
        sets.iter().map(|s| s.to_vec()).collect()
    }

    #[test]
    fn subsets_minus1_examples() {
        assert_eq!(subsets_minus1(&[1, 2, 3]), fam(&[&[2, 3], &[1, 3], &[1, 2]]));
        assert_eq!(subsets_minus1(&[1]), fam(&[&[]]));
        assert!(subsets_minus1(&[]).is_empty());
    }

    #[test]
    fn set_of_all_subsets_examples() {
        assert_eq!(set_of_all_subsets(&[1, 2, 3], 2).unwrap(), fam(&[&[1, 2], &[1, 3], &[2, 3]]));
        assert_eq!(set_of_all_subsets(&[1, 2], 0).unwrap(), fam(&[&[], &[1], &[2], &[1, 2]]));
        assert_eq!(set_of_all_subsets(&[1, 2, 3, 4], 4).unwrap(), fam(&[&[1, 2, 3, 4]]));
        assert!(set_of_all_subsets(&[1, 2], 3).is_err());
    }

    #[test]
    fn prim_coll_examples() {
        let p2 = prim_coll(&[vec![1, 2], vec![2, 3], vec![3, 1]]).unwrap();
        assert_eq!(p2.as_set(), fam(&[&[1, 2, 3]]));
        let p1p1 = prim_coll(&[vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 1]]).unwrap();
        assert_eq!(p1p1.collections(), &[vec![1, 3], vec![2, 4]]);
        assert!(prim_coll(&[vec![1, 2]]).unwrap().is_empty());
        assert!(prim_coll(&[vec![1, 2], vec![3]]).is_err());
    }

    #[test]
    fn permut_examples() {
        assert_eq!(permut(&[1, 2], 3), vec![vec![3, 2], vec![1, 3]]);
        assert_eq!(permut(&[1], 2), vec![vec![2]]);
        assert_eq!(permut(&[2, 3, 4], 1), vec![vec![1, 3, 4], vec![2, 1, 4], vec![2, 3, 1]]);
    }
}
