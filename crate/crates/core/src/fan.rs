//! Fan input: parsing, serialization and validation.
//!
//! External formats number generators from 1. A [`Fan`] stores cones with
//! 0-based indices; conversion happens only in [`parse_fan`] and
//! [`Fan::to_json`].

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::det_integer;
use crate::Integer;

/// A fan given by integer ray generators and its maximal cones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    n: usize,
    generators: Vec<Vec<i64>>,
    /// 0-based generator indices, in the order given by the user.
    max_cones: Vec<Vec<usize>>,
}

/// Wire form of a fan file. Indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanFile {
    pub n: usize,
    pub generators: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub errors: Vec<String>,
    pub warnings: Vec<String>,
    pub is_complete_simplicial: bool,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.errors.is_empty()
    }
}

impl Fan {
    /// Build a fan from 0-based cone indices. Shape errors are rejected;
    /// geometric invariants are left to [`validate_fan`].
    pub fn new(n: usize, generators: Vec<Vec<i64>>, max_cones: Vec<Vec<usize>>) -> Result<Fan> {
        for (i, g) in generators.iter().enumerate() {
            if g.len() != n {
                return Err(Error::Parse(format!(
                    "ragged generator length: generator {} has length {}, expected {}",
                    i + 1,
                    g.len(),
                    n
                )));
            }
        }
        let d = generators.len();
        for (c, cone) in max_cones.iter().enumerate() {
            if cone.len() != n {
                return Err(Error::Parse(format!(
                    "cone {} has {} indices, expected {}",
                    c + 1,
                    cone.len(),
                    n
                )));
            }
            if let Some(&bad) = cone.iter().find(|&&i| i >= d) {
                return Err(Error::Parse(format!(
                    "cone {} index {} out of range 1..{}",
                    c + 1,
                    bad + 1,
                    d
                )));
            }
        }
        Ok(Fan { n, generators, max_cones })
    }

    /// Same as [`Fan::new`] but with 1-based cone indices.
    pub fn from_one_based(n: usize, generators: Vec<Vec<i64>>, max_cones: Vec<Vec<usize>>) -> Result<Fan> {
        let mut zero_based = Vec::with_capacity(max_cones.len());
        for (c, cone) in max_cones.into_iter().enumerate() {
            let mut out = Vec::with_capacity(cone.len());
            for i in cone {
                if i == 0 {
                    return Err(Error::Parse(format!(
                        "cone {} index 0 out of range 1..{}",
                        c + 1,
                        generators.len()
                    )));
                }
                out.push(i - 1);
            }
            zero_based.push(out);
        }
        Fan::new(n, generators, zero_based)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    pub fn generator(&self, i: usize) -> &[i64] {
        &self.generators[i]
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    /// Integer matrix whose rows are the generators listed in `indices`.
    pub fn rows(&self, indices: &[usize]) -> Vec<Vec<Integer>> {
        indices
            .iter()
            .map(|&i| self.generators[i].iter().map(|&x| Integer::from(x)).collect())
            .collect()
    }

    /// Determinant of the cone's generators taken as rows in cone order.
    pub fn cone_det(&self, cone: &[usize]) -> Integer {
        det_integer(&self.rows(cone)).expect("cone rows form a square matrix")
    }

    pub fn to_file(&self) -> FanFile {
        FanFile {
            n: self.n,
            generators: self.generators.clone(),
            max_cones: self
                .max_cones
                .iter()
                .map(|c| c.iter().map(|i| i + 1).collect())
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("fan serializes")
    }

    /// Relabel generators: generator `i` of the result is generator
    /// `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Fan> {
        let mut inverse = vec![usize::MAX; perm.len()];
        for (new, &old) in perm.iter().enumerate() {
            inverse[old] = new;
        }
        let generators = perm.iter().map(|&old| self.generators[old].clone()).collect();
        let cones = self
            .max_cones
            .iter()
            .map(|c| c.iter().map(|&i| inverse[i]).collect())
            .collect();
        Fan::new(self.n, generators, cones)
    }
}

impl TryFrom<FanFile> for Fan {
    type Error = Error;

    fn try_from(f: FanFile) -> Result<Fan> {
        Fan::from_one_based(f.n, f.generators, f.max_cones)
    }
}

/// Parse the JSON fan format (`n`, `generators`, `max_cones`).
pub fn parse_fan(text: &str) -> Result<Fan> {
    let file: FanFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    Fan::try_from(file)
}

fn fmt_set(s: &[usize]) -> String {
    let inner: Vec<String> = s.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

/// Check every fan invariant and the facet-pairing completeness heuristic.
pub fn validate_fan(f: &Fan) -> ValidationReport {
    let mut errors = Vec::new();
    let mut warnings = Vec::new();
    let n = f.n;
    let d = f.d();

    if n < 1 {
        errors.push("ambient dimension n must be at least 1".to_string());
    }
    if d < n {
        errors.push(format!("need at least n = {n} generators, found {d}"));
    }
    for (i, g) in f.generators.iter().enumerate() {
        if g.len() != n {
            errors.push(format!("ragged generator length: generator {} has length {}", i + 1, g.len()));
        }
        if g.iter().all(|&x| x == 0) {
            errors.push(format!("generator {} is zero", i + 1));
        }
    }
    for i in 0..d {
        for j in i + 1..d {
            if f.generators[i] == f.generators[j] {
                errors.push(format!("duplicated generator: v{} = v{}", i + 1, j + 1));
            }
        }
    }
    if f.max_cones.is_empty() {
        errors.push("no maximal cones".to_string());
    }

    let mut shape_ok = errors.is_empty();
    let mut seen_cones = BTreeSet::new();
    for (c, cone) in f.max_cones.iter().enumerate() {
        if cone.len() != n {
            errors.push(format!("cone {} has {} indices, expected {}", c + 1, cone.len(), n));
            shape_ok = false;
            continue;
        }
        if cone.iter().any(|&i| i >= d) {
            errors.push(format!("cone {} index out of range", c + 1));
            shape_ok = false;
            continue;
        }
        let set: BTreeSet<usize> = cone.iter().copied().collect();
        if set.len() != cone.len() {
            errors.push(format!("repeated index in cone {}", c + 1));
            shape_ok = false;
            continue;
        }
        if !seen_cones.insert(set) {
            errors.push(format!("cone {} is listed twice", c + 1));
        }
        if f.generators.iter().all(|g| g.len() == n) && f.cone_det(cone) == Integer::from(0) {
            errors.push(format!("degenerate cone {}: generators are linearly dependent", c + 1));
        }
    }

    let mut complete = shape_ok && errors.is_empty();
    if shape_ok {
        if n == 1 {
            let has = |pos: bool| {
                f.max_cones
                    .iter()
                    .any(|c| (f.generators[c[0]][0] > 0) == pos)
            };
            if !has(true) || !has(false) {
                warnings.push("one-dimensional fan needs a positive and a negative ray among its cones".to_string());
                complete = false;
            }
        } else {
            let mut facets: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
            for cone in &f.max_cones {
                let mut sorted = cone.clone();
                sorted.sort_unstable();
                for skip in 0..sorted.len() {
                    let mut facet = sorted.clone();
                    facet.remove(skip);
                    *facets.entry(facet).or_default() += 1;
                }
            }
            for (facet, count) in facets {
                if count != 2 {
                    let times = if count == 1 { "once".to_string() } else { format!("{count} times") };
                    warnings.push(format!("facet {} occurs {}", fmt_set(&facet), times));
                    complete = false;
                }
            }
        }
    }

    ValidationReport {
        errors,
        warnings,
        is_complete_simplicial: complete,
    }
}
