//! Expected kernel data for the four reference fans, 1-based throughout.

use num_bigint::BigInt;
use torkernel::{KernelReport, Rational};

use super::{ints, q, qs};

pub struct Expected {
    pub relations: Vec<Vec<i64>>,
    pub primitive: Vec<Vec<usize>>,
    pub group: Vec<Vec<i64>>,
    pub kahler: Vec<Vec<i64>>,
    /// (I, signed coefficient, monomial variables)
    pub h: Vec<(Vec<usize>, i64, Vec<usize>)>,
    /// per cone term, sorted: (index, exponent of |z|)
    pub g: Vec<Vec<(usize, i64)>>,
    pub w: Vec<Vec<i64>>,
    /// (collection, coefficients of the bound in rho)
    pub domain: Vec<(Vec<usize>, Vec<i64>)>,
}

pub fn expected(name: &str) -> Expected {
    match name {
        "P1" => Expected {
            relations: vec![vec![1, 1]],
            primitive: vec![vec![1, 2]],
            group: vec![vec![1], vec![1]],
            kahler: vec![vec![1]],
            h: vec![(vec![1], 1, vec![2]), (vec![2], -1, vec![1])],
            g: vec![vec![(1, 4)], vec![(2, 4)]],
            w: vec![vec![1, 1]],
            domain: vec![(vec![1, 2], vec![1])],
        },
        "P2" => Expected {
            relations: vec![vec![1, 1, 1]],
            primitive: vec![vec![1, 2, 3]],
            group: vec![vec![1]; 3],
            kahler: vec![vec![1]],
            // Euler form z1 dz2^dz3 - z2 dz1^dz3 + z3 dz1^dz2
            h: vec![(vec![1, 2], 1, vec![3]), (vec![1, 3], -1, vec![2]), (vec![2, 3], 1, vec![1])],
            g: vec![vec![(1, 6)], vec![(2, 6)], vec![(3, 6)]],
            w: vec![vec![1, 1, 1]],
            domain: vec![(vec![1, 2, 3], vec![1])],
        },
        "P1xP1" => Expected {
            relations: vec![vec![1, 0, 1, 0], vec![0, 1, 0, 1]],
            primitive: vec![vec![1, 3], vec![2, 4]],
            group: vec![vec![1, 0], vec![0, 1], vec![1, 0], vec![0, 1]],
            kahler: vec![vec![1, 0], vec![0, 1]],
            h: vec![
                (vec![1, 2], 1, vec![3, 4]),
                (vec![1, 4], -1, vec![2, 3]),
                (vec![2, 3], 1, vec![1, 4]),
                (vec![3, 4], 1, vec![1, 2]),
            ],
            g: vec![vec![(1, 4), (2, 4)], vec![(1, 4), (4, 4)], vec![(2, 4), (3, 4)], vec![(3, 4), (4, 4)]],
            w: vec![vec![1, 0, 1, 0], vec![0, 1, 0, 1]],
            domain: vec![(vec![1, 3], vec![1, 0]), (vec![2, 4], vec![0, 1])],
        },
        "H1" => Expected {
            relations: vec![vec![1, -1, 1, 0], vec![0, 1, 0, 1]],
            primitive: vec![vec![1, 3], vec![2, 4]],
            group: vec![vec![1, 0], vec![-1, 1], vec![1, 0], vec![0, 1]],
            kahler: vec![vec![1, 0], vec![0, 1]],
            // 2x2 minors of the relation matrix on the complementary columns
            h: vec![
                (vec![1, 2], 1, vec![3, 4]),
                (vec![1, 3], 1, vec![2, 4]),
                (vec![1, 4], -1, vec![2, 3]),
                (vec![2, 3], 1, vec![1, 4]),
                (vec![3, 4], 1, vec![1, 2]),
            ],
            // v3 = -v1 + v2 in cone {1,2} gives |z3|^2, v1 = -v3 - v4 in cone {3,4} gives |z1|^6, ...
            g: vec![vec![(1, 2), (4, 4)], vec![(1, 6), (2, 4)], vec![(2, 4), (3, 6)], vec![(3, 2), (4, 4)]],
            w: vec![vec![1, -1, 1, 0], vec![0, 1, 0, 1]],
            domain: vec![(vec![1, 3], vec![1, 0]), (vec![2, 4], vec![0, 1])],
        },
        other => panic!("no ledger for {other}"),
    }
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

pub fn h_terms(r: &KernelReport) -> Vec<(Vec<usize>, i64, Vec<usize>)> {
    r.h.nonzero_terms()
        .map(|t| {
            let c: BigInt = &t.coefficient * BigInt::from(t.sign);
            let mono = (0..t.monomial.len()).filter(|&j| t.monomial[j] == 1).map(|j| j + 1).collect();
            (one_based(&t.indices), i64::try_from(c).unwrap(), mono)
        })
        .collect()
}

pub fn g_terms(r: &KernelReport) -> Vec<Vec<(usize, Rational)>> {
    let mut v: Vec<Vec<(usize, Rational)>> = r
        .g
        .terms
        .iter()
        .map(|t| t.factors.iter().map(|(l, e)| (l + 1, e.clone())).collect())
        .collect();
    v.sort();
    v
}

fn check_eq<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

/// Compare every ledger entry of `r` with the expected values for `name`.
pub fn check(name: &str, r: &KernelReport) -> Result<(), String> {
    let e = expected(name);
    let rows = |v: &[Vec<i64>]| v.iter().map(|x| ints(x)).collect::<Vec<_>>();
    check_eq("relations", r.relations.rows().to_vec(), rows(&e.relations))?;
    check_eq("primitive collections", r.primitive.iter().map(|p| one_based(p)).collect::<Vec<_>>(), e.primitive.clone())?;
    check_eq("exceptional set", r.exceptional.subspaces.iter().map(|p| one_based(p)).collect::<Vec<_>>(), e.primitive)?;
    check_eq("group exponents", r.group.exponents.clone(), rows(&e.group))?;
    check_eq(
        "kahler forms",
        r.kahler.iter().map(|k| k.coeffs.clone()).collect::<Vec<_>>(),
        e.kahler.iter().map(|k| qs(k)).collect(),
    )?;
    check_eq("h", h_terms(r), e.h)?;
    check_eq(
        "g",
        g_terms(r),
        e.g.iter().map(|t| t.iter().map(|&(l, x)| (l, q(x, 1))).collect()).collect(),
    )?;
    check_eq("w forms", r.w_forms.iter().map(|w| w.coeffs.clone()).collect::<Vec<_>>(), rows(&e.w))?;
    check_eq(
        "domain",
        r.domain
            .iter()
            .map(|d| (one_based(&d.collection), d.bound.coeffs.clone()))
            .collect::<Vec<_>>(),
        e.domain.iter().map(|(c, b)| (c.clone(), qs(b))).collect(),
    )?;
    if !r.warnings.is_empty() {
        return Err(format!("unexpected warnings {:?}", r.warnings));
    }
    Ok(())
}
