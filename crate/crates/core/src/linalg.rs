//! Exact linear algebra: echelon forms, nullspaces, determinants and
//! coordinate solves.
//!
//! Everything here is generic over [`Scalar`] / [`Field`]. The toric pipeline
//! instantiates it with [`Rational`]; the numeric verifier reuses the same
//! routines with `f64` and complex scalars.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::error::LinalgError;
use crate::scalar::{Field, Scalar};
use crate::{Integer, Rational};

/// Independent integer linear relations among the generators of a fan.
///
/// Row `m` is a vector `λ` with `Σ_j λ_j v_j = 0`. Column `j` is the weight
/// vector of the coordinate `z_j` under the quotient group action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationBasis {
    rows: Vec<Vec<Integer>>,
    columns: usize,
}

impl RelationBasis {
    /// Wrap rows that are already canonical. Used when reading reports back.
    pub fn from_rows(rows: Vec<Vec<Integer>>, columns: usize) -> Result<Self, LinalgError> {
        for r in &rows {
            if r.len() != columns {
                return Err(LinalgError::Ragged {
                    expected: columns,
                    found: r.len(),
                });
            }
        }
        Ok(RelationBasis { rows, columns })
    }

    pub fn rows(&self) -> &[Vec<Integer>] {
        &self.rows
    }

    /// Number of relations, `d - n` for a spanning generator set.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Number of generators `d`.
    pub fn columns(&self) -> usize {
        self.columns
    }

    /// Column `j` of the relation matrix.
    pub fn column(&self, j: usize) -> Vec<Integer> {
        self.rows.iter().map(|r| r[j].clone()).collect()
    }

    pub fn rational_rows(&self) -> Vec<Vec<Rational>> {
        self.rows
            .iter()
            .map(|r| r.iter().cloned().map(Rational::from_integer).collect())
            .collect()
    }

    /// `Σ_j M[m][j] v_j` for every row `m`; all zero for a valid basis.
    pub fn residuals(&self, generators: &[Vec<i64>]) -> Vec<Vec<Integer>> {
        let n = generators.first().map_or(0, Vec::len);
        self.rows
            .iter()
            .map(|row| {
                let mut acc = vec![Integer::zero(); n];
                for (coef, v) in row.iter().zip(generators) {
                    for (a, x) in acc.iter_mut().zip(v) {
                        *a += coef * Integer::from(*x);
                    }
                }
                acc
            })
            .collect()
    }
}

fn pick_pivot<T: Scalar>(a: &[Vec<T>], col: usize, from: usize) -> Option<usize> {
    if T::EXACT {
        (from..a.len()).find(|&r| !a[r][col].is_negligible())
    } else {
        let mut best: Option<(usize, f64)> = None;
        for (r, row) in a.iter().enumerate().skip(from) {
            if row[col].is_negligible() {
                continue;
            }
            let m = row[col].magnitude();
            if best.is_none_or(|(_, bm)| m > bm) {
                best = Some((r, m));
            }
        }
        best.map(|(r, _)| r)
    }
}

/// Reduce `a` in place to reduced row echelon form. Returns the pivot
/// columns in increasing order; their count is the rank.
pub fn rref<T: Field>(a: &mut [Vec<T>]) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = pick_pivot(a, c, r) else {
            // a free column; clear float dust so downstream zero tests agree
            if !T::EXACT {
                for row in a.iter_mut().skip(r) {
                    row[c] = T::zero();
                }
            }
            continue;
        };
        a.swap(r, p);
        let inv = T::one() / a[r][c].clone();
        for x in a[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        a[r][c] = T::one();
        for i in 0..rows {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let factor = a[i][c].clone();
            for j in 0..cols {
                let sub = factor.clone() * a[r][j].clone();
                a[i][j] = a[i][j].clone() - sub;
            }
            a[i][c] = T::zero();
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of `{x : A x = 0}`: one vector per free column of the RREF, with
/// that free variable set to 1 and the other free variables set to 0.
pub fn nullspace<T: Field>(a: &[Vec<T>]) -> Vec<Vec<T>> {
    let cols = a.first().map_or(0, Vec::len);
    let mut r = a.to_vec();
    let pivots = rref(&mut r);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut x = vec![T::zero(); cols];
            x[free] = T::one();
            for (row, &pc) in pivots.iter().enumerate() {
                x[pc] = -r[row][free].clone();
            }
            x
        })
        .collect()
}

/// Determinant by fraction-free (Bareiss) elimination with row pivoting.
/// The empty matrix has determinant 1.
pub fn det<T: Scalar>(m: &[Vec<T>]) -> Result<T, LinalgError> {
    let n = m.len();
    for row in m {
        if row.len() != n {
            return Err(LinalgError::NotSquare {
                rows: n,
                cols: row.len(),
            });
        }
    }
    if n == 0 {
        return Ok(T::one());
    }
    let mut a = m.to_vec();
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n {
        let Some(p) = pick_pivot(&a, k, k) else {
            return Ok(T::zero());
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].clone() * a[k][k].clone() - a[i][k].clone() * a[k][j].clone();
                a[i][j] = num / prev.clone();
            }
            a[i][k] = T::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { -d } else { d })
}

/// Exact rational determinant.
pub fn det_exact(m: &[Vec<Rational>]) -> Result<Rational, LinalgError> {
    det(m)
}

/// Integer determinant, computed fraction-free without leaving `Z`.
pub fn det_integer(m: &[Vec<Integer>]) -> Result<Integer, LinalgError> {
    det(m)
}

/// Coordinates of `target` in `basis`: the unique `c` with
/// `Σ_k c_k basis[k] = target`, or `None` when `target` is outside the span.
///
/// Basis vectors may be longer than their count (an overdetermined but
/// consistent system), they just have to be independent.
pub fn solve_in_basis<T: Field>(basis: &[Vec<T>], target: &[T]) -> Result<Option<Vec<T>>, LinalgError> {
    let len = target.len();
    let k = basis.len();
    for b in basis {
        if b.len() != len {
            return Err(LinalgError::Ragged {
                expected: len,
                found: b.len(),
            });
        }
    }
    let mut aug: Vec<Vec<T>> = (0..len)
        .map(|i| {
            let mut row: Vec<T> = basis.iter().map(|b| b[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let pivots = rref(&mut aug);
    let basis_rank = pivots.iter().filter(|&&p| p < k).count();
    if basis_rank < k {
        return Err(LinalgError::DependentBasis);
    }
    if pivots.contains(&k) {
        return Ok(None);
    }
    // with full column rank the pivots are exactly 0..k
    Ok(Some((0..k).map(|r| aug[r][k].clone()).collect()))
}

/// Scale a rational vector to a primitive integer vector whose first
/// nonzero entry is positive.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<Integer> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut ints: Vec<Integer> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in ints.iter_mut() {
            *x /= &g;
        }
    }
    if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        for x in ints.iter_mut() {
            *x = -x.clone();
        }
    }
    ints
}

/// Integer matrix with columns equal to the given generators.
pub fn generator_matrix(generators: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    let n = generators.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| generators.iter().map(|g| Rational::from_integer(g[i].into())).collect())
        .collect()
}

/// All independent linear relations among the generators.
///
/// The nullspace of the `n x d` matrix whose columns are the generators is
/// computed over `Q`; each basis vector is made primitive, sign-normalized and
/// the rows are sorted in descending lexicographic order.
pub fn lin_rel(generators: &[Vec<i64>]) -> Result<RelationBasis, LinalgError> {
    let d = generators.len();
    let n = generators.first().map_or(0, Vec::len);
    for g in generators {
        if g.len() != n {
            return Err(LinalgError::Ragged {
                expected: n,
                found: g.len(),
            });
        }
    }
    let v = generator_matrix(generators);
    let mut reduced = v.clone();
    let rank = rref(&mut reduced).len();
    if rank < n {
        return Err(LinalgError::RankDeficient { rank, expected: n });
    }
    let mut rows: Vec<Vec<Integer>> = nullspace(&v).iter().map(|x| primitive_integer_vector(x)).collect();
    rows.sort_by(|a, b| b.cmp(a));
    Ok(RelationBasis { rows, columns: d })
}
