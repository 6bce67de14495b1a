#![allow(dead_code)]

pub mod ledger;
pub mod oracle;

use itertools::Itertools;
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::collections::BTreeSet;

use torkernel::{Fan, Rational};

pub fn fan(n: usize, generators: &[&[i64]], cones: &[&[usize]]) -> Fan {
    Fan::from_one_based(
        n,
        generators.iter().map(|g| g.to_vec()).collect(),
        cones.iter().map(|c| c.to_vec()).collect(),
    )
    .unwrap()
}

pub fn p1() -> Fan {
    fan(1, &[&[1], &[-1]], &[&[1], &[2]])
}

pub fn p2() -> Fan {
    fan(2, &[&[1, 0], &[0, 1], &[-1, -1]], &[&[1, 2], &[2, 3], &[3, 1]])
}

pub fn p1xp1() -> Fan {
    fan(2, &[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]], &[&[1, 2], &[2, 3], &[3, 4], &[4, 1]])
}

pub fn hirzebruch1() -> Fan {
    fan(2, &[&[1, 0], &[0, 1], &[-1, 1], &[0, -1]], &[&[1, 2], &[2, 3], &[3, 4], &[4, 1]])
}

pub fn golden() -> Vec<(&'static str, Fan)> {
    vec![("P1", p1()), ("P2", p2()), ("P1xP1", p1xp1()), ("H1", hirzebruch1())]
}

pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| int(x)).collect()
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(int(n), int(d))
}

pub fn qs(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| q(x, 1)).collect()
}

/// Random unimodular matrix as a product of elementary row operations.
pub fn random_unimodular(rng: &mut impl Rng, n: usize) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    if n < 2 {
        if rng.gen_bool(0.5) {
            m[0][0] = -1;
        }
        return m;
    }
    for _ in 0..rng.gen_range(0..=2 * n) {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a == b {
            continue;
        }
        let k = rng.gen_range(-1i64..=1);
        let row_b = m[b].clone();
        for (x, y) in m[a].iter_mut().zip(row_b) {
            *x += k * y;
        }
    }
    if rng.gen_bool(0.5) {
        m.swap(0, 1);
    }
    m
}

fn apply(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// Complete simplicial fan: projective space `P^n` refined by `subdivisions`
/// stellar subdivisions along random faces, then moved by a random
/// `GL(n, Z)` element. Cones are 0-based.
pub fn random_complete_fan(rng: &mut impl Rng, n: usize, subdivisions: usize) -> Fan {
    let mut gens: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    gens.push(vec![-1; n]);
    let mut cones: Vec<Vec<usize>> = (0..=n).combinations(n).collect();
    if n >= 2 {
        for _ in 0..subdivisions {
            let cone = cones[rng.gen_range(0..cones.len())].clone();
            let size = rng.gen_range(2..=n);
            let face: Vec<usize> = cone.iter().copied().sorted_by_key(|_| rng.gen::<u32>()).take(size).sorted().collect();
            let mut v = vec![0i64; n];
            for &i in &face {
                for (a, b) in v.iter_mut().zip(&gens[i]) {
                    *a += b;
                }
            }
            let g = gcd_all(&v);
            let v: Vec<i64> = v.iter().map(|x| x / g).collect();
            let new = gens.len();
            gens.push(v);
            let mut next = Vec::new();
            for c in cones {
                if face.iter().all(|i| c.contains(i)) {
                    for &i in &face {
                        let mut t: Vec<usize> = c.iter().copied().filter(|&x| x != i).collect();
                        t.push(new);
                        t.sort();
                        next.push(t);
                    }
                } else {
                    next.push(c);
                }
            }
            cones = next;
        }
    }
    let u = random_unimodular(rng, n);
    let gens = gens.iter().map(|g| apply(&u, g)).collect();
    Fan::new(n, gens, cones).unwrap()
}

fn gcd_all(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |a, &b| num_integer::gcd(a, b)).max(1)
}

/// 100 random fans with `1 <= n <= 4` and `n < d <= n + 4`, from a fixed seed.
pub fn random_suite() -> Vec<Fan> {
    let mut rng = StdRng::seed_from_u64(20240601);
    (0..100)
        .map(|_| {
            let n = rng.gen_range(1..=4);
            let extra = if n == 1 { 0 } else { rng.gen_range(0..=3) };
            random_complete_fan(&mut rng, n, extra)
        })
        .collect()
}

/// Primitive collections straight from the definition, checking every
/// proper subset rather than only the maximal ones.
pub fn brute_force_primitive(f: &Fan) -> BTreeSet<Vec<usize>> {
    let cones: Vec<BTreeSet<usize>> = f.max_cones().iter().map(|c| c.iter().copied().collect()).collect();
    let in_cone = |s: &[usize]| cones.iter().any(|c| s.iter().all(|x| c.contains(x)));
    let mut out = BTreeSet::new();
    for s in (0..f.d()).powerset() {
        if in_cone(&s) {
            continue;
        }
        let proper_ok = s.iter().copied().powerset().filter(|t| t.len() < s.len()).all(|t| in_cone(&t));
        if proper_ok {
            out.insert(s);
        }
    }
    out
}

/// Laplace expansion along the first row.
pub fn cofactor_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return int(1);
    }
    let mut acc = int(0);
    for j in 0..n {
        if m[0][j] == int(0) {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = &m[0][j] * cofactor_det(&minor);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Rank over the rationals by Gaussian elimination on fractions.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != q(0, 1)) else {
            continue;
        };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && m[i][c] != q(0, 1) {
                let f = &m[i][c] / &m[r][c];
                let pivot = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(pivot) {
                    *x -= &f * y;
                }
            }
        }
        r += 1;
    }
    r
}

pub fn to_rational(rows: &[Vec<BigInt>]) -> Vec<Vec<Rational>> {
    rows.iter().map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect()).collect()
}

/// Two row sets span the same space.
pub fn same_row_space(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> bool {
    let (a, b) = (to_rational(a), to_rational(b));
    let ra = rank(&a);
    ra == rank(&b) && ra == rank(&[a, b].concat())
}
