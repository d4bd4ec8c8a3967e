//! Test fixtures and brute-force oracles. The oracles only share the data
//! types with the library; every computation is redone from scratch.
#![allow(dead_code)]

use std::collections::BTreeSet;

use graded_aut::grading::{DegreeMatrix, GradingGroup};
use graded_aut::poly::{parse_polynomial, GradedPolyRing, Ideal, IndexedVars};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

pub const RUNNING_Q: [[i64; 8]; 4] = [
    [1, 1, 0, 0, -1, -1, 2, -2],
    [0, 1, 1, -1, -1, 0, 1, -1],
    [1, 1, 1, 1, 1, 1, 1, 1],
    [1, 0, 1, 0, 1, 0, 1, 0],
];
pub const RUNNING_G: &str = "T(1)*T(6) + T(2)*T(5) + T(3)*T(4) + T(7)*T(8)";

pub fn running_q() -> DegreeMatrix {
    let g = GradingGroup::new(3, vec![2]).unwrap();
    let rows: Vec<Vec<i64>> = RUNNING_Q.iter().map(|r| r.to_vec()).collect();
    DegreeMatrix::from_rows(g, &rows).unwrap()
}

pub fn running_ideal() -> Ideal {
    let g = parse_polynomial(RUNNING_G, &IndexedVars::new("T", 8)).unwrap();
    Ideal::new(GradedPolyRing::new(running_q()), vec![g]).unwrap()
}

/// A grading given by raw data: `rows` is the `(k+l)×r` matrix with the
/// torsion rows reduced.
#[derive(Clone, Debug)]
pub struct RawGrading {
    pub k: usize,
    pub torsion: Vec<i64>,
    pub rows: Vec<Vec<i64>>,
}

impl RawGrading {
    pub fn r(&self) -> usize {
        self.rows[0].len()
    }

    pub fn column(&self, i: usize) -> Vec<i64> {
        self.rows.iter().map(|row| row[i]).collect()
    }

    pub fn free_column(&self, i: usize) -> Vec<i64> {
        self.rows[..self.k].iter().map(|row| row[i]).collect()
    }

    pub fn degree_matrix(&self) -> DegreeMatrix {
        let g = GradingGroup::new(self.k, self.torsion.clone()).unwrap();
        DegreeMatrix::from_rows(g, &self.rows).unwrap()
    }

    /// Degree of an exponent vector as a reduced column.
    pub fn degree(&self, e: &[u32]) -> Vec<i64> {
        let mut out = vec![0i64; self.rows.len()];
        for (row, acc) in self.rows.iter().zip(out.iter_mut()) {
            for (x, &ei) in row.iter().zip(e) {
                *acc += x * i64::from(ei);
            }
        }
        for (j, a) in self.torsion.iter().enumerate() {
            out[self.k + j] = out[self.k + j].rem_euclid(*a);
        }
        out
    }

    /// Distinct columns in order of first appearance.
    pub fn distinct_columns(&self) -> Vec<Vec<i64>> {
        let mut out: Vec<Vec<i64>> = Vec::new();
        for i in 0..self.r() {
            let c = self.column(i);
            if !out.contains(&c) {
                out.push(c);
            }
        }
        out
    }
}

/// Random grading with `k ≤ max_k`, `l ≤ max_l`, `r ≤ max_r` and free entries
/// in `[-bound, bound]`; not filtered.
pub fn random_grading(rng: &mut impl Rng, max_k: usize, max_l: usize, max_r: usize, bound: i64) -> RawGrading {
    let k = rng.gen_range(1..=max_k);
    let l = rng.gen_range(0..=max_l);
    let torsion: Vec<i64> = (0..l).map(|_| rng.gen_range(2..=3)).collect();
    let r = rng.gen_range(k..=max_r.max(k));
    let mut rows: Vec<Vec<i64>> = (0..k)
        .map(|_| (0..r).map(|_| rng.gen_range(-bound..=bound)).collect())
        .collect();
    for &a in &torsion {
        rows.push((0..r).map(|_| rng.gen_range(0..a)).collect());
    }
    RawGrading { k, torsion, rows }
}

/// Pointed grading whose distinct free parts contain a lattice basis.
pub fn random_admissible_grading(rng: &mut impl Rng, max_k: usize, max_l: usize, max_r: usize, bound: i64) -> RawGrading {
    loop {
        let g = random_grading(rng, max_k, max_l, max_r, bound);
        if oracle_pointed(&g) && oracle_has_lattice_basis(&g) {
            return g;
        }
    }
}

fn q(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Reduced row echelon form by plain Gauss-Jordan elimination.
fn echelon(mut m: Vec<Vec<BigRational>>, cols: usize) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..cols {
        let Some(p) = (row..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(row, p);
        let inv = BigRational::one() / m[row][c].clone();
        for x in m[row].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m.len() {
            if i != row && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let sub = &f * &m[row][j];
                    m[i][j] -= sub;
                }
            }
        }
        pivots.push(c);
        row += 1;
    }
    m.truncate(row);
    (m, pivots)
}

pub fn rank(m: &[Vec<BigRational>], cols: usize) -> usize {
    echelon(m.to_vec(), cols).1.len()
}

pub fn nullspace(m: &[Vec<BigRational>], cols: usize) -> Vec<Vec<BigRational>> {
    let (e, pivots) = echelon(m.to_vec(), cols);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![BigRational::zero(); cols];
            v[free] = BigRational::one();
            for (row, &p) in e.iter().zip(&pivots) {
                v[p] = -row[free].clone();
            }
            v
        })
        .collect()
}

fn det_i64(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det_i64(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    if size == 0 {
        return vec![Vec::new()];
    }
    if n < size {
        return Vec::new();
    }
    let mut out = subsets(n - 1, size);
    for mut s in subsets(n - 1, size - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Pointedness through positive circuits: the free parts admit a nontrivial
/// nonnegative relation iff some subset of at most `k+1` of them has a
/// one-dimensional kernel spanned by a strictly positive vector.
pub fn oracle_pointed(g: &RawGrading) -> bool {
    let free: Vec<Vec<i64>> = (0..g.r()).map(|i| g.free_column(i)).collect();
    if free.iter().any(|c| c.iter().all(|&x| x == 0)) {
        return false;
    }
    for size in 2..=(g.k + 1).min(free.len()) {
        for s in subsets(free.len(), size) {
            let m: Vec<Vec<BigRational>> = (0..g.k)
                .map(|row| s.iter().map(|&i| q(free[i][row])).collect())
                .collect();
            let ker = nullspace(&m, size);
            if ker.len() == 1 {
                let v = &ker[0];
                if v.iter().all(|x| x.is_positive()) || v.iter().all(|x| x.is_negative()) {
                    return false;
                }
            }
        }
    }
    true
}

/// A small integral functional positive on every free part, by search.
pub fn oracle_functional(g: &RawGrading, bound: i64) -> Option<Vec<i64>> {
    let mut best: Option<(i64, Vec<i64>)> = None;
    let side = (2 * bound + 1) as usize;
    for code in 0..side.pow(g.k as u32) {
        let phi: Vec<i64> = (0..g.k)
            .map(|i| (code / side.pow(i as u32) % side) as i64 - bound)
            .collect();
        let values: Vec<i64> = (0..g.r())
            .map(|c| phi.iter().zip(g.free_column(c)).map(|(a, b)| a * b).sum())
            .collect();
        if values.iter().all(|&v| v > 0) {
            let cost: i64 = phi.iter().map(|x| x.abs()).sum();
            if best.as_ref().is_none_or(|(c, _)| cost < *c) {
                best = Some((cost, phi));
            }
        }
    }
    best.map(|(_, phi)| phi)
}

/// Some `k` distinct free parts with determinant `±1`.
pub fn oracle_has_lattice_basis(g: &RawGrading) -> bool {
    let mut free: Vec<Vec<i64>> = Vec::new();
    for c in g.distinct_columns() {
        free.push(c[..g.k].to_vec());
    }
    subsets(free.len(), g.k).into_iter().any(|s| {
        let m: Vec<Vec<i64>> = (0..g.k).map(|row| s.iter().map(|&i| free[i][row]).collect()).collect();
        det_i64(&m).abs() == 1
    })
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Whether the columns generate `K`, by closing the generated subgroup in
/// the finite quotient `K/NK` with `N = M·|T|`, `M` the gcd of the maximal
/// minors of the free part (so that `NK ⊆ H` whenever `H` has finite
/// index). `None` if that quotient is too large to enumerate.
pub fn oracle_effective(g: &RawGrading) -> Option<bool> {
    let k = g.k;
    let free: Vec<Vec<i64>> = (0..g.r()).map(|i| g.free_column(i)).collect();
    let mut m = 0i64;
    for s in subsets(free.len(), k) {
        let mat: Vec<Vec<i64>> = (0..k).map(|row| s.iter().map(|&i| free[i][row]).collect()).collect();
        m = gcd(m, det_i64(&mat));
    }
    if m == 0 {
        return Some(false);
    }
    let t: i64 = g.torsion.iter().product();
    let n = m * t;
    let size = (n as u128).pow(k as u32) * t as u128;
    if size > 2_000_000 {
        return None;
    }
    let reduce = |v: &mut Vec<i64>| {
        for (i, x) in v.iter_mut().enumerate() {
            let modulus = if i < k { n } else { g.torsion[i - k] };
            *x = x.rem_euclid(modulus);
        }
    };
    let gens: Vec<Vec<i64>> = (0..g.r())
        .map(|i| {
            let mut c = g.column(i);
            reduce(&mut c);
            c
        })
        .collect();
    let zero = vec![0i64; g.rows.len()];
    let mut seen: std::collections::HashSet<Vec<i64>> = std::collections::HashSet::new();
    seen.insert(zero.clone());
    let mut stack = vec![zero];
    while let Some(x) = stack.pop() {
        for c in &gens {
            let mut y: Vec<i64> = x.iter().zip(c).map(|(a, b)| a + b).collect();
            reduce(&mut y);
            if seen.insert(y.clone()) {
                stack.push(y);
            }
        }
    }
    Some(seen.len() as u128 == size)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// All automorphisms of `K` permuting the distinct weights, as display
/// matrices with the torsion rows reduced; from every bijection of the
/// weights, solving for the free block over Q and trying every mixing and
/// torsion block. Supports at most one torsion factor.
pub fn oracle_weight_automorphisms(g: &RawGrading) -> BTreeSet<Vec<Vec<i64>>> {
    assert!(g.torsion.len() <= 1);
    let k = g.k;
    let weights = g.distinct_columns();
    let s = weights.len();
    // k linearly independent weights
    let basis = subsets(s, k)
        .into_iter()
        .find(|sub| {
            let m: Vec<Vec<BigRational>> =
                (0..k).map(|row| sub.iter().map(|&i| q(weights[i][row])).collect()).collect();
            rank(&m, k) == k
        })
        .expect("free parts span");
    let mut out = BTreeSet::new();
    for sigma in permutations(s) {
        // A·W_basis = W_sigma(basis): solve transposed systems row by row
        let wb: Vec<Vec<BigRational>> =
            (0..k).map(|row| basis.iter().map(|&i| q(weights[i][row])).collect()).collect();
        let mut a: Vec<Vec<i64>> = Vec::new();
        let mut integral = true;
        for row in 0..k {
            // a_row · W_basis = target_row, i.e. W_basis^T a_row^T = target^T
            let mut aug: Vec<Vec<BigRational>> = (0..k)
                .map(|c| {
                    let mut r: Vec<BigRational> = (0..k).map(|rr| wb[rr][c].clone()).collect();
                    r.push(q(weights[sigma[basis[c]]][row]));
                    r
                })
                .collect();
            aug = echelon(aug, k + 1).0;
            let sol: Vec<BigRational> = aug.iter().map(|r| r[k].clone()).collect();
            if sol.iter().any(|x| !x.is_integer()) {
                integral = false;
                break;
            }
            a.push(sol.iter().map(|x| i64::try_from(x.to_integer()).unwrap()).collect());
        }
        if !integral || det_i64(&a).abs() != 1 {
            continue;
        }
        let free_ok = (0..s).all(|i| {
            (0..k).all(|row| {
                let v: i64 = (0..k).map(|c| a[row][c] * weights[i][c]).sum();
                v == weights[sigma[i]][row]
            })
        });
        if !free_ok {
            continue;
        }
        if g.torsion.is_empty() {
            out.insert(a);
            continue;
        }
        let modulus = g.torsion[0];
        let side = modulus as usize;
        for code in 0..side.pow(k as u32 + 1) {
            let digits: Vec<i64> = (0..=k).map(|i| (code / side.pow(i as u32) % side) as i64).collect();
            let (c, d) = (&digits[..k], digits[k]);
            if gcd(d, modulus) != 1 {
                continue;
            }
            let ok = (0..s).all(|i| {
                let v: i64 = (0..k).map(|j| c[j] * weights[i][j]).sum::<i64>() + d * weights[i][k];
                (v - weights[sigma[i]][k]).rem_euclid(modulus) == 0
            });
            if ok {
                let mut m: Vec<Vec<i64>> = a.iter().map(|r| {
                    let mut r = r.clone();
                    r.push(0);
                    r
                }).collect();
                let mut last = c.to_vec();
                last.push(d);
                m.push(last);
                out.insert(m);
            }
        }
    }
    out
}

/// All exponent vectors of total degree at most `max_total` whose degree is
/// `u`, by plain enumeration.
pub fn oracle_monomials(g: &RawGrading, u: &[i64], max_total: u32) -> BTreeSet<Vec<u32>> {
    let r = g.r();
    let mut out = BTreeSet::new();
    let mut e = vec![0u32; r];
    fn rec(g: &RawGrading, u: &[i64], i: usize, left: u32, e: &mut Vec<u32>, out: &mut BTreeSet<Vec<u32>>) {
        if i == e.len() {
            if g.degree(e) == u {
                out.insert(e.clone());
            }
            return;
        }
        for x in 0..=left {
            e[i] = x;
            rec(g, u, i + 1, left - x, e, out);
        }
        e[i] = 0;
    }
    rec(g, u, 0, max_total, &mut e, &mut out);
    out
}

/// Reduces the torsion rows of a display matrix.
pub fn canonical_matrix(m: &[Vec<i64>], k: usize, torsion: &[i64]) -> Vec<Vec<i64>> {
    m.iter()
        .enumerate()
        .map(|(i, row)| {
            if i < k {
                row.clone()
            } else {
                row.iter().map(|x| x.rem_euclid(torsion[i - k])).collect()
            }
        })
        .collect()
}

pub fn rationals(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&x| q(x)).collect()
}
