//! Exact linear algebra over the integers and the rationals.
//!
//! Everything here works on dense row-major `Vec<Vec<_>>` matrices. The
//! matrices in this crate are small (degree matrices, component bases), so
//! the code favours obvious correctness over cache behaviour.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn int_matrix(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

pub fn to_rational_matrix(rows: &[Vec<BigInt>]) -> Vec<Vec<Rational>> {
    rows.iter()
        .map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect())
        .collect()
}

/// Reduced row echelon form. Returns the reduced matrix (zero rows removed)
/// and the pivot column of each remaining row.
pub fn rref(matrix: &[Vec<Rational>]) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut a: Vec<Vec<Rational>> = matrix.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let factor = a[i][c].clone();
                for j in c..cols {
                    let delta = &factor * &a[r][j];
                    a[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

pub fn rank(matrix: &[Vec<Rational>]) -> usize {
    rref(matrix).1.len()
}

/// Basis of the right kernel `{x : M x = 0}` in the usual RREF form: one
/// vector per free column, with a one in that column.
pub fn kernel(matrix: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let (red, pivots) = rref(matrix);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::one();
        for (row, &p) in red.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Solves `M x = b` over the rationals; `None` if inconsistent. Free
/// variables are set to zero.
pub fn solve_rational(matrix: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let cols = matrix.first().map_or(0, Vec::len);
    let augmented: Vec<Vec<Rational>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let (red, pivots) = rref(&augmented);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (row, &p) in red.iter().zip(&pivots) {
        x[p] = row[cols].clone();
    }
    Some(x)
}

pub fn determinant(matrix: &[Vec<BigInt>]) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = to_rational_matrix(matrix);
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return BigInt::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c].clone();
        for i in c + 1..n {
            if !a[i][c].is_zero() {
                let f = &a[i][c] / &a[c][c];
                for j in c..n {
                    let delta = &f * &a[c][j];
                    a[i][j] -= delta;
                }
            }
        }
    }
    det.to_integer()
}

/// Inverse of a unimodular integer matrix.
pub fn unimodular_inverse(matrix: &[Vec<BigInt>]) -> Option<Vec<Vec<BigInt>>> {
    let n = matrix.len();
    let d = determinant(matrix);
    if d.abs() != BigInt::one() {
        return None;
    }
    let mut aug: Vec<Vec<Rational>> = to_rational_matrix(matrix);
    for (i, row) in aug.iter_mut().enumerate() {
        for j in 0..n {
            row.push(if i == j { Rational::one() } else { Rational::zero() });
        }
    }
    let (red, _) = rref(&aug);
    Some(
        red.iter()
            .map(|row| row[n..].iter().map(|x| x.to_integer()).collect())
            .collect(),
    )
}

pub fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|t| &row[t] * &b[t][j]).sum())
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &[Vec<BigInt>], v: &[BigInt]) -> Vec<BigInt> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

/// Smith normal form `U * M * V = D` with unimodular `U`, `V`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    /// Nonzero diagonal entries d_1 | d_2 | ... (all positive).
    pub invariant_factors: Vec<BigInt>,
    pub left: Vec<Vec<BigInt>>,
    pub right: Vec<Vec<BigInt>>,
    pub rows: usize,
    pub cols: usize,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// True if the columns of `M` span all of `Z^rows`.
    pub fn columns_span_lattice(&self) -> bool {
        self.rank() == self.rows && self.invariant_factors.iter().all(|d| d.is_one())
    }
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

pub fn smith_normal_form(matrix: &[Vec<BigInt>], cols: usize) -> SmithForm {
    let m = matrix.len();
    let n = cols;
    let mut a: Vec<Vec<BigInt>> = matrix.to_vec();
    let mut u = identity(m);
    let mut v = identity(n);

    let swap_cols = |a: &mut Vec<Vec<BigInt>>, i: usize, j: usize| {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
    };
    // col_j -= q * col_i
    let sub_col = |a: &mut Vec<Vec<BigInt>>, j: usize, i: usize, q: &BigInt| {
        for row in a.iter_mut() {
            let delta = q * &row[i];
            row[j] -= delta;
        }
    };
    // row_j -= q * row_i
    let sub_row = |a: &mut Vec<Vec<BigInt>>, j: usize, i: usize, q: &BigInt| {
        let src = a[i].clone();
        for (x, y) in a[j].iter_mut().zip(src) {
            *x -= q * y;
        }
    };

    let mut t = 0;
    while t < m.min(n) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !a[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut a, t, pj);
        swap_cols(&mut v, t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    sub_row(&mut a, i, t, &q);
                    sub_row(&mut u, i, t, &q);
                    if !a[i][t].is_zero() {
                        a.swap(t, i);
                        u.swap(t, i);
                        dirty = true;
                    }
                }
            }
            for j in t + 1..n {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    sub_col(&mut a, j, t, &q);
                    sub_col(&mut v, j, t, &q);
                    if !a[t][j].is_zero() {
                        swap_cols(&mut a, t, j);
                        swap_cols(&mut v, t, j);
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            // divisibility of the remaining block
            let mut fix = None;
            'outer: for i in t + 1..m {
                for j in t + 1..n {
                    if !(&a[i][j] % &a[t][t]).is_zero() {
                        fix = Some(i);
                        break 'outer;
                    }
                }
            }
            match fix {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    sub_row(&mut a, t, i, &minus_one);
                    sub_row(&mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -&*x;
            }
            for x in u[t].iter_mut() {
                *x = -&*x;
            }
        }
        t += 1;
    }
    let invariant_factors = (0..m.min(n))
        .map(|i| a[i][i].clone())
        .take_while(|d| !d.is_zero())
        .collect();
    SmithForm {
        invariant_factors,
        left: u,
        right: v,
        rows: m,
        cols: n,
    }
}

/// One integer solution of `M x = b`, if any.
pub fn solve_integer(matrix: &[Vec<BigInt>], cols: usize, rhs: &[BigInt]) -> Option<Vec<BigInt>> {
    let snf = smith_normal_form(matrix, cols);
    let ub = mat_vec(&snf.left, rhs);
    let mut y = vec![BigInt::zero(); cols];
    for (i, value) in ub.iter().enumerate() {
        match snf.invariant_factors.get(i) {
            Some(d) => {
                let (q, r) = value.div_rem(d);
                if !r.is_zero() {
                    return None;
                }
                y[i] = q;
            }
            None if !value.is_zero() => return None,
            None => {}
        }
    }
    Some(mat_vec(&snf.right, &y))
}

/// Divides out the gcd of the entries; the zero vector is returned as is.
pub fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Clears denominators and makes the vector primitive, keeping its direction.
pub fn primitive_from_rational(v: &[Rational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &l).to_integer()).collect();
    primitive(&ints)
}

pub fn to_i64_vec(v: &[BigInt]) -> Vec<i64> {
    v.iter()
        .map(|x| x.to_i64().expect("integer entry exceeds i64"))
        .collect()
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
