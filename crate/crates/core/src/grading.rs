//! The grading group `K = Z^k ⊕ Z/a_1 ⊕ ... ⊕ Z/a_l`, its elements and
//! automorphisms, and the degree matrix of a graded polynomial ring.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cone::RationalCone;
use crate::error::{Error, Result};
use crate::linalg;

/// Above this many torsion elements the torsion block of an automorphism is
/// certified through the Smith normal form instead of by enumeration.
pub const TORSION_ENUMERATION_LIMIT: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradingGroup {
    free_rank: usize,
    torsion: Vec<i64>,
}

/// An element of a [`GradingGroup`]; torsion coordinates are kept in `[0, a_j)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement {
    pub free: Vec<i64>,
    pub torsion: Vec<i64>,
}

impl GradingGroup {
    pub fn new(free_rank: usize, torsion: Vec<i64>) -> Result<Self> {
        if let Some(bad) = torsion.iter().find(|&&a| a < 2) {
            return Err(Error::Structure(format!(
                "torsion orders must be at least 2, got {bad}"
            )));
        }
        Ok(GradingGroup { free_rank, torsion })
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[i64] {
        &self.torsion
    }

    pub fn torsion_rank(&self) -> usize {
        self.torsion.len()
    }

    /// Number of rows of a degree matrix over this group.
    pub fn rows(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    /// Order of the torsion subgroup, saturating at `u64::MAX`.
    pub fn torsion_size(&self) -> u64 {
        self.torsion
            .iter()
            .try_fold(1u64, |acc, &a| acc.checked_mul(a as u64))
            .unwrap_or(u64::MAX)
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            free: vec![0; self.free_rank],
            torsion: vec![0; self.torsion.len()],
        }
    }

    pub fn element(&self, free: Vec<i64>, torsion: Vec<i64>) -> Result<GroupElement> {
        if free.len() != self.free_rank || torsion.len() != self.torsion.len() {
            return Err(Error::Structure(format!(
                "element has shape ({}; {}), group expects ({}; {})",
                free.len(),
                torsion.len(),
                self.free_rank,
                self.torsion.len()
            )));
        }
        let torsion = torsion
            .iter()
            .zip(&self.torsion)
            .map(|(&t, &a)| t.rem_euclid(a))
            .collect();
        Ok(GroupElement { free, torsion })
    }

    /// Reads an element from a column of the displayed degree matrix: the
    /// first `k` entries are free, the last `l` are read modulo `a_j`.
    pub fn element_from_column(&self, column: &[i64]) -> Result<GroupElement> {
        if column.len() != self.rows() {
            return Err(Error::Structure(format!(
                "column of length {} but the group needs {} rows",
                column.len(),
                self.rows()
            )));
        }
        self.element(
            column[..self.free_rank].to_vec(),
            column[self.free_rank..].to_vec(),
        )
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        x.free.len() == self.free_rank
            && x.torsion.len() == self.torsion.len()
            && x.torsion.iter().zip(&self.torsion).all(|(&t, &a)| (0..a).contains(&t))
    }

    fn check(&self, x: &GroupElement) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::Structure(format!(
                "element {x} does not belong to {self}"
            )))
        }
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.add_unchecked(x, y))
    }

    pub(crate) fn add_unchecked(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        GroupElement {
            free: x.free.iter().zip(&y.free).map(|(a, b)| a + b).collect(),
            torsion: x
                .torsion
                .iter()
                .zip(&y.torsion)
                .zip(&self.torsion)
                .map(|((a, b), m)| (a + b).rem_euclid(*m))
                .collect(),
        }
    }

    pub fn scale(&self, x: &GroupElement, factor: i64) -> GroupElement {
        GroupElement {
            free: x.free.iter().map(|a| a * factor).collect(),
            torsion: x
                .torsion
                .iter()
                .zip(&self.torsion)
                .map(|(a, m)| (a * factor).rem_euclid(*m))
                .collect(),
        }
    }

    pub fn neg(&self, x: &GroupElement) -> GroupElement {
        self.scale(x, -1)
    }

    pub fn sub(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        self.add(x, &self.neg(y))
    }

    /// All elements of the torsion subgroup, in odometer order.
    pub fn torsion_elements(&self) -> Vec<Vec<i64>> {
        let mut out = vec![Vec::new()];
        for &a in &self.torsion {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..a).map(move |t| {
                        let mut v = prefix.clone();
                        v.push(t);
                        v
                    })
                })
                .collect();
        }
        out
    }
}

impl fmt::Display for GradingGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z^{}", self.free_rank)?;
        for a in &self.torsion {
            write!(f, " + Z/{a}")?;
        }
        Ok(())
    }
}

impl GroupElement {
    /// Entries as one column of the displayed degree matrix.
    pub fn to_column(&self) -> Vec<i64> {
        self.free.iter().chain(&self.torsion).copied().collect()
    }

    pub fn free_big(&self) -> Vec<BigInt> {
        self.free.iter().map(|&x| BigInt::from(x)).collect()
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[i64]| {
            v.iter()
                .map(i64::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        if self.torsion.is_empty() {
            write!(f, "({})", join(&self.free))
        } else {
            write!(f, "({};{})", join(&self.free), join(&self.torsion))
        }
    }
}

/// The degrees `q_1, ..., q_r` of the variables of a graded polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeMatrix {
    group: GradingGroup,
    columns: Vec<GroupElement>,
}

impl DegreeMatrix {
    pub fn new(group: GradingGroup, columns: Vec<GroupElement>) -> Result<Self> {
        if columns.is_empty() {
            return Err(Error::Structure("degree matrix needs at least one column".into()));
        }
        for c in &columns {
            group.check(c)?;
        }
        Ok(DegreeMatrix { group, columns })
    }

    /// Builds the matrix from its `k + l` displayed rows.
    pub fn from_rows(group: GradingGroup, rows: &[Vec<i64>]) -> Result<Self> {
        if rows.len() != group.rows() {
            return Err(Error::Structure(format!(
                "degree matrix has {} rows, {} needs {}",
                rows.len(),
                group,
                group.rows()
            )));
        }
        let r = rows.first().map_or(0, Vec::len);
        if let Some(i) = rows.iter().position(|row| row.len() != r) {
            return Err(Error::Structure(format!(
                "row {} of the degree matrix has {} entries, expected {r}",
                i + 1,
                rows[i].len()
            )));
        }
        let columns = (0..r)
            .map(|j| {
                let col: Vec<i64> = rows.iter().map(|row| row[j]).collect();
                group.element_from_column(&col)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, columns)
    }

    pub fn group(&self) -> &GradingGroup {
        &self.group
    }

    pub fn columns(&self) -> &[GroupElement] {
        &self.columns
    }

    pub fn column(&self, i: usize) -> &GroupElement {
        &self.columns[i]
    }

    pub fn num_vars(&self) -> usize {
        self.columns.len()
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        let cols: Vec<Vec<i64>> = self.columns.iter().map(GroupElement::to_column).collect();
        (0..self.group.rows())
            .map(|i| cols.iter().map(|c| c[i]).collect())
            .collect()
    }

    pub fn free_parts(&self) -> Vec<Vec<BigInt>> {
        self.columns.iter().map(GroupElement::free_big).collect()
    }

    /// `Σ e_i q_i`.
    pub fn degree_of_exponent(&self, exponent: &[u32]) -> Result<GroupElement> {
        if exponent.len() != self.columns.len() {
            return Err(Error::Structure(format!(
                "exponent vector of length {} for {} variables",
                exponent.len(),
                self.columns.len()
            )));
        }
        Ok(self.degree_of_exponent_unchecked(exponent))
    }

    pub(crate) fn degree_of_exponent_unchecked(&self, exponent: &[u32]) -> GroupElement {
        let mut free = vec![0i64; self.group.free_rank];
        let mut torsion = vec![0i64; self.group.torsion.len()];
        for (&e, q) in exponent.iter().zip(&self.columns) {
            if e == 0 {
                continue;
            }
            let e = e as i64;
            for (acc, x) in free.iter_mut().zip(&q.free) {
                *acc += e * x;
            }
            for (acc, x) in torsion.iter_mut().zip(&q.torsion) {
                *acc += e * x;
            }
        }
        for (t, a) in torsion.iter_mut().zip(&self.group.torsion) {
            *t = t.rem_euclid(*a);
        }
        GroupElement { free, torsion }
    }

    /// The distinct weights in order of first appearance, each with the
    /// (0-based) indices of the variables carrying it.
    pub fn distinct_weights(&self) -> Vec<(GroupElement, Vec<usize>)> {
        let mut out: Vec<(GroupElement, Vec<usize>)> = Vec::new();
        for (i, q) in self.columns.iter().enumerate() {
            match out.iter_mut().find(|(w, _)| w == q) {
                Some((_, idx)) => idx.push(i),
                None => out.push((q.clone(), vec![i])),
            }
        }
        out
    }

    /// True iff the columns generate `K` as a group.
    pub fn check_effective(&self) -> bool {
        let rows = self.group.rows();
        let r = self.columns.len();
        let l = self.group.torsion.len();
        let k = self.group.free_rank;
        let mut m = vec![vec![BigInt::zero(); r + l]; rows];
        for (j, q) in self.columns.iter().enumerate() {
            for (i, x) in q.to_column().into_iter().enumerate() {
                m[i][j] = BigInt::from(x);
            }
        }
        for (j, &a) in self.group.torsion.iter().enumerate() {
            m[k + j][r + j] = BigInt::from(a);
        }
        linalg::smith_normal_form(&m, r + l).columns_span_lattice()
    }

    /// True iff the only nonnegative combination of the free parts that
    /// vanishes is the trivial one.
    pub fn check_pointed(&self) -> bool {
        self.positive_functional().is_some()
    }

    /// An integral linear form that is strictly positive on every free part
    /// `q_i^0`; it exists exactly when the grading is pointed.
    pub fn positive_functional(&self) -> Option<Vec<BigInt>> {
        let k = self.group.free_rank;
        let free = self.free_parts();
        if k == 0 || free.iter().any(|q| q.iter().all(Zero::is_zero)) {
            return None;
        }
        let cone = RationalCone::from_rays(k, &free).ok()?;
        if !cone.is_pointed() {
            return None;
        }
        let phi = cone.positive_functional()?;
        debug_assert!(free.iter().all(|q| linalg::dot(&phi, q).is_positive()));
        Some(phi)
    }

    /// First `k`-subset of the distinct weights (as indices into
    /// [`Self::distinct_weights`]) whose free parts form a lattice basis.
    pub fn lattice_basis(&self) -> Option<Vec<usize>> {
        let k = self.group.free_rank;
        let weights = self.distinct_weights();
        if k == 0 {
            return Some(Vec::new());
        }
        let mut subset: Vec<usize> = (0..k).collect();
        if weights.len() < k {
            return None;
        }
        loop {
            let m: Vec<Vec<BigInt>> = (0..k)
                .map(|row| {
                    subset
                        .iter()
                        .map(|&j| BigInt::from(weights[j].0.free[row]))
                        .collect()
                })
                .collect();
            if linalg::determinant(&m).abs().is_one() {
                return Some(subset);
            }
            if !next_combination(&mut subset, weights.len()) {
                return None;
            }
        }
    }
}

/// Advances a sorted index subset to the next one in lexicographic order.
pub(crate) fn next_combination(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if subset[i] < n - k + i {
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// An automorphism of `K` in lower block triangular form
/// `x ↦ (A x_free, C x_free + D x_tors)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupAutomorphism {
    group: GradingGroup,
    free_block: Vec<Vec<i64>>,
    mixing_block: Vec<Vec<i64>>,
    torsion_block: Vec<Vec<i64>>,
}

impl PartialOrd for GradingGroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GradingGroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.free_rank, &self.torsion).cmp(&(other.free_rank, &other.torsion))
    }
}

impl GroupAutomorphism {
    pub fn new(
        group: GradingGroup,
        free_block: Vec<Vec<i64>>,
        mixing_block: Vec<Vec<i64>>,
        torsion_block: Vec<Vec<i64>>,
    ) -> Result<Self> {
        let k = group.free_rank;
        let l = group.torsion.len();
        let shape_ok = free_block.len() == k
            && free_block.iter().all(|r| r.len() == k)
            && mixing_block.len() == l
            && mixing_block.iter().all(|r| r.len() == k)
            && torsion_block.len() == l
            && torsion_block.iter().all(|r| r.len() == l);
        if !shape_ok {
            return Err(Error::Structure(format!(
                "automorphism blocks do not fit {group}"
            )));
        }
        let mut aut = GroupAutomorphism {
            group,
            free_block,
            mixing_block,
            torsion_block,
        };
        aut.reduce();
        aut.validate()?;
        Ok(aut)
    }

    /// Reads the `(k+l)×(k+l)` display matrix; its last `l` rows are taken
    /// modulo the torsion orders.
    pub fn from_matrix(group: GradingGroup, matrix: &[Vec<i64>]) -> Result<Self> {
        let k = group.free_rank;
        let n = group.rows();
        if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
            return Err(Error::Structure(format!(
                "automorphism matrix must be {n}x{n}"
            )));
        }
        if matrix[..k].iter().any(|row| row[k..].iter().any(|&x| x != 0)) {
            return Err(Error::InvalidAutomorphism(
                "torsion must not map into the free part".into(),
            ));
        }
        let free_block = matrix[..k].iter().map(|r| r[..k].to_vec()).collect();
        let mixing_block = matrix[k..].iter().map(|r| r[..k].to_vec()).collect();
        let torsion_block = matrix[k..].iter().map(|r| r[k..].to_vec()).collect();
        Self::new(group, free_block, mixing_block, torsion_block)
    }

    pub fn identity(group: &GradingGroup) -> Self {
        let eye = |n: usize| -> Vec<Vec<i64>> {
            (0..n)
                .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
                .collect()
        };
        let mut aut = GroupAutomorphism {
            group: group.clone(),
            free_block: eye(group.free_rank),
            mixing_block: vec![vec![0; group.free_rank]; group.torsion.len()],
            torsion_block: eye(group.torsion.len()),
        };
        aut.reduce();
        aut
    }

    fn reduce(&mut self) {
        for (i, &a) in self.group.torsion.iter().enumerate() {
            for x in self.mixing_block[i].iter_mut() {
                *x = x.rem_euclid(a);
            }
            for x in self.torsion_block[i].iter_mut() {
                *x = x.rem_euclid(a);
            }
        }
    }

    fn validate(&self) -> Result<()> {
        let a = linalg::int_matrix(&self.free_block);
        if !linalg::determinant(&a).abs().is_one() {
            return Err(Error::InvalidAutomorphism(
                "free block is not unimodular".into(),
            ));
        }
        // column j of D is the image of a generator of order a_j
        let tors = &self.group.torsion;
        for (i, &ai) in tors.iter().enumerate() {
            for (j, &aj) in tors.iter().enumerate() {
                if (aj * self.torsion_block[i][j]).rem_euclid(ai) != 0 {
                    return Err(Error::InvalidAutomorphism(format!(
                        "torsion block entry ({}, {}) is not compatible with the orders {ai} and {aj}",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        if !self.torsion_bijective() {
            return Err(Error::InvalidAutomorphism(
                "torsion block is not bijective".into(),
            ));
        }
        Ok(())
    }

    fn apply_torsion_block(&self, t: &[i64]) -> Vec<i64> {
        self.torsion_block
            .iter()
            .zip(&self.group.torsion)
            .map(|(row, &a)| {
                row.iter()
                    .zip(t)
                    .fold(0i64, |acc, (x, y)| (acc + x * y).rem_euclid(a))
            })
            .collect()
    }

    fn torsion_bijective(&self) -> bool {
        let size = self.group.torsion_size();
        if size <= TORSION_ENUMERATION_LIMIT {
            let mut seen = std::collections::HashSet::with_capacity(size as usize);
            self.group
                .torsion_elements()
                .iter()
                .all(|t| seen.insert(self.apply_torsion_block(t)))
        } else {
            // D is onto Z^l / diag(a) iff [D | diag(a)] spans Z^l
            self.torsion_relation_matrix().1.columns_span_lattice()
        }
    }

    fn torsion_relation_matrix(&self) -> (Vec<Vec<BigInt>>, linalg::SmithForm) {
        let l = self.group.torsion.len();
        let mut m = vec![vec![BigInt::zero(); 2 * l]; l];
        for i in 0..l {
            for j in 0..l {
                m[i][j] = BigInt::from(self.torsion_block[i][j]);
            }
            m[i][l + i] = BigInt::from(self.group.torsion[i]);
        }
        let snf = linalg::smith_normal_form(&m, 2 * l);
        (m, snf)
    }

    pub fn group(&self) -> &GradingGroup {
        &self.group
    }

    pub fn free_block(&self) -> &[Vec<i64>] {
        &self.free_block
    }

    pub fn mixing_block(&self) -> &[Vec<i64>] {
        &self.mixing_block
    }

    pub fn torsion_block(&self) -> &[Vec<i64>] {
        &self.torsion_block
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(&self.group)
    }

    /// The display matrix `[[A, 0], [C, D]]`.
    pub fn to_matrix(&self) -> Vec<Vec<i64>> {
        let k = self.group.free_rank;
        let l = self.group.torsion.len();
        let mut m = vec![vec![0; k + l]; k + l];
        for i in 0..k {
            m[i][..k].copy_from_slice(&self.free_block[i]);
        }
        for i in 0..l {
            m[k + i][..k].copy_from_slice(&self.mixing_block[i]);
            m[k + i][k..].copy_from_slice(&self.torsion_block[i]);
        }
        m
    }

    pub fn apply(&self, x: &GroupElement) -> Result<GroupElement> {
        self.group.check(x)?;
        Ok(self.apply_unchecked(x))
    }

    pub(crate) fn apply_unchecked(&self, x: &GroupElement) -> GroupElement {
        let free = self
            .free_block
            .iter()
            .map(|row| row.iter().zip(&x.free).map(|(a, b)| a * b).sum())
            .collect();
        let torsion = self
            .mixing_block
            .iter()
            .zip(&self.torsion_block)
            .zip(&self.group.torsion)
            .map(|((c, d), &a)| {
                let s: i64 = c.iter().zip(&x.free).map(|(p, q)| p * q).sum::<i64>()
                    + d.iter().zip(&x.torsion).map(|(p, q)| p * q).sum::<i64>();
                s.rem_euclid(a)
            })
            .collect();
        GroupElement { free, torsion }
    }

    /// Applies only the free block to a rational direction in `K ⊗ Q`.
    pub fn apply_free(&self, v: &[BigInt]) -> Vec<BigInt> {
        linalg::mat_vec(&linalg::int_matrix(&self.free_block), v)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GroupAutomorphism) -> Result<GroupAutomorphism> {
        if self.group != other.group {
            return Err(Error::Structure(
                "automorphisms of different groups".into(),
            ));
        }
        let mul = |a: &[Vec<i64>], b: &[Vec<i64>], inner: usize, cols: usize| -> Vec<Vec<i64>> {
            a.iter()
                .map(|row| {
                    (0..cols)
                        .map(|j| (0..inner).map(|t| row[t] * b[t][j]).sum())
                        .collect()
                })
                .collect()
        };
        let k = self.group.free_rank;
        let l = self.group.torsion.len();
        let free = mul(&self.free_block, &other.free_block, k, k);
        let c1a2 = mul(&self.mixing_block, &other.free_block, k, k);
        let d1c2 = mul(&self.torsion_block, &other.mixing_block, l, k);
        let mixing = c1a2
            .iter()
            .zip(&d1c2)
            .map(|(x, y)| x.iter().zip(y).map(|(p, q)| p + q).collect())
            .collect();
        let torsion = mul(&self.torsion_block, &other.torsion_block, l, l);
        let mut aut = GroupAutomorphism {
            group: self.group.clone(),
            free_block: free,
            mixing_block: mixing,
            torsion_block: torsion,
        };
        aut.reduce();
        Ok(aut)
    }

    pub fn inverse(&self) -> GroupAutomorphism {
        let k = self.group.free_rank;
        let l = self.group.torsion.len();
        let a_inv = linalg::unimodular_inverse(&linalg::int_matrix(&self.free_block))
            .expect("free block is unimodular by construction");
        let a_inv: Vec<Vec<i64>> = a_inv.iter().map(|r| linalg::to_i64_vec(r)).collect();

        // D' with D' D = id on the torsion subgroup, column by column
        let (m, _) = self.torsion_relation_matrix();
        let mut d_inv = vec![vec![0i64; l]; l];
        for j in 0..l {
            let e: Vec<BigInt> = (0..l).map(|i| BigInt::from(u8::from(i == j))).collect();
            let x = linalg::solve_integer(&m, 2 * l, &e)
                .expect("torsion block is bijective by construction");
            for i in 0..l {
                let a = BigInt::from(self.group.torsion[i]);
                d_inv[i][j] = x[i].mod_floor(&a).to_i64().unwrap();
            }
        }
        // C' = -D' C A^{-1}
        let c_ainv: Vec<Vec<i64>> = self
            .mixing_block
            .iter()
            .map(|row| {
                (0..k)
                    .map(|j| (0..k).map(|t| row[t] * a_inv[t][j]).sum())
                    .collect()
            })
            .collect();
        let mixing = (0..l)
            .map(|i| {
                (0..k)
                    .map(|j| -(0..l).map(|t| d_inv[i][t] * c_ainv[t][j]).sum::<i64>())
                    .collect()
            })
            .collect();
        let mut aut = GroupAutomorphism {
            group: self.group.clone(),
            free_block: a_inv,
            mixing_block: mixing,
            torsion_block: d_inv,
        };
        aut.reduce();
        aut
    }
}

impl fmt::Display for GroupAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.to_matrix();
        let width = m
            .iter()
            .flatten()
            .map(|x| x.to_string().len())
            .max()
            .unwrap_or(1);
        for row in &m {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>width$}")).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}
