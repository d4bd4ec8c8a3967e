//! Exact rational polyhedral cones.
//!
//! Cones carry both descriptions. The conversion between them is the
//! double description method (Fourier–Motzkin elimination run on the dual
//! cone) with the combinatorial adjacency test, so no redundant rays or
//! facets survive. All vectors are stored as primitive integer vectors and
//! normalized so that two equal cones have identical representations:
//!
//! * the lineality space and the equations are stored as the rows of their
//!   reduced row echelon form, scaled to primitive integers;
//! * rays are projected onto the orthogonal complement of the lineality
//!   space, facet normals onto the linear span of the cone.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RationalCone {
    ambient: usize,
    rays: Vec<Vec<BigInt>>,
    lineality: Vec<Vec<BigInt>>,
    facets: Vec<Vec<BigInt>>,
    equations: Vec<Vec<BigInt>>,
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64).max(1)])
    }
    fn with_range(n: usize, upto: usize) -> Self {
        let mut b = Bits::new(n);
        for i in 0..upto {
            b.set(i);
        }
        b
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }
    fn contains_all(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & b == *b)
    }
}

struct Generators {
    lineality: Vec<Vec<BigInt>>,
    rays: Vec<Vec<BigInt>>,
}

fn combine(a: &BigInt, x: &[BigInt], b: &BigInt, y: &[BigInt]) -> Vec<BigInt> {
    let v: Vec<BigInt> = x.iter().zip(y).map(|(p, q)| a * p - b * q).collect();
    linalg::primitive(&v)
}

/// Generators of `{x : a·x >= 0 for all a in constraints}`.
fn double_description(dim: usize, constraints: &[Vec<BigInt>]) -> Generators {
    let total = constraints.len();
    let mut lineality: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| (0..dim).map(|j| BigInt::from(u8::from(i == j))).collect())
        .collect();
    let mut rays: Vec<(Vec<BigInt>, Bits)> = Vec::new();

    for (idx, a) in constraints.iter().enumerate() {
        if let Some(p) = lineality.iter().position(|l| !linalg::dot(a, l).is_zero()) {
            let mut l0 = lineality.remove(p);
            let mut s0 = linalg::dot(a, &l0);
            if s0.is_negative() {
                l0 = l0.iter().map(|x| -x).collect();
                s0 = -s0;
            }
            for l in lineality.iter_mut() {
                let s = linalg::dot(a, l);
                if !s.is_zero() {
                    *l = combine(&s0, l, &s, &l0);
                }
            }
            for (r, tight) in rays.iter_mut() {
                let s = linalg::dot(a, r);
                if !s.is_zero() {
                    *r = combine(&s0, r, &s, &l0);
                }
                tight.set(idx);
            }
            rays.push((linalg::primitive(&l0), Bits::with_range(total, idx)));
            continue;
        }

        let signs: Vec<BigInt> = rays.iter().map(|(r, _)| linalg::dot(a, r)).collect();
        let mut next: Vec<(Vec<BigInt>, Bits)> = Vec::new();
        for ((r, tight), s) in rays.iter().zip(&signs) {
            if s.is_positive() {
                next.push((r.clone(), tight.clone()));
            } else if s.is_zero() {
                let mut t = tight.clone();
                t.set(idx);
                next.push((r.clone(), t));
            }
        }
        for (i, (p, tp)) in rays.iter().enumerate() {
            if !signs[i].is_positive() {
                continue;
            }
            for (j, (n, tn)) in rays.iter().enumerate() {
                if !signs[j].is_negative() {
                    continue;
                }
                let common = tp.and(tn);
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(m, (_, tm))| m == i || m == j || !tm.contains_all(&common));
                if adjacent {
                    let v = combine(&signs[i], n, &signs[j], p);
                    let mut t = common;
                    t.set(idx);
                    next.push((v, t));
                }
            }
        }
        rays = next;
    }
    Generators {
        lineality,
        rays: rays.into_iter().map(|(r, _)| r).collect(),
    }
}

/// Rows of the RREF of `vectors`, scaled to primitive integer vectors.
fn canonical_subspace(vectors: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let (red, _) = linalg::rref(&linalg::to_rational_matrix(vectors));
    red.iter().map(|r| linalg::primitive_from_rational(r)).collect()
}

/// Orthogonal projection of `v` onto the complement of `span(basis)`.
fn project_away(v: &[BigInt], basis: &[Vec<BigInt>]) -> Vec<BigInt> {
    if basis.is_empty() {
        return v.to_vec();
    }
    let b = linalg::to_rational_matrix(basis);
    let vr: Vec<Rational> = v.iter().map(|x| Rational::from_integer(x.clone())).collect();
    let dot = |x: &[Rational], y: &[Rational]| -> Rational {
        x.iter().zip(y).map(|(p, q)| p * q).sum()
    };
    let gram: Vec<Vec<Rational>> = b
        .iter()
        .map(|x| b.iter().map(|y| dot(x, y)).collect())
        .collect();
    let rhs: Vec<Rational> = b.iter().map(|x| dot(x, &vr)).collect();
    let coeff = linalg::solve_rational(&gram, &rhs).expect("basis rows are independent");
    let mut out = vr;
    for (c, row) in coeff.iter().zip(&b) {
        for (o, x) in out.iter_mut().zip(row) {
            *o -= c * x;
        }
    }
    linalg::primitive_from_rational(&out)
}

fn canonical_vectors(vectors: Vec<Vec<BigInt>>, modulo: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut out: Vec<Vec<BigInt>> = vectors
        .iter()
        .map(|v| project_away(v, modulo))
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .collect();
    out.sort();
    out.dedup();
    out
}

impl RationalCone {
    /// The cone generated by `rays` in `Q^dim`.
    pub fn from_rays(dim: usize, rays: &[Vec<BigInt>]) -> Result<Self> {
        if let Some(bad) = rays.iter().find(|r| r.len() != dim) {
            return Err(Error::Structure(format!(
                "ray of length {} in ambient dimension {dim}",
                bad.len()
            )));
        }
        let dual = double_description(dim, rays);
        let equations = canonical_subspace(&dual.lineality);
        let mut h: Vec<Vec<BigInt>> = dual.rays.clone();
        for e in &equations {
            h.push(e.clone());
            h.push(e.iter().map(|x| -x).collect());
        }
        let primal = double_description(dim, &h);
        let lineality = canonical_subspace(&primal.lineality);
        // facet normals are only defined modulo the equations
        let facets = canonical_vectors(dual.rays, &equations);
        let rays_out = canonical_vectors(primal.rays, &lineality);
        let cone = RationalCone {
            ambient: dim,
            rays: rays_out,
            lineality,
            facets,
            equations,
        };
        debug_assert!(rays.iter().all(|r| cone.contains_unchecked(r)));
        Ok(cone)
    }

    /// The cone `{x : f·x >= 0, e·x = 0}`.
    pub fn from_inequalities(
        dim: usize,
        inequalities: &[Vec<BigInt>],
        equations: &[Vec<BigInt>],
    ) -> Result<Self> {
        if inequalities.iter().chain(equations).any(|r| r.len() != dim) {
            return Err(Error::Structure(format!(
                "constraint length differs from ambient dimension {dim}"
            )));
        }
        let mut h: Vec<Vec<BigInt>> = inequalities.to_vec();
        for e in equations {
            h.push(e.clone());
            h.push(e.iter().map(|x| -x).collect());
        }
        let gens = double_description(dim, &h);
        let mut all = gens.rays;
        for l in gens.lineality {
            all.push(l.iter().map(|x| -x).collect());
            all.push(l);
        }
        Self::from_rays(dim, &all)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.ambient - self.equations.len()
    }

    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    pub fn lineality(&self) -> &[Vec<BigInt>] {
        &self.lineality
    }

    pub fn facets(&self) -> &[Vec<BigInt>] {
        &self.facets
    }

    pub fn equations(&self) -> &[Vec<BigInt>] {
        &self.equations
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations.is_empty()
    }

    fn check_dim(&self, v: &[BigInt]) -> Result<()> {
        if v.len() == self.ambient {
            Ok(())
        } else {
            Err(Error::Structure(format!(
                "vector of length {} for a cone in dimension {}",
                v.len(),
                self.ambient
            )))
        }
    }

    fn contains_unchecked(&self, v: &[BigInt]) -> bool {
        self.equations.iter().all(|e| linalg::dot(e, v).is_zero())
            && self.facets.iter().all(|f| !linalg::dot(f, v).is_negative())
    }

    pub fn contains(&self, v: &[BigInt]) -> Result<bool> {
        self.check_dim(v)?;
        Ok(self.contains_unchecked(v))
    }

    /// True iff `v` lies in the relative interior.
    pub fn contains_in_relative_interior(&self, v: &[BigInt]) -> Result<bool> {
        self.check_dim(v)?;
        Ok(self.equations.iter().all(|e| linalg::dot(e, v).is_zero())
            && self.facets.iter().all(|f| linalg::dot(f, v).is_positive()))
    }

    pub fn contains_cone(&self, other: &RationalCone) -> Result<bool> {
        if other.ambient != self.ambient {
            return Err(Error::Structure("cones in different dimensions".into()));
        }
        Ok(other.rays.iter().all(|r| self.contains_unchecked(r))
            && other.lineality.iter().all(|l| {
                self.contains_unchecked(l)
                    && self.contains_unchecked(&l.iter().map(|x| -x).collect::<Vec<_>>())
            }))
    }

    pub fn intersect(&self, other: &RationalCone) -> Result<RationalCone> {
        if other.ambient != self.ambient {
            return Err(Error::Structure("cones in different dimensions".into()));
        }
        let ineq: Vec<Vec<BigInt>> = self.facets.iter().chain(&other.facets).cloned().collect();
        let eqs: Vec<Vec<BigInt>> = self
            .equations
            .iter()
            .chain(&other.equations)
            .cloned()
            .collect();
        Self::from_inequalities(self.ambient, &ineq, &eqs)
    }

    pub fn equal_cones(&self, other: &RationalCone) -> bool {
        self == other
    }

    /// Image under a square integer matrix.
    pub fn linear_image(&self, matrix: &[Vec<BigInt>]) -> Result<RationalCone> {
        if matrix.len() != self.ambient || matrix.iter().any(|r| r.len() != self.ambient) {
            return Err(Error::Structure("matrix does not fit the cone".into()));
        }
        let mut gens: Vec<Vec<BigInt>> = self.rays.iter().map(|r| linalg::mat_vec(matrix, r)).collect();
        for l in &self.lineality {
            let image = linalg::mat_vec(matrix, l);
            gens.push(image.iter().map(|x| -x).collect());
            gens.push(image);
        }
        Self::from_rays(self.ambient, &gens)
    }

    /// A point of the relative interior: the sum of the rays.
    pub fn relative_interior_point(&self) -> Vec<BigInt> {
        let mut p = vec![BigInt::zero(); self.ambient];
        for r in &self.rays {
            for (x, y) in p.iter_mut().zip(r) {
                *x += y;
            }
        }
        p
    }

    /// For a pointed cone, a linear form positive on every nonzero element.
    pub fn positive_functional(&self) -> Option<Vec<BigInt>> {
        if !self.is_pointed() {
            return None;
        }
        let mut phi = vec![BigInt::zero(); self.ambient];
        for f in &self.facets {
            for (x, y) in phi.iter_mut().zip(f) {
                *x += y;
            }
        }
        // a ray of a lower dimensional cone: the facets are empty
        if self.facets.is_empty() {
            if let Some(r) = self.rays.first() {
                phi = r.clone();
            }
        }
        Some(phi)
    }
}

impl fmt::Display for RationalCone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row = |v: &Vec<BigInt>| {
            v.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        };
        writeln!(f, "rays:")?;
        for r in &self.rays {
            writeln!(f, "  {}", row(r))?;
        }
        if !self.lineality.is_empty() {
            writeln!(f, "lineality:")?;
            for l in &self.lineality {
                writeln!(f, "  {}", row(l))?;
            }
        }
        Ok(())
    }
}
