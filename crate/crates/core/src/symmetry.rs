use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grading::{DegreeMatrix, GroupAutomorphism, GroupElement};
use crate::limits::Limits;
use crate::linalg;
use crate::poly::GradedPolyRing;

/// The distinct generator weights `w_1, ..., w_s` in order of first
/// appearance, with the variables carrying each of them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightSet {
    weights: Vec<GroupElement>,
    variables: Vec<Vec<usize>>,
}

impl WeightSet {
    pub fn new(q: &DegreeMatrix) -> Self {
        let (weights, variables) = q.distinct_weights().into_iter().unzip();
        WeightSet { weights, variables }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[GroupElement] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> &GroupElement {
        &self.weights[i]
    }

    /// 0-based variable indices of degree `w_i`.
    pub fn variables(&self, i: usize) -> &[usize] {
        &self.variables[i]
    }

    pub fn index_of(&self, w: &GroupElement) -> Option<usize> {
        self.weights.iter().position(|x| x == w)
    }

    /// The permutation `i ↦ j` with `B·w_i = w_j`, if `B` preserves the set.
    pub fn permutation(&self, b: &GroupAutomorphism) -> Option<Vec<usize>> {
        let perm: Vec<usize> = self
            .weights
            .iter()
            .map(|w| self.index_of(&b.apply(w).ok()?))
            .collect::<Option<_>>()?;
        let distinct: HashSet<usize> = perm.iter().copied().collect();
        (distinct.len() == perm.len()).then_some(perm)
    }
}

/// All automorphisms of `K` mapping the set of generator weights onto
/// itself, identity first.
pub fn aut_gen_weights(q: &DegreeMatrix) -> Result<Vec<GroupAutomorphism>> {
    aut_gen_weights_with(q, &Limits::default())
}

pub fn aut_gen_weights_with(q: &DegreeMatrix, limits: &Limits) -> Result<Vec<GroupAutomorphism>> {
    let group = q.group().clone();
    let k = group.free_rank();
    let torsion = group.torsion().to_vec();
    let l = torsion.len();
    let ws = WeightSet::new(q);
    let s = ws.len();
    let beta = q.lattice_basis().ok_or(Error::NoLatticeBasis)?;

    let free = |i: usize| -> Vec<BigInt> { ws.weight(i).free_big() };
    let columns = |idx: &[usize]| -> Vec<Vec<BigInt>> {
        (0..k)
            .map(|row| idx.iter().map(|&j| free(j)[row].clone()).collect())
            .collect()
    };
    let m_beta_inv = linalg::unimodular_inverse(&columns(&beta)).ok_or(Error::NoLatticeBasis)?;
    let free_parts: HashSet<Vec<BigInt>> = (0..s).map(free).collect();
    let all_weights: HashSet<&GroupElement> = ws.weights().iter().collect();

    // Torsion block candidates: row i, column j is well defined iff
    // a_j * D_ij ≡ 0 mod a_i.
    let entry_choices: Vec<Vec<Vec<i64>>> = (0..l)
        .map(|i| {
            (0..l)
                .map(|j| {
                    (0..torsion[i])
                        .filter(|&x| (torsion[j] * x) % torsion[i] == 0)
                        .collect()
                })
                .collect()
        })
        .collect();
    let candidates: u128 = entry_choices
        .iter()
        .flatten()
        .map(|c| c.len() as u128)
        .product();
    if candidates > u128::from(limits.max_torsion_candidates) {
        return Err(Error::ResourceLimit(format!(
            "{candidates} torsion block candidates per image; raise the torsion candidate limit"
        )));
    }

    let images = injective_maps(k, s);
    let per_image: Vec<Vec<GroupAutomorphism>> = images
        .par_iter()
        .map(|img| {
            let a = linalg::mat_mul(&columns(img), &m_beta_inv);
            if !linalg::determinant(&a).abs().is_one() {
                return Vec::new();
            }
            if (0..s).any(|i| !free_parts.contains(&linalg::mat_vec(&a, &free(i)))) {
                return Vec::new();
            }
            let Some(a) = a
                .iter()
                .map(|r| r.iter().map(ToPrimitive::to_i64).collect::<Option<Vec<_>>>())
                .collect::<Option<Vec<_>>>()
            else {
                return Vec::new();
            };
            let mut found = Vec::new();
            let mut d = vec![vec![0i64; l]; l];
            let mut counters = vec![0usize; l * l];
            loop {
                for (pos, &c) in counters.iter().enumerate() {
                    d[pos / l][pos % l] = entry_choices[pos / l][pos % l][c];
                }
                if let Some(b) = complete(&group, &a, &d, img, &beta, &ws, &m_beta_inv) {
                    if ws.weights().iter().all(|w| all_weights.contains(&b.apply_unchecked(w))) {
                        found.push(b);
                    }
                }
                if !advance(&mut counters, |pos| entry_choices[pos / l][pos % l].len()) {
                    break;
                }
            }
            found
        })
        .collect();

    let identity = GroupAutomorphism::identity(&group);
    let mut out = vec![identity.clone()];
    let mut seen: HashSet<GroupAutomorphism> = HashSet::from([identity]);
    for b in per_image.into_iter().flatten() {
        if seen.insert(b.clone()) {
            out.push(b);
        }
    }
    Ok(out)
}

/// Solves `C M_β = T' - D T_β` for the mixing block and assembles the
/// automorphism, if it is one.
fn complete(
    group: &crate::grading::GradingGroup,
    a: &[Vec<i64>],
    d: &[Vec<i64>],
    img: &[usize],
    beta: &[usize],
    ws: &WeightSet,
    m_beta_inv: &[Vec<BigInt>],
) -> Option<GroupAutomorphism> {
    let k = group.free_rank();
    let torsion = group.torsion();
    let l = torsion.len();
    let mut c = vec![vec![0i64; k]; l];
    for i in 0..l {
        let rhs: Vec<BigInt> = (0..k)
            .map(|j| {
                let mut v = BigInt::from(ws.weight(img[j]).torsion[i]);
                for (t, dit) in d[i].iter().enumerate() {
                    v -= BigInt::from(*dit) * BigInt::from(ws.weight(beta[j]).torsion[t]);
                }
                v
            })
            .collect();
        for (col, cij) in c[i].iter_mut().enumerate() {
            let mut v = BigInt::zero();
            for (j, r) in rhs.iter().enumerate() {
                v += r * &m_beta_inv[j][col];
            }
            let a_i = BigInt::from(torsion[i]);
            *cij = (((v % &a_i) + &a_i) % &a_i).to_i64()?;
        }
    }
    GroupAutomorphism::new(group.clone(), a.to_vec(), c, d.to_vec()).ok()
}

/// Injective maps `{0..k} → {0..s}` as image tuples in lexicographic order.
fn injective_maps(k: usize, s: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(k: usize, s: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in 0..s {
            if !cur.contains(&x) {
                cur.push(x);
                rec(k, s, cur, out);
                cur.pop();
            }
        }
    }
    rec(k, s, &mut cur, &mut out);
    out
}

/// Mixed-radix odometer; false once it wraps around.
fn advance(counters: &mut [usize], radix: impl Fn(usize) -> usize) -> bool {
    for pos in (0..counters.len()).rev() {
        counters[pos] += 1;
        if counters[pos] < radix(pos) {
            return true;
        }
        counters[pos] = 0;
    }
    false
}

/// An element of `Γ_0` together with the induced permutation of the
/// weights.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Admissible {
    pub automorphism: GroupAutomorphism,
    /// `permutation[i] = j` where `B·w_i = w_j` (0-based).
    pub permutation: Vec<usize>,
}

/// Keeps the `B` with `dim S_{w_i} = dim S_{B·w_i}` for every weight.
pub fn admissible_automorphisms(
    auts: &[GroupAutomorphism],
    ring: &GradedPolyRing,
) -> Result<Vec<Admissible>> {
    let ws = WeightSet::new(ring.degrees());
    let dims = (0..ws.len())
        .map(|i| ring.monomial_basis(ws.weight(i)).map(|b| b.len()))
        .collect::<Result<Vec<_>>>()?;
    Ok(admissible_with_dims(auts, &ws, &dims))
}

pub(crate) fn admissible_with_dims(
    auts: &[GroupAutomorphism],
    ws: &WeightSet,
    dims: &[usize],
) -> Vec<Admissible> {
    auts.iter()
        .filter_map(|b| {
            let permutation = ws.permutation(b)?;
            permutation
                .iter()
                .enumerate()
                .all(|(i, &j)| dims[i] == dims[j])
                .then(|| Admissible {
                    automorphism: b.clone(),
                    permutation,
                })
        })
        .collect()
}
