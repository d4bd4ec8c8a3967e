use std::collections::HashSet;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cone::RationalCone;
use crate::error::{Error, Result};
use crate::grading::{DegreeMatrix, GroupAutomorphism, GroupElement};
use crate::limits::Limits;
use crate::stabilizer::{ExtendedTriple, StabilizerData};

/// Which faces of the positive orthant give orbit cones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FaceSource {
    /// Every nonempty subset of the variables.
    AllSubsets,
    /// Explicit faces as lists of 0-based variable indices.
    UserFaces(Vec<Vec<usize>>),
}

/// The cones `cone(q_i^0 : i ∈ F)` for the selected faces `F`, deduplicated
/// and in order of first occurrence. Pointedness is not required here; the
/// GIT-cone computation checks membership in the weight cone itself.
pub fn orbit_cones(q: &DegreeMatrix, faces: &FaceSource, limits: &Limits) -> Result<Vec<RationalCone>> {
    let r = q.num_vars();
    let free = q.free_parts();
    let faces: Vec<Vec<usize>> = match faces {
        FaceSource::AllSubsets => {
            if r > limits.max_subset_vars {
                return Err(Error::ResourceLimit(format!(
                    "{r} variables give 2^{r} - 1 subsets (limit r <= {}); supply the relevant faces with mode user-faces",
                    limits.max_subset_vars
                )));
            }
            (1u64..1 << r)
                .map(|mask| (0..r).filter(|i| mask >> i & 1 == 1).collect())
                .collect()
        }
        FaceSource::UserFaces(list) => {
            if let Some(bad) = list.iter().flatten().find(|&&i| i >= r) {
                return Err(Error::Structure(format!(
                    "face refers to variable {} but there are only {r}",
                    bad + 1
                )));
            }
            list.clone()
        }
    };
    // faces with the same set of weights give the same cone
    let mut seen: HashSet<Vec<Vec<BigInt>>> = HashSet::new();
    let ray_sets: Vec<Vec<Vec<BigInt>>> = faces
        .into_iter()
        .filter_map(|f| {
            let mut rays: Vec<Vec<BigInt>> = f.iter().map(|&i| free[i].clone()).collect();
            rays.sort();
            rays.dedup();
            seen.insert(rays.clone()).then_some(rays)
        })
        .collect();
    let k = q.group().free_rank();
    let cones: Vec<RationalCone> = ray_sets
        .par_iter()
        .map(|rays| RationalCone::from_rays(k, rays))
        .collect::<Result<_>>()?;
    let mut unique: HashSet<&RationalCone> = HashSet::new();
    Ok(cones.iter().filter(|c| unique.insert(c)).cloned().collect())
}

/// The weight cone `cone(q_1^0, ..., q_r^0)`.
pub fn weight_cone(q: &DegreeMatrix) -> Result<RationalCone> {
    RationalCone::from_rays(q.group().free_rank(), &q.free_parts())
}

/// `λ(w)`: the intersection of all orbit cones containing `w^0`.
pub fn git_cone(
    q: &DegreeMatrix,
    w: &GroupElement,
    faces: &FaceSource,
    limits: &Limits,
) -> Result<RationalCone> {
    if !q.group().contains(w) {
        return Err(Error::Structure(format!("{w} is not an element of {}", q.group())));
    }
    let point = w.free_big();
    let mut lambda = weight_cone(q)?;
    if !lambda.contains(&point)? {
        return Err(Error::NotEffectiveClass(w.to_string()));
    }
    for c in orbit_cones(q, faces, limits)? {
        if c.contains(&point)? && !c.contains_cone(&lambda)? {
            lambda = lambda.intersect(&c)?;
        }
    }
    Ok(lambda)
}

/// True iff the free block of `b` maps `cone` onto itself.
pub fn fixes_cone(b: &GroupAutomorphism, cone: &RationalCone) -> Result<bool> {
    let a: Vec<Vec<BigInt>> = b
        .free_block()
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    Ok(cone.linear_image(&a)?.equal_cones(cone))
}

/// The triples retained by the GIT-cone filter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XhatResult {
    pub cone: RationalCone,
    /// 0-based positions of the retained triples in the input.
    pub retained: Vec<usize>,
    pub triples: Vec<ExtendedTriple>,
}

/// Keeps the triples whose weight automorphism fixes `λ(w)`.
pub fn aut_xhat(
    stab: &StabilizerData,
    q: &DegreeMatrix,
    w: &GroupElement,
    faces: &FaceSource,
    limits: &Limits,
) -> Result<XhatResult> {
    let cone = git_cone(q, w, faces, limits)?;
    let keep: Vec<bool> = stab
        .triples
        .par_iter()
        .map(|t| fixes_cone(&t.triple.automorphism, &cone))
        .collect::<Result<_>>()?;
    let retained: Vec<usize> = (0..keep.len()).filter(|&i| keep[i]).collect();
    let triples = retained.iter().map(|&i| stab.triples[i].clone()).collect();
    Ok(XhatResult {
        cone,
        retained,
        triples,
    })
}
