use std::collections::HashMap;

use num_traits::Zero;
use rayon::prelude::*;

use crate::autks::{self, ActionBasis, AutPresentation, AutTriple, FactoredIdeal};
use crate::error::{Error, Result};
use crate::grading::GroupElement;
use crate::limits::Limits;
use crate::linalg::Rational;
use crate::poly::{annihilator_forms, Ideal, Monomial, Polynomial};

/// `I_u` inside `S_u`: an echelon basis `h_1..h_l` and forms `ℓ_1..ℓ_m`
/// cutting it out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentData {
    pub degree: GroupElement,
    pub monomials: Vec<Monomial>,
    pub basis: Vec<Vec<Rational>>,
    pub forms: Vec<Vec<Rational>>,
}

impl ComponentData {
    pub fn compute(ideal: &Ideal, u: &GroupElement) -> Result<Self> {
        let c = ideal.component_basis(u)?;
        let forms = annihilator_forms(&c.basis, c.dim());
        Ok(ComponentData {
            degree: u.clone(),
            monomials: c.monomials,
            basis: c.basis,
            forms,
        })
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn l(&self) -> usize {
        self.basis.len()
    }

    pub fn m(&self) -> usize {
        self.forms.len()
    }

    pub fn polynomial(&self, coords: &[Rational]) -> Polynomial {
        Polynomial::from_terms(self.monomials.iter().cloned().zip(coords.iter().cloned()))
    }
}

/// An element of the presentation of `Aut_K(S)` with its stabilizer
/// equations `J'_B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedTriple {
    pub triple: AutTriple,
    pub stabilizer: Vec<Polynomial>,
}

impl ExtendedTriple {
    /// `J_B ∪ J'_B`.
    pub fn ideal(&self) -> Vec<Polynomial> {
        let mut gens = self.triple.ideal();
        gens.extend(self.stabilizer.iter().cloned());
        gens
    }
}

/// The output of the `Aut_K(R)` algorithm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerData {
    pub presentation: AutPresentation,
    /// `Ω_I` in order of first appearance.
    pub generator_degrees: Vec<GroupElement>,
    /// Component data for `Ω_I` followed by any further target degrees.
    pub components: Vec<ComponentData>,
    pub triples: Vec<ExtendedTriple>,
}

impl StabilizerData {
    pub fn component(&self, u: &GroupElement) -> Option<&ComponentData> {
        self.components.iter().find(|c| c.degree == *u)
    }

    /// `J + J'` as the product of the per-triple ideals.
    pub fn combined_ideal(&self) -> FactoredIdeal {
        FactoredIdeal {
            factors: self.triples.iter().map(ExtendedTriple::ideal).collect(),
        }
    }
}

/// `ℓ_i(A_B·h_j)` where `h_j` runs over the basis of `I_u` and `ℓ_i` over the
/// forms of the target component `I_{B·u}`, for every `u ∈ Ω_I`.
pub fn stabilizer_ideal_for_triple(
    triple: &AutTriple,
    basis: &ActionBasis,
    generator_degrees: &[GroupElement],
    components: &HashMap<GroupElement, ComponentData>,
) -> Result<Vec<Polynomial>> {
    let mut out: Vec<Polynomial> = Vec::new();
    for u in generator_degrees {
        let v = triple.automorphism.apply(u)?;
        let missing = |d: &GroupElement| Error::Structure(format!("no component data for degree {d}"));
        let src = components.get(u).ok_or_else(|| missing(u))?;
        let tgt = components.get(&v).ok_or_else(|| missing(&v))?;
        if src.dim() != tgt.dim() {
            return Err(Error::DimensionMismatch {
                from: u.to_string(),
                to: v.to_string(),
                source_dim: src.dim(),
                target_dim: tgt.dim(),
            });
        }
        let position: HashMap<&Monomial, usize> =
            tgt.monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();
        for h in &src.basis {
            let image = autks::image_of_polynomial(&src.polynomial(h), basis, &triple.matrix);
            let mut coords = vec![Polynomial::zero(); tgt.dim()];
            for (t, y) in image {
                let k = *position.get(&t).ok_or_else(|| {
                    Error::Structure(format!("image of I_{u} leaves the component of degree {v}"))
                })?;
                coords[k] = y;
            }
            for form in &tgt.forms {
                let mut eq = Polynomial::zero();
                for (c, y) in form.iter().zip(&coords) {
                    if !c.is_zero() {
                        eq = &eq + &y.scale(c);
                    }
                }
                if !eq.is_zero() && !out.contains(&eq) {
                    out.push(eq);
                }
            }
        }
    }
    Ok(out)
}

/// Runs `Aut_K(S)` and extends every triple by its stabilizer equations.
pub fn aut_grad_alg(ideal: &Ideal) -> Result<StabilizerData> {
    aut_grad_alg_with(ideal, &Limits::default())
}

pub fn aut_grad_alg_with(ideal: &Ideal, limits: &Limits) -> Result<StabilizerData> {
    let ring = ideal.ring();
    let generator_degrees = ideal.generator_degrees()?;
    if !ring.is_pointed() {
        return Err(Error::NotPointed);
    }
    for (w, _) in ring.degrees().distinct_weights() {
        if !ideal.component_basis(&w)?.basis.is_empty() {
            return Err(Error::Validation(format!(
                "I has a nonzero component in the generator weight {w}"
            )));
        }
    }
    let presentation = autks::aut_ks_with(ring, limits)?;

    let mut needed: Vec<GroupElement> = generator_degrees.clone();
    for t in &presentation.triples {
        for u in &generator_degrees {
            let v = t.automorphism.apply(u)?;
            if !needed.contains(&v) {
                needed.push(v);
            }
        }
    }
    let components: Vec<ComponentData> = needed
        .par_iter()
        .map(|u| ComponentData::compute(ideal, u))
        .collect::<Result<_>>()?;
    let by_degree: HashMap<GroupElement, ComponentData> =
        components.iter().map(|c| (c.degree.clone(), c.clone())).collect();

    let triples = presentation
        .triples
        .par_iter()
        .map(|t| {
            let stabilizer =
                stabilizer_ideal_for_triple(t, &presentation.basis, &generator_degrees, &by_degree)?;
            Ok(ExtendedTriple {
                triple: t.clone(),
                stabilizer,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(StabilizerData {
        presentation,
        generator_degrees,
        components,
        triples,
    })
}
