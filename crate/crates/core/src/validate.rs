use serde::{Deserialize, Serialize};

use crate::grading::GroupElement;
use crate::poly::{IndexedVars, Ideal, Style};

/// A generator that failed the homogeneity test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonHomogeneous {
    /// 1-based position in the generator list.
    pub generator: usize,
    pub polynomial: String,
    pub term_degrees: Vec<GroupElement>,
}

/// Outcome of the checks on the standing assumptions for `S/I`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub effective: bool,
    pub pointed: bool,
    pub homogeneous: bool,
    pub non_homogeneous: Vec<NonHomogeneous>,
    /// Every generator has only terms of total degree at least two.
    pub in_square_of_maximal_ideal: bool,
    /// 1-based positions of generators with a term of degree below two.
    pub low_degree_generators: Vec<usize>,
    /// `I_{q_i} = 0` for all generator weights; `None` when the check could
    /// not run (unpointed grading or inhomogeneous generators).
    pub trivial_at_generator_weights: Option<bool>,
    pub nontrivial_weights: Vec<GroupElement>,
    /// Variable indices (1-based) of a lattice basis among the free parts.
    pub lattice_basis: Option<Vec<usize>>,
}

impl ValidationReport {
    /// The checks that concern only the grading of `S`.
    pub fn ring_passes(&self) -> bool {
        self.effective && self.pointed && self.lattice_basis.is_some()
    }

    pub fn passes(&self) -> bool {
        self.ring_passes()
            && self.homogeneous
            && self.in_square_of_maximal_ideal
            && self.trivial_at_generator_weights == Some(true)
    }

    /// Human readable failures, empty when everything passes.
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.effective {
            out.push("the degrees do not generate the grading group".to_string());
        }
        if !self.pointed {
            out.push("the weight cone is not pointed".to_string());
        }
        if self.lattice_basis.is_none() {
            out.push("no lattice basis among the free parts of the degrees".to_string());
        }
        for nh in &self.non_homogeneous {
            let degs: Vec<String> = nh.term_degrees.iter().map(ToString::to_string).collect();
            out.push(format!(
                "generator {} ({}) is not homogeneous; term degrees {}",
                nh.generator,
                nh.polynomial,
                degs.join(", ")
            ));
        }
        if !self.in_square_of_maximal_ideal {
            let idx: Vec<String> = self.low_degree_generators.iter().map(ToString::to_string).collect();
            out.push(format!(
                "generators {} have terms of degree below two",
                idx.join(", ")
            ));
        }
        match self.trivial_at_generator_weights {
            Some(true) => {}
            Some(false) => {
                let w: Vec<String> = self.nontrivial_weights.iter().map(ToString::to_string).collect();
                out.push(format!("I has nonzero components in degrees {}", w.join(", ")));
            }
            None => out.push("components I_q could not be checked".to_string()),
        }
        out
    }
}

/// Checks effectiveness, pointedness, homogeneity, `I ⊆ m^2`,
/// `I_{q_i} = 0` and the lattice basis condition.
pub fn validate_presentation(ideal: &Ideal) -> ValidationReport {
    let ring = ideal.ring();
    let degrees = ring.degrees();
    let names = IndexedVars::new("T", ring.num_vars());

    let mut non_homogeneous = Vec::new();
    for (i, g) in ideal.generators().iter().enumerate() {
        let mut degs: Vec<GroupElement> = Vec::new();
        for (m, _) in g.terms() {
            let d = ring.degree_of_monomial(m);
            if !degs.contains(&d) {
                degs.push(d);
            }
        }
        if degs.len() > 1 {
            degs.sort();
            non_homogeneous.push(NonHomogeneous {
                generator: i + 1,
                polynomial: g.display(&names, Style::Explicit).to_string(),
                term_degrees: degs,
            });
        }
    }
    let homogeneous = non_homogeneous.is_empty();

    let low_degree_generators: Vec<usize> = ideal
        .generators()
        .iter()
        .enumerate()
        .filter(|(_, g)| g.terms().any(|(m, _)| m.degree() < 2))
        .map(|(i, _)| i + 1)
        .collect();

    let pointed = ring.is_pointed();
    let mut nontrivial_weights = Vec::new();
    let trivial = if pointed && homogeneous {
        let mut ok = true;
        for (w, _) in degrees.distinct_weights() {
            match ideal.component_basis(&w) {
                Ok(c) if c.basis.is_empty() => {}
                Ok(_) => {
                    ok = false;
                    nontrivial_weights.push(w);
                }
                Err(_) => ok = false,
            }
        }
        Some(ok)
    } else {
        None
    };

    let weights = degrees.distinct_weights();
    let lattice_basis = degrees
        .lattice_basis()
        .map(|idx| idx.iter().map(|&j| weights[j].1[0] + 1).collect());

    ValidationReport {
        effective: degrees.check_effective(),
        pointed,
        homogeneous,
        non_homogeneous,
        in_square_of_maximal_ideal: low_degree_generators.is_empty(),
        low_degree_generators,
        trivial_at_generator_weights: trivial,
        nontrivial_weights,
        lattice_basis,
    }
}
