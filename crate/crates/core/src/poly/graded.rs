use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{cmp_deglex, Monomial, Polynomial};
use crate::error::{Error, Result};
use crate::grading::{DegreeMatrix, GradingGroup, GroupElement};
use crate::linalg::{self, Rational};

/// `S = Q[T_1, ..., T_r]` graded by `deg(T_i) = q_i`.
#[derive(Clone, Debug)]
pub struct GradedPolyRing {
    degrees: DegreeMatrix,
    /// φ(q_i) for a linear form φ positive on the weight cone, if pointed.
    weights: Option<Vec<u64>>,
    functional: Option<Vec<BigInt>>,
}

impl PartialEq for GradedPolyRing {
    fn eq(&self, other: &Self) -> bool {
        self.degrees == other.degrees
    }
}

impl GradedPolyRing {
    pub fn new(degrees: DegreeMatrix) -> Self {
        let functional = degrees.positive_functional();
        let weights = functional.as_ref().map(|phi| {
            degrees
                .free_parts()
                .iter()
                .map(|q| linalg::dot(phi, q).to_u64().expect("functional value fits u64"))
                .collect()
        });
        GradedPolyRing {
            degrees,
            weights,
            functional,
        }
    }

    pub fn degrees(&self) -> &DegreeMatrix {
        &self.degrees
    }

    pub fn group(&self) -> &GradingGroup {
        self.degrees.group()
    }

    pub fn num_vars(&self) -> usize {
        self.degrees.num_vars()
    }

    pub fn is_pointed(&self) -> bool {
        self.weights.is_some()
    }

    pub fn positive_functional(&self) -> Option<&[BigInt]> {
        self.functional.as_deref()
    }

    pub fn degree_of_monomial(&self, m: &Monomial) -> GroupElement {
        self.degrees
            .degree_of_exponent_unchecked(&m.exponents(self.num_vars()))
    }

    /// The common degree of all terms of a nonzero homogeneous polynomial.
    pub fn degree_of(&self, f: &Polynomial) -> Result<GroupElement> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if f.max_var().is_some_and(|v| v >= self.num_vars()) {
            return Err(Error::Structure("polynomial uses variables outside the ring".into()));
        }
        let mut degrees: Vec<GroupElement> = Vec::new();
        for (m, _) in f.terms() {
            let d = self.degree_of_monomial(m);
            if !degrees.contains(&d) {
                degrees.push(d);
            }
        }
        if degrees.len() == 1 {
            Ok(degrees.pop().unwrap())
        } else {
            degrees.sort();
            Err(Error::NotHomogeneous {
                degrees: degrees
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(", "),
            })
        }
    }

    /// All monomials of degree `w`, in descending graded lexicographic order.
    pub fn monomial_basis(&self, w: &GroupElement) -> Result<Vec<Monomial>> {
        let weights = self.weights.as_ref().ok_or(Error::NotPointed)?;
        if !self.group().contains(w) {
            return Err(Error::Structure(format!("{w} is not an element of {}", self.group())));
        }
        let phi = self.functional.as_ref().unwrap();
        let target = linalg::dot(phi, &w.free_big());
        if target.is_negative() {
            return Ok(Vec::new());
        }
        let budget = target.to_u64().ok_or_else(|| {
            Error::ResourceLimit(format!("degree {w} is too large to enumerate"))
        })?;
        let mut out = Vec::new();
        let mut exps = vec![0u32; self.num_vars()];
        self.enumerate(0, budget, weights, w, &mut exps, &mut out);
        out.sort_by(|a, b| cmp_deglex(b, a));
        Ok(out)
    }

    fn enumerate(
        &self,
        var: usize,
        budget: u64,
        weights: &[u64],
        target: &GroupElement,
        exps: &mut Vec<u32>,
        out: &mut Vec<Monomial>,
    ) {
        let r = self.num_vars();
        if var + 1 == r {
            // the last exponent is forced by the functional
            if budget.is_multiple_of(weights[var]) {
                exps[var] = (budget / weights[var]) as u32;
                if self.degrees.degree_of_exponent_unchecked(exps) == *target {
                    out.push(Monomial::from_exponents(exps));
                }
                exps[var] = 0;
            }
            return;
        }
        let max = budget / weights[var];
        for e in 0..=max {
            exps[var] = e as u32;
            self.enumerate(var + 1, budget - e * weights[var], weights, target, exps, out);
        }
        exps[var] = 0;
    }
}

/// A spanning-set-derived echelon basis of the component `I_u`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComponentBasis {
    pub degree: GroupElement,
    /// Monomial basis of `S_u`; the coordinates below refer to it.
    pub monomials: Vec<Monomial>,
    /// Reduced row echelon basis `h_1, ..., h_l` of `I_u`.
    pub basis: Vec<Vec<Rational>>,
}

impl ComponentBasis {
    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn polynomial(&self, coords: &[Rational]) -> Polynomial {
        Polynomial::from_terms(
            self.monomials
                .iter()
                .cloned()
                .zip(coords.iter().cloned()),
        )
    }

    /// Coordinates of a polynomial of degree `u` in the monomial basis.
    pub fn coordinates(&self, f: &Polynomial) -> Option<Vec<Rational>> {
        let index: HashMap<&Monomial, usize> =
            self.monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut v = vec![Rational::zero(); self.monomials.len()];
        for (m, c) in f.terms() {
            v[*index.get(m)?] = c.clone();
        }
        Some(v)
    }
}

/// Linear forms cutting out `span(basis)` inside a space of dimension `dim`:
/// a kernel basis of the matrix with rows `h_j`.
pub fn annihilator_forms(basis: &[Vec<Rational>], dim: usize) -> Vec<Vec<Rational>> {
    linalg::kernel(basis, dim)
}

/// `I = <g_1, ..., g_s>` in a graded polynomial ring.
#[derive(Clone, Debug)]
pub struct Ideal {
    ring: GradedPolyRing,
    generators: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(ring: GradedPolyRing, generators: Vec<Polynomial>) -> Result<Self> {
        let r = ring.num_vars();
        if generators.iter().any(|g| g.max_var().is_some_and(|v| v >= r)) {
            return Err(Error::Structure("generator uses variables outside the ring".into()));
        }
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { ring, generators })
    }

    pub fn ring(&self) -> &GradedPolyRing {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// The distinct generator degrees in order of first appearance.
    pub fn generator_degrees(&self) -> Result<Vec<GroupElement>> {
        let mut out: Vec<GroupElement> = Vec::new();
        for g in &self.generators {
            let d = self.ring.degree_of(g)?;
            if !out.contains(&d) {
                out.push(d);
            }
        }
        Ok(out)
    }

    /// Echelon basis of `I_u` from the products `m * g_j` with
    /// `deg(m) = u - deg(g_j)`.
    pub fn component_basis(&self, u: &GroupElement) -> Result<ComponentBasis> {
        let monomials = self.ring.monomial_basis(u)?;
        let index: HashMap<&Monomial, usize> =
            monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let group = self.ring.group();
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for g in &self.generators {
            let d = self.ring.degree_of(g)?;
            let shift = group.sub(u, &d)?;
            for m in self.ring.monomial_basis(&shift)? {
                let mut row = vec![Rational::zero(); monomials.len()];
                for (t, c) in g.terms() {
                    let pos = index[&t.mul(&m)];
                    row[pos] += c;
                }
                rows.push(row);
            }
        }
        let (basis, _) = linalg::rref(&rows);
        Ok(ComponentBasis {
            degree: u.clone(),
            monomials,
            basis,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;
    use crate::poly::{parse_polynomial, IndexedVars};

    fn paper_ring() -> GradedPolyRing {
        let g = GradingGroup::new(3, vec![2]).unwrap();
        GradedPolyRing::new(
            DegreeMatrix::from_rows(
                g,
                &[
                    vec![1, 1, 0, 0, -1, -1, 2, -2],
                    vec![0, 1, 1, -1, -1, 0, 1, -1],
                    vec![1, 1, 1, 1, 1, 1, 1, 1],
                    vec![1, 0, 1, 0, 1, 0, 1, 0],
                ],
            )
            .unwrap(),
        )
    }

    fn paper_ideal() -> Ideal {
        let ring = paper_ring();
        let g = parse_polynomial(
            "T(1)*T(6) + T(2)*T(5) + T(3)*T(4) + T(7)*T(8)",
            &IndexedVars::new("T", 8),
        )
        .unwrap();
        Ideal::new(ring, vec![g]).unwrap()
    }

    #[test]
    fn degrees_of_polynomials() {
        let ring = paper_ring();
        let names = IndexedVars::new("T", 8);
        let g = paper_ideal().generators()[0].clone();
        assert_eq!(
            ring.degree_of(&g).unwrap(),
            ring.group().element(vec![0, 0, 2], vec![1]).unwrap()
        );
        let t3 = parse_polynomial("T(3)", &names).unwrap();
        assert_eq!(ring.degree_of(&t3).unwrap(), *ring.degrees().column(2));
        let bad = parse_polynomial("T(1) + T(2)", &names).unwrap();
        assert!(matches!(ring.degree_of(&bad), Err(Error::NotHomogeneous { .. })));
        assert_eq!(ring.degree_of(&Polynomial::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn variable_degrees_have_singleton_bases() {
        let ring = paper_ring();
        for i in 0..8 {
            let b = ring.monomial_basis(ring.degrees().column(i)).unwrap();
            assert_eq!(b, vec![Monomial::var(i)]);
        }
        assert_eq!(ring.monomial_basis(&ring.group().zero()).unwrap(), vec![Monomial::one()]);
    }

    #[test]
    fn quadric_degree_basis() {
        let ring = paper_ring();
        let u = ring.group().element(vec![0, 0, 2], vec![1]).unwrap();
        let b = ring.monomial_basis(&u).unwrap();
        let expected: Vec<Monomial> = [(1, 6), (2, 5), (3, 4), (7, 8)]
            .iter()
            .map(|&(i, j)| Monomial::var(i - 1).mul(&Monomial::var(j - 1)))
            .collect();
        assert_eq!(b, expected);
    }

    #[test]
    fn unpointed_ring_refuses() {
        let g = GradingGroup::new(1, vec![]).unwrap();
        let ring = GradedPolyRing::new(DegreeMatrix::from_rows(g.clone(), &[vec![1, -1]]).unwrap());
        assert_eq!(ring.monomial_basis(&g.zero()), Err(Error::NotPointed));
    }

    #[test]
    fn ideal_components() {
        let ideal = paper_ideal();
        let ring = ideal.ring().clone();
        let u = ring.group().element(vec![0, 0, 2], vec![1]).unwrap();
        let c = ideal.component_basis(&u).unwrap();
        assert_eq!(c.basis, vec![vec![rat(1), rat(1), rat(1), rat(1)]]);
        for i in 0..8 {
            let c = ideal.component_basis(ring.degrees().column(i)).unwrap();
            assert!(c.basis.is_empty());
        }
        let z = GradingGroup::new(1, vec![]).unwrap();
        let r1 = GradedPolyRing::new(DegreeMatrix::from_rows(z.clone(), &[vec![1]]).unwrap());
        let sq = parse_polynomial("T(1)^2", &IndexedVars::new("T", 1)).unwrap();
        let i1 = Ideal::new(r1, vec![sq]).unwrap();
        let c = i1.component_basis(&z.element(vec![2], vec![]).unwrap()).unwrap();
        assert_eq!(c.basis, vec![vec![rat(1)]]);
        assert_eq!(i1.generator_degrees().unwrap(), vec![z.element(vec![2], vec![]).unwrap()]);
    }

    #[test]
    fn annihilators() {
        let forms = annihilator_forms(&[vec![rat(1), rat(1), rat(1), rat(1)]], 4);
        assert_eq!(forms.len(), 3);
        assert_eq!(annihilator_forms(&[], 3).len(), 3);
        let full = vec![vec![rat(1), rat(0)], vec![rat(0), rat(1)]];
        assert!(annihilator_forms(&full, 2).is_empty());
    }

    #[test]
    fn generator_degrees_of_mixed_ideal() {
        let z = GradingGroup::new(1, vec![]).unwrap();
        let ring = GradedPolyRing::new(DegreeMatrix::from_rows(z.clone(), &[vec![1, 1]]).unwrap());
        let names = IndexedVars::new("T", 2);
        let gens = vec![
            parse_polynomial("T(1)^2", &names).unwrap(),
            parse_polynomial("T(2)^3", &names).unwrap(),
        ];
        let ideal = Ideal::new(ring.clone(), gens).unwrap();
        let degs: Vec<i64> = ideal.generator_degrees().unwrap().iter().map(|d| d.free[0]).collect();
        assert_eq!(degs, vec![2, 3]);
        assert!(Ideal::new(ring, vec![]).unwrap().generator_degrees().unwrap().is_empty());
    }
}
