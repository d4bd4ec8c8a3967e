mod common;

use common::*;
use graded_aut::autks::diagonal_point;
use graded_aut::linalg::{rat, Rational};
use graded_aut::poly::{GradedPolyRing, Ideal, Monomial, Polynomial};
use graded_aut::stabilizer::{aut_grad_alg, aut_grad_alg_with, StabilizerData};
use graded_aut::{Error, Limits};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A random homogeneous ideal in `m^2` on a random admissible grading; `None`
/// when it has a component in a generator weight or hits a resource guard.
fn random_case(rng: &mut impl Rng) -> Option<(RawGrading, Ideal, StabilizerData)> {
    let raw = loop {
        let raw = random_admissible_grading(rng, 2, 1, 5, 2);
        if raw.degree_matrix().check_effective() {
            break raw;
        }
    };
    let ring = GradedPolyRing::new(raw.degree_matrix());
    let mut gens = Vec::new();
    for _ in 0..rng.gen_range(1..=2) {
        let mut e = vec![0u32; raw.r()];
        for _ in 0..2 {
            e[rng.gen_range(0..raw.r())] += 1;
        }
        let u = ring.degrees().degree_of_exponent(&e).unwrap();
        let monos = ring.monomial_basis(&u).unwrap();
        let mut terms = vec![(Monomial::from_exponents(&e), rat(1))];
        for m in monos {
            if rng.gen_bool(0.5) {
                terms.push((m, rat(rng.gen_range(-2..=2))));
            }
        }
        let p = Polynomial::from_terms(terms);
        if !p.is_zero() && p.terms().all(|(m, _)| m.degree() >= 2) {
            gens.push(p);
        }
    }
    let ideal = Ideal::new(ring, gens).unwrap();
    let limits = Limits { max_det_terms: 20_000, ..Limits::default() };
    match aut_grad_alg_with(&ideal, &limits) {
        Ok(stab) => Some((raw, ideal, stab)),
        Err(Error::Validation(_) | Error::ResourceLimit(_)) => None,
        Err(e) => panic!("{e}"),
    }
}

fn torus_values(rng: &mut impl Rng, raw: &RawGrading, stab: &StabilizerData) -> Vec<Rational> {
    let t: Vec<Rational> = (0..raw.k)
        .map(|_| loop {
            let num = rng.gen_range(-5i64..=5);
            if num != 0 {
                break Rational::new(BigInt::from(num), BigInt::from(rng.gen_range(1i64..=5)));
            }
        })
        .collect();
    let signs: Vec<i64> = raw.torsion.iter().map(|&a| if a == 2 && rng.gen_bool(0.5) { -1 } else { 1 }).collect();
    let basis = &stab.presentation.basis;
    (0..basis.n())
        .map(|i| {
            let u = basis.degree(i);
            let mut x = Rational::one();
            for (tj, &e) in t.iter().zip(&u.free) {
                let p = num_traits::pow(tj.clone(), e.unsigned_abs() as usize);
                x *= if e < 0 { Rational::one() / p } else { p };
            }
            for (&s, &e) in signs.iter().zip(&u.torsion) {
                if e % 2 == 1 {
                    x *= rat(s);
                }
            }
            x
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn torus_stabilizes_every_ideal(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let Some((raw, _, stab)) = random_case(&mut rng) else { return Ok(()) };
        let n = stab.presentation.n();
        let id = &stab.triples[0];
        prop_assert!(id.triple.automorphism.is_identity());
        for _ in 0..4 {
            let values = torus_values(&mut rng, &raw, &stab);
            let point = diagonal_point(n, &values);
            for g in id.ideal() {
                prop_assert!(g.eval(&point).is_zero());
            }
            prop_assert!(stab.combined_ideal().vanishes_at(&point));
        }
    }

    #[test]
    fn dimension_bookkeeping(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let Some((_, ideal, stab)) = random_case(&mut rng) else { return Ok(()) };
        for c in &stab.components {
            prop_assert_eq!(c.l() + c.m(), c.dim());
        }
        // I_u may contain m*g_j for generators of smaller degree
        let max_t_degree = stab
            .generator_degrees
            .iter()
            .flat_map(|u| stab.component(u).unwrap().monomials.iter().map(Monomial::degree))
            .max()
            .unwrap_or(0);
        prop_assert!(ideal.generators().iter().all(|g| g.total_degree().unwrap() <= max_t_degree));
        let z = stab.presentation.n().pow(2);
        for t in &stab.triples {
            for u in &stab.generator_degrees {
                let bu = t.triple.automorphism.apply(u).unwrap();
                let (a, b) = (stab.component(u).unwrap(), stab.component(&bu).unwrap());
                prop_assert_eq!(a.dim(), b.dim());
                // l_u = l_{B·u} for every triple with a point; the identity has one
                if t.triple.automorphism.is_identity() {
                    prop_assert_eq!((a.l(), a.m()), (b.l(), b.m()));
                }
            }
            for g in &t.stabilizer {
                prop_assert!(g.max_var().is_some_and(|v| v < z), "J' generator involves Z");
                prop_assert!(g.total_degree().unwrap() <= max_t_degree);
            }
        }
    }

    #[test]
    fn scaling_one_slot_of_the_swap_breaks_it(slot in 0usize..8, c in 2i64..=5) {
        let stab = aut_grad_alg(&running_ideal()).unwrap();
        let t = &stab.triples[1];
        let slots = t.triple.matrix.nonzero_slots();
        let broken = slots[slot];
        let value = |v: usize| {
            if v == 64 {
                rat(-1)
            } else if v == broken {
                rat(c)
            } else if slots.contains(&v) {
                rat(1)
            } else {
                rat(0)
            }
        };
        prop_assert!(t.stabilizer.iter().any(|g| !g.eval(value).is_zero()));
    }
}

#[test]
fn running_example_bookkeeping() {
    let stab = aut_grad_alg(&running_ideal()).unwrap();
    for t in &stab.triples {
        for u in &stab.generator_degrees {
            let bu = t.triple.automorphism.apply(u).unwrap();
            let (a, b) = (stab.component(u).unwrap(), stab.component(&bu).unwrap());
            assert_eq!((a.dim(), a.l(), a.m()), (b.dim(), b.l(), b.m()));
        }
    }
}
