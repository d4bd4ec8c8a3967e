//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Variables are plain indices; naming only matters for parsing and
//! printing, see [`VarNames`]. Monomials are stored sparsely so the same
//! type serves the ring `S = Q[T_1..T_r]` and the much wider coordinate
//! ring `Q[Y_1..Y_{n^2}, Z]` of the matrix group.

mod graded;
mod parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::linalg::Rational;

pub use graded::{annihilator_forms, ComponentBasis, GradedPolyRing, Ideal};
pub use parse::parse_polynomial;

/// A monomial as sorted `(variable, exponent)` pairs with positive exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<(u32, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(i: usize) -> Self {
        Monomial(vec![(i as u32, 1)])
    }

    pub fn from_exponents(exponents: &[u32]) -> Self {
        Monomial(
            exponents
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| (i as u32, e))
                .collect(),
        )
    }

    pub fn from_pairs(mut pairs: Vec<(u32, u32)>) -> Self {
        pairs.sort_unstable();
        let mut merged: Vec<(u32, u32)> = Vec::with_capacity(pairs.len());
        for (v, e) in pairs {
            match merged.last_mut() {
                Some((lv, le)) if *lv == v => *le += e,
                _ => merged.push((v, e)),
            }
        }
        merged.retain(|&(_, e)| e > 0);
        Monomial(merged)
    }

    /// Dense exponent vector of length `nvars`.
    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        let mut e = vec![0; nvars];
        for &(v, x) in &self.0 {
            e[v as usize] = x;
        }
        e
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.0
            .iter()
            .find(|&&(v, _)| v as usize == var)
            .map_or(0, |&(_, e)| e)
    }

    /// Largest variable index occurring, if any.
    pub fn max_var(&self) -> Option<usize> {
        self.0.last().map(|&(v, _)| v as usize)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn pow(&self, e: u32) -> Monomial {
        Monomial(self.0.iter().map(|&(v, x)| (v, x * e)).collect())
    }
}

/// Graded lexicographic order with `x_1 > x_2 > ...`.
pub fn cmp_deglex(a: &Monomial, b: &Monomial) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| {
        for (x, y) in a.0.iter().zip(&b.0) {
            if x.0 != y.0 {
                // the monomial containing the smaller variable index wins
                return y.0.cmp(&x.0);
            }
            if x.1 != y.1 {
                return x.1.cmp(&y.1);
            }
        }
        a.0.len().cmp(&b.0.len())
    })
}

/// Graded reverse lexicographic order with `x_1 > x_2 > ...`; this is the
/// order polynomials are printed in.
pub fn cmp_degrevlex(a: &Monomial, b: &Monomial) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| {
        let (mut i, mut j) = (a.0.len(), b.0.len());
        while i > 0 && j > 0 {
            let x = a.0[i - 1];
            let y = b.0[j - 1];
            if x.0 != y.0 {
                // the monomial containing the larger variable index is smaller
                return y.0.cmp(&x.0);
            }
            if x.1 != y.1 {
                return y.1.cmp(&x.1);
            }
            i -= 1;
            j -= 1;
        }
        Ordering::Equal
    })
}

/// A polynomial over `Q`; no zero coefficients are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn var(i: usize) -> Self {
        Self::term(Monomial::var(i), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms sorted by descending degrevlex.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Rational)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|a, b| cmp_degrevlex(b.0, a.0));
        t
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn max_var(&self) -> Option<usize> {
        self.terms.keys().filter_map(Monomial::max_var).max()
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(t, x)| (t.mul(m), x.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates at a point given by a variable assignment.
    pub fn eval(&self, value: impl Fn(usize) -> Rational) -> Rational {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m.pairs() {
                let x = value(v as usize);
                for _ in 0..e {
                    t *= &x;
                }
                if t.is_zero() {
                    break;
                }
            }
            total += t;
        }
        total
    }

    /// Replaces each variable by a polynomial.
    pub fn substitute(&self, image: impl Fn(usize) -> Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        let mut cache: BTreeMap<usize, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(c.clone());
            for &(v, e) in m.pairs() {
                let base = cache.entry(v as usize).or_insert_with(|| image(v as usize));
                t = &t * &base.pow(e);
            }
            out = &out + &t;
        }
        out
    }

    pub fn display<'a>(&'a self, names: &'a dyn VarNames, style: Style) -> PolyDisplay<'a> {
        PolyDisplay {
            poly: self,
            names,
            style,
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }
}

/// Maps variable indices to names and back.
pub trait VarNames: Sync {
    fn name(&self, var: usize) -> String;
    /// Resolves `name` or `name(index)` to a variable.
    fn resolve(&self, name: &str, index: Option<u64>) -> Option<usize>;
}

/// Variables `P(1), ..., P(count)` for a prefix `P`.
#[derive(Clone, Debug)]
pub struct IndexedVars {
    pub prefix: String,
    pub count: usize,
}

impl IndexedVars {
    pub fn new(prefix: &str, count: usize) -> Self {
        IndexedVars {
            prefix: prefix.to_string(),
            count,
        }
    }
}

impl VarNames for IndexedVars {
    fn name(&self, var: usize) -> String {
        format!("{}({})", self.prefix, var + 1)
    }
    fn resolve(&self, name: &str, index: Option<u64>) -> Option<usize> {
        let i = index? as usize;
        (name == self.prefix && (1..=self.count).contains(&i)).then(|| i - 1)
    }
}

/// `Y(1), ..., Y(n^2)` followed by the inverse witness `Z`.
#[derive(Clone, Debug)]
pub struct MatrixVars {
    pub n: usize,
}

impl MatrixVars {
    pub fn z(&self) -> usize {
        self.n * self.n
    }
    pub fn count(&self) -> usize {
        self.n * self.n + 1
    }
}

impl VarNames for MatrixVars {
    fn name(&self, var: usize) -> String {
        if var == self.z() {
            "Z".to_string()
        } else {
            format!("Y({})", var + 1)
        }
    }
    fn resolve(&self, name: &str, index: Option<u64>) -> Option<usize> {
        match (name, index) {
            ("Z", None) => Some(self.z()),
            ("Y", Some(i)) if (1..=self.z() as u64).contains(&i) => Some(i as usize - 1),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    /// `2*T(1)^2*T(3) - T(2)`; the input grammar.
    Explicit,
    /// `2T(1)^2T(3)-T(2)`; the short output of interactive sessions.
    Compact,
}

pub struct PolyDisplay<'a> {
    poly: &'a Polynomial,
    names: &'a dyn VarNames,
    style: Style,
}

impl std::fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        let (times, plus, minus) = match self.style {
            Style::Explicit => ("*", " + ", " - "),
            Style::Compact => ("", "+", "-"),
        };
        let mut out = String::new();
        for (k, (m, c)) in self.poly.sorted_terms().into_iter().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(minus),
                (_, false) => out.push_str(plus),
            }
            let abs = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for &(v, e) in m.pairs() {
                let name = self.names.name(v as usize);
                if e == 1 {
                    factors.push(name);
                } else {
                    factors.push(format!("{name}^{e}"));
                }
            }
            let _ = write!(out, "{}", factors.join(times));
        }
        f.write_str(&out)
    }
}
