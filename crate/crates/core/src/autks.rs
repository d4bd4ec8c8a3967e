use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grading::{GroupAutomorphism, GroupElement};
use crate::limits::Limits;
use crate::linalg::{rat, Rational};
use crate::poly::{GradedPolyRing, MatrixVars, Monomial, Polynomial};
use crate::symmetry::{self, Admissible, WeightSet};

/// The concatenated monomial bases `B = (B_1, ..., B_s)` of the components
/// `S_{w_i}`, `w_i ∈ Ω_S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionBasis {
    weights: WeightSet,
    blocks: Vec<Vec<Monomial>>,
    offsets: Vec<usize>,
    flat_degrees: Vec<GroupElement>,
    /// `var_position[v]` is the flat index of `T_v`.
    var_position: Vec<usize>,
}

impl ActionBasis {
    pub fn new(ring: &GradedPolyRing) -> Result<Self> {
        Self::with_limits(ring, &Limits::default())
    }

    pub fn with_limits(ring: &GradedPolyRing, limits: &Limits) -> Result<Self> {
        let weights = WeightSet::new(ring.degrees());
        let blocks: Vec<Vec<Monomial>> = weights
            .weights()
            .par_iter()
            .map(|w| ring.monomial_basis(w))
            .collect::<Result<_>>()?;
        let n: usize = blocks.iter().map(Vec::len).sum();
        if n > limits.max_basis_size {
            return Err(Error::ResourceLimit(format!(
                "action basis has size n = {n} (limit {}); the ring S' would have n^2 + 1 variables",
                limits.max_basis_size
            )));
        }
        let mut offsets = Vec::with_capacity(blocks.len());
        let mut flat_degrees = Vec::with_capacity(n);
        let mut start = 0;
        for (b, block) in blocks.iter().enumerate() {
            offsets.push(start);
            start += block.len();
            flat_degrees.extend(std::iter::repeat_n(weights.weight(b).clone(), block.len()));
        }
        let mut var_position = vec![0; ring.num_vars()];
        for (b, block) in blocks.iter().enumerate() {
            for &v in weights.variables(b) {
                let pos = block
                    .iter()
                    .position(|m| *m == Monomial::var(v))
                    .expect("a variable lies in the basis of its own degree");
                var_position[v] = offsets[b] + pos;
            }
        }
        Ok(ActionBasis {
            weights,
            blocks,
            offsets,
            flat_degrees,
            var_position,
        })
    }

    pub fn n(&self) -> usize {
        self.flat_degrees.len()
    }

    pub fn weight_set(&self) -> &WeightSet {
        &self.weights
    }

    pub fn blocks(&self) -> &[Vec<Monomial>] {
        &self.blocks
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    pub fn block_range(&self, b: usize) -> std::ops::Range<usize> {
        self.offsets[b]..self.offsets[b] + self.blocks[b].len()
    }

    pub fn flat(&self) -> Vec<&Monomial> {
        self.blocks.iter().flatten().collect()
    }

    pub fn element(&self, i: usize) -> &Monomial {
        let b = self.offsets.partition_point(|&o| o <= i) - 1;
        &self.blocks[b][i - self.offsets[b]]
    }

    pub fn degree(&self, i: usize) -> &GroupElement {
        &self.flat_degrees[i]
    }

    pub fn variable_position(&self, v: usize) -> usize {
        self.var_position[v]
    }

    /// True when some block has more than one monomial.
    pub fn has_multi_monomial_blocks(&self) -> bool {
        self.blocks.iter().any(|b| b.len() > 1)
    }
}

/// An `n×n` matrix whose entry `(i, j)` is either `0` or the variable
/// `Y((i-1)n + j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicMatrix {
    n: usize,
    /// Sorted nonzero columns of each row.
    rows: Vec<Vec<usize>>,
}

impl SymbolicMatrix {
    pub fn generic(n: usize) -> Self {
        SymbolicMatrix {
            n,
            rows: vec![(0..n).collect(); n],
        }
    }

    pub fn from_rows(n: usize, rows: Vec<Vec<usize>>) -> Result<Self> {
        if rows.len() != n || rows.iter().flatten().any(|&j| j >= n) {
            return Err(Error::Structure("pattern does not fit an n x n matrix".into()));
        }
        let rows = rows
            .into_iter()
            .map(|mut r| {
                r.sort_unstable();
                r.dedup();
                r
            })
            .collect();
        Ok(SymbolicMatrix { n, rows })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[usize] {
        &self.rows[i]
    }

    pub fn is_nonzero(&self, i: usize, j: usize) -> bool {
        self.rows[i].binary_search(&j).is_ok()
    }

    /// 0-based index of the variable in slot `(i, j)`.
    pub fn variable(&self, i: usize, j: usize) -> usize {
        i * self.n + j
    }

    /// 0-based variable indices of the nonzero slots, increasing.
    pub fn nonzero_slots(&self) -> Vec<usize> {
        (0..self.n)
            .flat_map(|i| self.rows[i].iter().map(move |&j| i * self.n + j))
            .collect()
    }

    pub fn zero_slots(&self) -> Vec<usize> {
        (0..self.n)
            .flat_map(|i| (0..self.n).filter(move |&j| !self.is_nonzero(i, j)).map(move |j| i * self.n + j))
            .collect()
    }

    pub fn names(&self) -> MatrixVars {
        MatrixVars { n: self.n }
    }

    /// The image of the flat basis element `i`: `Σ_j Y_ij B_j` as a map from
    /// `T`-monomials to `Y`-coefficients.
    pub(crate) fn row_image(&self, basis: &ActionBasis, i: usize) -> TImage {
        let mut out = TImage::new();
        for &j in &self.rows[i] {
            let y = Polynomial::var(self.variable(i, j));
            add_into(&mut out, basis.element(j).clone(), y);
        }
        out
    }
}

impl fmt::Display for SymbolicMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| {
                        if self.is_nonzero(i, j) {
                            format!("Y({})", self.variable(i, j) + 1)
                        } else {
                            "0".to_string()
                        }
                    })
                    .collect()
            })
            .collect();
        let widths: Vec<usize> = (0..self.n)
            .map(|j| cells.iter().map(|r| r[j].len()).max().unwrap_or(1))
            .collect();
        for row in &cells {
            let line: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c:>w$}"))
                .collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// A polynomial in `T` with coefficients in `Q[Y, Z]`.
pub(crate) type TImage = BTreeMap<Monomial, Polynomial>;

fn add_into(acc: &mut TImage, m: Monomial, c: Polynomial) {
    let entry = acc.entry(m.clone()).or_insert_with(Polynomial::zero);
    *entry = &*entry + &c;
    if entry.is_zero() {
        acc.remove(&m);
    }
}

fn mul_images(a: &TImage, b: &TImage) -> TImage {
    let mut out = TImage::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            add_into(&mut out, ma.mul(mb), ca * cb);
        }
    }
    out
}

/// Applies `T_v ↦ Σ_j Y_{p(v), j} B_j` to a polynomial in `T`.
pub(crate) fn image_of_polynomial(
    f: &Polynomial,
    basis: &ActionBasis,
    matrix: &SymbolicMatrix,
) -> TImage {
    let mut cache: BTreeMap<usize, TImage> = BTreeMap::new();
    let mut out = TImage::new();
    for (m, c) in f.terms() {
        let mut term = TImage::from([(Monomial::one(), Polynomial::constant(c.clone()))]);
        for &(v, e) in m.pairs() {
            let row = cache
                .entry(v as usize)
                .or_insert_with(|| matrix.row_image(basis, basis.variable_position(v as usize)));
            for _ in 0..e {
                term = mul_images(&term, row);
            }
        }
        for (t, y) in term {
            add_into(&mut out, t, y);
        }
    }
    out
}

/// The zero pattern of `A_B`: entry `(i, j)` survives iff
/// `deg(B_j) = B·deg(B_i)`.
pub fn structured_matrix(basis: &ActionBasis, b: &GroupAutomorphism) -> Result<SymbolicMatrix> {
    let ws = basis.weight_set();
    let perm = ws.permutation(b).ok_or_else(|| {
        Error::InvalidAutomorphism("it does not permute the generator weights".into())
    })?;
    let sizes = basis.block_sizes();
    if let Some(i) = (0..perm.len()).find(|&i| sizes[i] != sizes[perm[i]]) {
        return Err(Error::InvalidAutomorphism(format!(
            "not admissible: dim S_{} = {} but dim S_{} = {}",
            ws.weight(i),
            sizes[i],
            ws.weight(perm[i]),
            sizes[perm[i]]
        )));
    }
    let mut rows = Vec::with_capacity(basis.n());
    for (src, &dst) in perm.iter().enumerate() {
        for _ in basis.block_range(src) {
            rows.push(basis.block_range(dst).collect());
        }
    }
    SymbolicMatrix::from_rows(basis.n(), rows)
}

/// `det(A)`, expanded over the nonzero pattern.
pub fn symbolic_determinant(a: &SymbolicMatrix, max_terms: u64) -> Result<Polynomial> {
    let n = a.n();
    let mut det = Polynomial::zero();
    let mut used = vec![false; n];
    let mut chosen = Vec::with_capacity(n);
    let mut count = 0u64;
    expand(a, 0, &mut used, &mut chosen, &mut det, &mut count, max_terms)?;
    Ok(det)
}

fn expand(
    a: &SymbolicMatrix,
    row: usize,
    used: &mut [bool],
    chosen: &mut Vec<usize>,
    det: &mut Polynomial,
    count: &mut u64,
    max_terms: u64,
) -> Result<()> {
    let n = a.n();
    if row == n {
        *count += 1;
        if *count > max_terms {
            return Err(Error::ResourceLimit(format!(
                "symbolic determinant has more than {max_terms} terms"
            )));
        }
        let inversions = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| chosen[i] > chosen[j])
            .count();
        let sign = if inversions % 2 == 0 { rat(1) } else { rat(-1) };
        let m = Monomial::from_pairs(
            chosen
                .iter()
                .enumerate()
                .map(|(i, &j)| (a.variable(i, j) as u32, 1))
                .collect(),
        );
        det.add_term(m, sign);
        return Ok(());
    }
    for &j in a.row(row) {
        if !used[j] {
            used[j] = true;
            chosen.push(j);
            expand(a, row + 1, used, chosen, det, count, max_terms)?;
            chosen.pop();
            used[j] = false;
        }
    }
    Ok(())
}

/// One generator `Y_ij` per zero slot, followed by `det(A)·Z - 1`.
pub fn zero_pattern_ideal(a: &SymbolicMatrix, max_terms: u64) -> Result<Vec<Polynomial>> {
    let mut gens: Vec<Polynomial> = a.zero_slots().into_iter().map(Polynomial::var).collect();
    gens.push(invertibility_generator(a, max_terms)?);
    Ok(gens)
}

fn invertibility_generator(a: &SymbolicMatrix, max_terms: u64) -> Result<Polynomial> {
    let det = symbolic_determinant(a, max_terms)?;
    if det.is_zero() {
        return Err(Error::StructurallySingular(
            "the zero pattern has no nonzero generalized diagonal".into(),
        ));
    }
    let z = a.names().z();
    Ok(&det.mul_monomial(&Monomial::var(z)) - &Polynomial::one())
}

/// Coefficient equations of `φ_A(m) = Π φ_A(T_v)^{e_v}` for every basis
/// monomial `m` of total degree at least two.
pub fn multiplicativity_ideal(basis: &ActionBasis, a: &SymbolicMatrix) -> Vec<Polynomial> {
    let mut out: Vec<Polynomial> = Vec::new();
    for p in 0..basis.n() {
        let m = basis.element(p);
        if m.degree() < 2 {
            continue;
        }
        let product = image_of_polynomial(&Polynomial::term(m.clone(), rat(1)), basis, a);
        let mut diff = product;
        for (t, y) in a.row_image(basis, p) {
            add_into(&mut diff, t, -&y);
        }
        let mut eqs: Vec<(Monomial, Polynomial)> = diff.into_iter().collect();
        eqs.sort_by(|x, y| crate::poly::cmp_deglex(&y.0, &x.0));
        for (_, eq) in eqs {
            if !out.contains(&eq) {
                out.push(eq);
            }
        }
    }
    out
}

/// `(A_B, B, J_B)` for one admissible weight automorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutTriple {
    pub automorphism: GroupAutomorphism,
    /// `permutation[i] = j` with `B·w_i = w_j`.
    pub permutation: Vec<usize>,
    pub matrix: SymbolicMatrix,
    pub vanishing: Vec<usize>,
    pub invertibility: Polynomial,
    pub multiplicative: Vec<Polynomial>,
}

impl AutTriple {
    pub fn build(basis: &ActionBasis, adm: &Admissible, limits: &Limits) -> Result<Self> {
        let matrix = structured_matrix(basis, &adm.automorphism)?;
        let invertibility = invertibility_generator(&matrix, limits.max_det_terms)?;
        Ok(AutTriple {
            automorphism: adm.automorphism.clone(),
            permutation: adm.permutation.clone(),
            vanishing: matrix.zero_slots(),
            multiplicative: multiplicativity_ideal(basis, &matrix),
            invertibility,
            matrix,
        })
    }

    /// The generators of `J_B` in output order.
    pub fn ideal(&self) -> Vec<Polynomial> {
        let mut gens: Vec<Polynomial> = self.vanishing.iter().map(|&v| Polynomial::var(v)).collect();
        gens.push(self.invertibility.clone());
        gens.extend(self.multiplicative.iter().cloned());
        gens
    }
}

/// An ideal kept as the product of its factors `J_{B_1} ⋯ J_{B_t}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredIdeal {
    pub factors: Vec<Vec<Polynomial>>,
}

impl FactoredIdeal {
    /// Number of generators of the expanded product.
    pub fn product_size(&self) -> BigUint {
        if self.factors.is_empty() {
            return BigUint::zero();
        }
        self.factors.iter().map(|f| BigUint::from(f.len())).product()
    }

    /// `V(J_1 ⋯ J_t) = V(J_1) ∪ ... ∪ V(J_t)`: the point is a zero of the
    /// product iff it is a zero of one factor.
    pub fn vanishes_at(&self, value: &(dyn Fn(usize) -> Rational + Sync)) -> bool {
        self.factors
            .iter()
            .any(|f| f.iter().all(|g| g.eval(value).is_zero()))
    }

    /// Generators `g_1 ⋯ g_t`, one from each factor.
    pub fn expand(&self, max_generators: u64) -> Result<Vec<Polynomial>> {
        if self.product_size() > BigUint::from(max_generators) {
            return Err(Error::ResourceLimit(format!(
                "the product ideal has {} generators (limit {max_generators})",
                self.product_size()
            )));
        }
        let mut acc: Vec<Polynomial> = match self.factors.first() {
            None => return Ok(Vec::new()),
            Some(f) => f.clone(),
        };
        for f in &self.factors[1..] {
            acc = acc
                .iter()
                .flat_map(|a| f.iter().map(move |g| a * g))
                .collect();
        }
        Ok(acc)
    }
}

/// The output of the `Aut_K(S)` algorithm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutPresentation {
    pub basis: ActionBasis,
    pub triples: Vec<AutTriple>,
    /// Degrees of `Y(1), ..., Y(n^2), Z`.
    pub variable_degrees: Vec<GroupElement>,
}

impl AutPresentation {
    pub fn n(&self) -> usize {
        self.basis.n()
    }

    pub fn names(&self) -> MatrixVars {
        MatrixVars { n: self.n() }
    }

    pub fn combined_ideal(&self) -> FactoredIdeal {
        FactoredIdeal {
            factors: self.triples.iter().map(AutTriple::ideal).collect(),
        }
    }
}

/// Degrees in `S'`: `Y_{(i-1)n+j}` gets the degree of the `i`-th basis
/// element, `Z` the negative of `Σ_i deg(B_i)`, the degree of every
/// determinant term.
pub fn variable_degrees(ring: &GradedPolyRing, basis: &ActionBasis) -> Vec<GroupElement> {
    let group = ring.group();
    let n = basis.n();
    let mut out = Vec::with_capacity(n * n + 1);
    let mut total = group.zero();
    for i in 0..n {
        total = group.add_unchecked(&total, basis.degree(i));
        out.extend(std::iter::repeat_n(basis.degree(i).clone(), n));
    }
    out.push(group.neg(&total));
    out
}

/// Computes `Γ_0`, one triple `(A_B, B, J_B)` per element, and the
/// factored ideal `J`.
pub fn aut_ks(ring: &GradedPolyRing) -> Result<AutPresentation> {
    aut_ks_with(ring, &Limits::default())
}

pub fn aut_ks_with(ring: &GradedPolyRing, limits: &Limits) -> Result<AutPresentation> {
    if !ring.is_pointed() {
        return Err(Error::NotPointed);
    }
    if !ring.degrees().check_effective() {
        return Err(Error::Validation(
            "the degrees do not generate the grading group".into(),
        ));
    }
    let basis = ActionBasis::with_limits(ring, limits)?;
    let auts = symmetry::aut_gen_weights_with(ring.degrees(), limits)?;
    let admissible = symmetry::admissible_with_dims(&auts, basis.weight_set(), &basis.block_sizes());
    let triples = admissible
        .par_iter()
        .map(|adm| AutTriple::build(&basis, adm, limits))
        .collect::<Result<Vec<_>>>()?;
    Ok(AutPresentation {
        variable_degrees: variable_degrees(ring, &basis),
        basis,
        triples,
    })
}

/// Evaluates `J_B` at the diagonal point attached to `values` (one value per
/// flat basis element) with `Z = 1/Π values`.
pub fn diagonal_point(n: usize, values: &[Rational]) -> impl Fn(usize) -> Rational + Sync + '_ {
    let det: Rational = values.iter().fold(Rational::one(), |acc, v| acc * v);
    let z = Rational::one() / det;
    move |v: usize| {
        if v == n * n {
            z.clone()
        } else if v / n == v % n {
            values[v / n].clone()
        } else {
            Rational::zero()
        }
    }
}
