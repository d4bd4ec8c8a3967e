//! The machine readable result bundle and its text rendering.
//!
//! Polynomials in `S'` are stored as strings in the compact notation
//! `-Y(1)Y(13)Z-1`; matrices of weight automorphisms in the
//! `(k+l)×(k+l)` display convention with the torsion rows reduced.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::autks::AutPresentation;
use crate::cone::RationalCone;
use crate::error::{Error, Result};
use crate::git::XhatResult;
use crate::grading::{GroupAutomorphism, GroupElement};
use crate::input::{Mode, ProblemInput};
use crate::poly::{IndexedVars, Style};
use crate::stabilizer::StabilizerData;
use crate::validate::ValidationReport;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleReport {
    /// The weight automorphism `B`.
    pub automorphism: Vec<Vec<i64>>,
    /// 1-based `j` with `B·w_i = w_j`, for each weight `w_i`.
    pub permutation: Vec<usize>,
    /// `A_B` with entries `k` for `Y(k)` and `0` for zero.
    pub matrix: Vec<Vec<usize>>,
    /// Generators of `J_B`.
    pub ideal: Vec<String>,
    /// Generators of `J'_B`, when the stabilizer was computed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stabilizer: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationReport {
    pub n: usize,
    /// The action basis `B` in flat order.
    pub basis: Vec<String>,
    pub multi_monomial_blocks: bool,
    /// Degrees of `Y(1), ..., Y(n^2), Z` as columns.
    pub variable_degrees: Vec<Vec<i64>>,
    pub triples: Vec<TripleReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub degree: Vec<i64>,
    pub monomials: Vec<String>,
    pub dim: usize,
    pub l: usize,
    pub m: usize,
    pub basis: Vec<Vec<String>>,
    pub forms: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizerReport {
    pub generator_degrees: Vec<Vec<i64>>,
    pub components: Vec<ComponentReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeReport {
    pub rays: Vec<Vec<String>>,
    pub lineality: Vec<Vec<String>>,
}

impl From<&RationalCone> for ConeReport {
    fn from(c: &RationalCone) -> Self {
        let show = |v: &[Vec<num_bigint::BigInt>]| {
            v.iter()
                .map(|r| r.iter().map(ToString::to_string).collect())
                .collect()
        };
        ConeReport {
            rays: show(c.rays()),
            lineality: show(c.lineality()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterReport {
    pub w: Vec<i64>,
    pub mode: Mode,
    pub git_cone: ConeReport,
    /// 1-based positions of the retained triples.
    pub retained: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultBundle {
    pub schema_version: u32,
    pub input: ProblemInput,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub validation: Option<ValidationReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight_automorphisms: Option<Vec<Vec<Vec<i64>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub presentation: Option<PresentationReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stabilizer: Option<StabilizerReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub filtered: Option<FilterReport>,
    /// Wall-clock seconds per stage; only filled on request so that reports
    /// stay byte-identical across runs by default.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing: Option<BTreeMap<String, f64>>,
}

fn column(x: &GroupElement) -> Vec<i64> {
    x.to_column()
}

fn rationals(v: &[crate::linalg::Rational]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

impl ResultBundle {
    pub fn new(input: ProblemInput) -> Self {
        ResultBundle {
            schema_version: SCHEMA_VERSION,
            input,
            validation: None,
            weight_automorphisms: None,
            presentation: None,
            stabilizer: None,
            filtered: None,
            timing: None,
        }
    }

    pub fn set_weight_automorphisms(&mut self, auts: &[GroupAutomorphism]) {
        self.weight_automorphisms = Some(auts.iter().map(GroupAutomorphism::to_matrix).collect());
    }

    pub fn set_presentation(&mut self, pres: &AutPresentation) {
        let names = pres.names();
        let tnames = IndexedVars::new("T", self.input.vars);
        let n = pres.n();
        let triples = pres
            .triples
            .iter()
            .map(|t| TripleReport {
                automorphism: t.automorphism.to_matrix(),
                permutation: t.permutation.iter().map(|j| j + 1).collect(),
                matrix: (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| {
                                if t.matrix.is_nonzero(i, j) {
                                    t.matrix.variable(i, j) + 1
                                } else {
                                    0
                                }
                            })
                            .collect()
                    })
                    .collect(),
                ideal: t
                    .ideal()
                    .iter()
                    .map(|g| g.display(&names, Style::Compact).to_string())
                    .collect(),
                stabilizer: None,
            })
            .collect();
        self.set_weight_automorphisms(
            &pres
                .triples
                .iter()
                .map(|t| t.automorphism.clone())
                .collect::<Vec<_>>(),
        );
        self.presentation = Some(PresentationReport {
            n,
            basis: pres
                .basis
                .flat()
                .iter()
                .map(|m| {
                    crate::poly::Polynomial::term((*m).clone(), crate::linalg::rat(1))
                        .display(&tnames, Style::Explicit)
                        .to_string()
                })
                .collect(),
            multi_monomial_blocks: pres.basis.has_multi_monomial_blocks(),
            variable_degrees: pres.variable_degrees.iter().map(column).collect(),
            triples,
        });
    }

    pub fn set_stabilizer(&mut self, stab: &StabilizerData) {
        self.set_presentation(&stab.presentation);
        let names = stab.presentation.names();
        let tnames = IndexedVars::new("T", self.input.vars);
        if let Some(p) = self.presentation.as_mut() {
            for (report, t) in p.triples.iter_mut().zip(&stab.triples) {
                report.stabilizer = Some(
                    t.stabilizer
                        .iter()
                        .map(|g| g.display(&names, Style::Compact).to_string())
                        .collect(),
                );
            }
        }
        self.stabilizer = Some(StabilizerReport {
            generator_degrees: stab.generator_degrees.iter().map(column).collect(),
            components: stab
                .components
                .iter()
                .map(|c| ComponentReport {
                    degree: column(&c.degree),
                    monomials: c
                        .monomials
                        .iter()
                        .map(|m| {
                            crate::poly::Polynomial::term(m.clone(), crate::linalg::rat(1))
                                .display(&tnames, Style::Explicit)
                                .to_string()
                        })
                        .collect(),
                    dim: c.dim(),
                    l: c.l(),
                    m: c.m(),
                    basis: c.basis.iter().map(|v| rationals(v)).collect(),
                    forms: c.forms.iter().map(|v| rationals(v)).collect(),
                })
                .collect(),
        });
    }

    pub fn set_filter(&mut self, res: &XhatResult, w: &GroupElement, mode: Mode) {
        self.filtered = Some(FilterReport {
            w: w.to_column(),
            mode,
            git_cone: ConeReport::from(&res.cone),
            retained: res.retained.iter().map(|i| i + 1).collect(),
        });
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("bundle serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("report: {e}")))?;
        let found = value
            .get("schema_version")
            .and_then(serde_json::Value::as_u64)
            .ok_or_else(|| Error::Parse("report: missing schema_version".into()))?;
        if found != u64::from(SCHEMA_VERSION) {
            return Err(Error::SchemaVersion {
                found: u32::try_from(found).unwrap_or(u32::MAX),
                expected: SCHEMA_VERSION,
            });
        }
        serde_json::from_value(value).map_err(|e| Error::Parse(format!("report: {e}")))
    }
}

pub fn write_report(bundle: &ResultBundle, path: &Path) -> Result<()> {
    std::fs::write(path, bundle.to_json())?;
    Ok(())
}

pub fn read_report(path: &Path) -> Result<ResultBundle> {
    ResultBundle::from_json(&std::fs::read_to_string(path)?)
}

fn matrix_lines(m: &[Vec<i64>]) -> String {
    let width = m.iter().flatten().map(|x| x.to_string().len()).max().unwrap_or(1);
    m.iter()
        .map(|r| {
            r.iter()
                .map(|x| format!("{x:>width$}"))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn symbolic_lines(m: &[Vec<usize>]) -> String {
    let cells: Vec<Vec<String>> = m
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| if x == 0 { "0".to_string() } else { format!("Y({x})") })
                .collect()
        })
        .collect();
    let n = cells.len();
    let widths: Vec<usize> = (0..n)
        .map(|j| cells.iter().map(|r| r[j].len()).max().unwrap_or(1))
        .collect();
    cells
        .iter()
        .map(|r| {
            r.iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c:>w$}"))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

/// A plain text report in the order of the computation.
pub fn render_text(bundle: &ResultBundle) -> String {
    let mut out = String::new();
    let g = &bundle.input.grading;
    let _ = writeln!(
        out,
        "grading group: Z^{}{}",
        g.free_rank,
        g.torsion.iter().map(|a| format!(" + Z/{a}")).collect::<String>()
    );
    let _ = writeln!(out, "variables: T(1)..T({})", bundle.input.vars);
    if let Some(v) = &bundle.validation {
        let _ = writeln!(out, "\n== validation");
        let flag = |b: bool| if b { "yes" } else { "no" };
        let _ = writeln!(out, "effective: {}", flag(v.effective));
        let _ = writeln!(out, "pointed: {}", flag(v.pointed));
        let _ = writeln!(out, "homogeneous generators: {}", flag(v.homogeneous));
        let _ = writeln!(out, "I in m^2: {}", flag(v.in_square_of_maximal_ideal));
        let trivial = match v.trivial_at_generator_weights {
            Some(b) => flag(b),
            None => "not checked",
        };
        let _ = writeln!(out, "I_q = 0 for all generator weights: {trivial}");
        match &v.lattice_basis {
            Some(idx) => {
                let idx: Vec<String> = idx.iter().map(|i| format!("q_{i}")).collect();
                let _ = writeln!(out, "lattice basis: {}", idx.join(", "));
            }
            None => {
                let _ = writeln!(out, "lattice basis: none");
            }
        }
        for f in v.failures() {
            let _ = writeln!(out, "FAIL: {f}");
        }
    }
    if let Some(auts) = &bundle.weight_automorphisms {
        let _ = writeln!(out, "\n== Aut(Omega_S): {} elements", auts.len());
        for (i, m) in auts.iter().enumerate() {
            let _ = writeln!(out, "[{}]\n{}", i + 1, matrix_lines(m));
        }
    }
    if let Some(p) = &bundle.presentation {
        let _ = writeln!(out, "\n== Aut_K(S)");
        let _ = writeln!(out, "basis B = ({})", p.basis.join(", "));
        let _ = writeln!(out, "S' = Q[Y(1..{}),Z]", p.n * p.n);
        if p.multi_monomial_blocks {
            let _ = writeln!(
                out,
                "note: some components have several monomials; admissibility used the dimension filter"
            );
        }
        let _ = writeln!(out, "variable weights (columns Y(1)..Y({}), Z):", p.n * p.n);
        let rows = p.variable_degrees.first().map_or(0, Vec::len);
        let transposed: Vec<Vec<i64>> = (0..rows)
            .map(|r| p.variable_degrees.iter().map(|c| c[r]).collect())
            .collect();
        let _ = writeln!(out, "{}", matrix_lines(&transposed));
        for (i, t) in p.triples.iter().enumerate() {
            let _ = writeln!(out, "\n-- triple {}", i + 1);
            let _ = writeln!(out, "A_B:\n{}", symbolic_lines(&t.matrix));
            let _ = writeln!(out, "B:\n{}", matrix_lines(&t.automorphism));
            let _ = writeln!(out, "J_B:\n{}", t.ideal.join(", "));
            if let Some(s) = &t.stabilizer {
                let _ = writeln!(out, "J'_B:\n{}", if s.is_empty() { "0".to_string() } else { s.join(", ") });
            }
        }
    }
    if let Some(s) = &bundle.stabilizer {
        let _ = writeln!(out, "\n== components of I in the generator degrees");
        for c in &s.components {
            let _ = writeln!(
                out,
                "degree {:?}: dim S_u = {}, l = {}, m = {}; monomials {}",
                c.degree,
                c.dim,
                c.l,
                c.m,
                c.monomials.join(", ")
            );
        }
    }
    if let Some(f) = &bundle.filtered {
        let _ = writeln!(out, "\n== GIT-cone filter, w = {:?}", f.w);
        let rays: Vec<String> = f.git_cone.rays.iter().map(|r| format!("({})", r.join(","))).collect();
        let _ = writeln!(out, "lambda(w) rays: {}", rays.join(" "));
        if !f.git_cone.lineality.is_empty() {
            let lin: Vec<String> = f.git_cone.lineality.iter().map(|r| format!("({})", r.join(","))).collect();
            let _ = writeln!(out, "lambda(w) lineality: {}", lin.join(" "));
        }
        let kept: Vec<String> = f.retained.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "retained triples: {}", kept.join(", "));
    }
    if let Some(t) = &bundle.timing {
        let _ = writeln!(out, "\n== timing");
        for (stage, secs) in t {
            let _ = writeln!(out, "{stage}: {secs:.3} s");
        }
    }
    out
}
